#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include "deltaring/fp_linalg.hpp"
#include "deltaring/padic.hpp"

namespace deltaring {

/// A commutative ring context carrying a Frobenius lift and exact division
/// by p into the next-lower precision (itself, for exact rings).
template <class R>
concept DeltaContext = requires(const R& ring, const typename R::Element& x, std::uint64_t p) {
  { ring.zero() } -> std::same_as<typename R::Element>;
  { ring.one() } -> std::same_as<typename R::Element>;
  { ring.from_int(std::int64_t{}) } -> std::same_as<typename R::Element>;
  { ring.add(x, x) } -> std::same_as<typename R::Element>;
  { ring.sub(x, x) } -> std::same_as<typename R::Element>;
  { ring.mul(x, x) } -> std::same_as<typename R::Element>;
  { ring.neg(x) } -> std::same_as<typename R::Element>;
  { ring.is_zero(x) } -> std::convertible_to<bool>;
  { ring.frobenius(x, p) } -> std::same_as<typename R::Element>;
  { ring.divide_by_p(x, p) } -> std::same_as<typename R::Element>;
  { ring.times_p_from_lower(x, p) } -> std::same_as<typename R::Element>;
  { ring.reduce_to(x, ring) } -> std::same_as<typename R::Element>;
  { ring.lower() } -> std::same_as<R>;
  { ring.precision() } -> std::same_as<std::optional<int>>;
  { ring.format(x) } -> std::convertible_to<std::string>;
};

/// A finite context of characteristic p^r, free over Z/p^r with explicit
/// coordinates.
template <class R>
concept FiniteContext = DeltaContext<R> && requires(const R& ring, const typename R::Element& x,
                                                    const Vector& v) {
  { ring.prime() } -> std::convertible_to<std::uint64_t>;
  { ring.digits() } -> std::convertible_to<int>;
  { ring.modulus() } -> std::convertible_to<const Modulus&>;
  { ring.dimension() } -> std::convertible_to<std::size_t>;
  { ring.to_coords(x) } -> std::same_as<Vector>;
  { ring.from_coords(v) } -> std::same_as<typename R::Element>;
  { ring.at_precision(int{}) } -> std::same_as<R>;
  { ring.lift_to(x, ring) } -> std::same_as<typename R::Element>;
};

template <DeltaContext R>
typename R::Element power(const R& ring, typename R::Element base, std::uint64_t e) {
  typename R::Element result = ring.one();
  while (e) {
    if (e & 1) result = ring.mul(result, base);
    e >>= 1;
    if (e) base = ring.mul(base, base);
  }
  return result;
}

}  // namespace deltaring
