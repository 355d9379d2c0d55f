#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "deltaring/padic.hpp"

namespace deltaring {

/// The integers with their unique delta structure (Frobenius lift = identity).
/// Exact: dividing by p loses no precision.
class IntegerRing {
 public:
  using Element = BigInt;

  std::optional<int> precision() const { return std::nullopt; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t n) const { return n; }
  Element from_big(const BigInt& n) const { return n; }

  Element add(const Element& x, const Element& y) const { return x + y; }
  Element sub(const Element& x, const Element& y) const { return x - y; }
  Element neg(const Element& x) const { return -x; }
  Element mul(const Element& x, const Element& y) const { return x * y; }
  void add_into(Element& acc, const Element& x) const { acc += x; }
  bool is_zero(const Element& x) const { return x == 0; }
  bool equal(const Element& x, const Element& y) const { return x == y; }

  Element frobenius(const Element& x, std::uint64_t) const { return x; }

  Element divide_by_p(const Element& x, std::uint64_t p) const {
    if (x % p != 0) fail(ErrorKind::NotDivisible, x.str() + " is not divisible by " + std::to_string(p));
    return x / p;
  }
  Element times_p_from_lower(const Element& y, std::uint64_t p) const { return y * p; }
  Element reduce_to(const Element& x, const IntegerRing&) const { return x; }
  Element lift_to(const Element& x, const IntegerRing&) const { return x; }

  IntegerRing lower() const { return *this; }

  std::string format(const Element& x) const { return x.str(); }
  Element parse(const std::string& text) const;
  std::string descriptor() const { return "Z"; }

  bool operator==(const IntegerRing&) const { return true; }
};

}  // namespace deltaring
