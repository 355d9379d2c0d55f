#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "deltaring/error.hpp"

namespace deltaring {

/// Coordinates of an element of Z/d_1 + ... + Z/d_t + Z^a: torsion
/// coordinates first (canonical in [0, d_i)), then free coordinates.
struct GroupElement {
  boost::container::small_vector<std::int64_t, 4> coords;

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.coords == b.coords; }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
  }
};

/// A finitely generated abelian group in invariant-factor form
/// d_1 | d_2 | ... | d_t (each >= 2) plus a free part of rank a.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::vector<std::int64_t> invariant_factors, int free_rank);

  static FgAbelianGroup trivial() { return {}; }
  static FgAbelianGroup cyclic(std::int64_t n);

  const std::vector<std::int64_t>& invariant_factors() const { return torsion_; }
  int free_rank() const { return free_rank_; }
  std::size_t rank() const { return torsion_.size() + static_cast<std::size_t>(free_rank_); }

  bool is_finite() const { return free_rank_ == 0; }
  /// |M| for finite groups.
  std::optional<std::uint64_t> order() const;
  /// Largest invariant factor (1 for the trivial group); nullopt if infinite.
  std::optional<std::int64_t> exponent() const;
  bool is_p_power_torsion(std::uint64_t p) const;

  GroupElement zero() const;
  GroupElement make(std::vector<std::int64_t> coords) const;
  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement sub(const GroupElement& x, const GroupElement& y) const;
  GroupElement neg(const GroupElement& x) const;
  GroupElement scalar_mul(std::int64_t n, const GroupElement& x) const;
  std::int64_t element_order(const GroupElement& x) const;  // 0 for infinite order
  bool contains(const GroupElement& x) const;

  /// Position of an element of a finite group in mixed radix, and back.
  std::uint64_t index_of(const GroupElement& x) const;
  GroupElement element_at(std::uint64_t index) const;

  /// All elements with free coordinates in [-box, box]: prod d_i (2 box + 1)^a
  /// of them, in index order.
  std::vector<GroupElement> enumerate(std::int64_t box = 0) const;
  void for_each(std::int64_t box, const std::function<void(const GroupElement&)>& visit) const;

  /// Canonical descriptor, e.g. "C2+C4+Z^1"; the trivial group is "Z^0".
  std::string descriptor() const;
  /// Element text: generators g (or g1, g2, ...) for torsion, t (or t1, ...) for free.
  std::string format(const GroupElement& x) const;

  bool operator==(const FgAbelianGroup&) const = default;

 private:
  void check(const GroupElement& x) const;
  GroupElement canonical(GroupElement x) const;

  std::vector<std::int64_t> torsion_;
  int free_rank_ = 0;
};

using GroupPtr = std::shared_ptr<const FgAbelianGroup>;

/// A homomorphism Z^n -> M given on coordinates, used for presentations and
/// quotients.
class GroupMap {
 public:
  GroupMap(std::size_t source_rank, GroupPtr target, std::vector<std::vector<std::int64_t>> columns);

  std::size_t source_rank() const { return source_rank_; }
  const FgAbelianGroup& target() const { return *target_; }
  GroupPtr target_ptr() const { return target_; }
  GroupElement apply(const std::vector<std::int64_t>& source_coords) const;
  GroupElement apply(const GroupElement& x) const;

 private:
  std::size_t source_rank_;
  GroupPtr target_;
  std::vector<std::vector<std::int64_t>> columns_;  // columns_[i] = image of e_i
};

/// Canonical form of Z/n_1 + ... + Z/n_m (n_i = 0 meaning Z) via the Smith
/// normal form, with the coordinate map from the given presentation.
GroupMap canonicalize_cyclic_sum(const std::vector<std::int64_t>& orders);

/// M -> M / p^s M in invariant-factor form.
GroupMap quotient_map(const FgAbelianGroup& m, std::uint64_t p, int s);

}  // namespace deltaring
