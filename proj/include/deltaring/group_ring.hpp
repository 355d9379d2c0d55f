#pragma once

// Group rings R[M] over a coefficient context R, with the Frobenius lift
// phi(sum a_m [m]) = sum phi_R(a_m) [p m].

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "deltaring/abelian_group.hpp"
#include "deltaring/integer_ring.hpp"
#include "deltaring/ring_concepts.hpp"
#include "deltaring/witt_ring.hpp"

namespace deltaring {

template <DeltaContext R>
class GroupRing {
 public:
  using Coeff = typename R::Element;
  /// Finite support map m -> a_m. Zero coefficients are never stored.
  using Element = std::map<GroupElement, Coeff>;

  GroupRing(R ring, GroupPtr group) : ring_(std::move(ring)), group_(std::move(group)) {}
  GroupRing(R ring, FgAbelianGroup group)
      : ring_(std::move(ring)), group_(std::make_shared<const FgAbelianGroup>(std::move(group))) {}

  const R& coefficients() const { return ring_; }
  const FgAbelianGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::optional<int> precision() const { return ring_.precision(); }

  Element zero() const { return {}; }
  Element one() const { return scalar(ring_.one()); }
  Element from_int(std::int64_t n) const { return scalar(ring_.from_int(n)); }
  Element scalar(const Coeff& c) const { return basis(group_->zero(), c); }
  Element basis(const GroupElement& m) const { return basis(m, ring_.one()); }
  Element basis(const GroupElement& m, const Coeff& c) const {
    Element x;
    if (!group_->contains(m)) fail(ErrorKind::GroupMismatch, "basis element outside the group");
    if (!ring_.is_zero(c)) x.emplace(m, c);
    return x;
  }

  Element add(const Element& x, const Element& y) const {
    Element out = x;
    add_into(out, y);
    return out;
  }
  void add_into(Element& acc, const Element& y) const {
    for (const auto& [m, c] : y) accumulate(acc, m, c);
  }
  Element neg(const Element& x) const {
    Element out;
    for (const auto& [m, c] : x) out.emplace(m, ring_.neg(c));
    return out;
  }
  Element sub(const Element& x, const Element& y) const { return add(x, neg(y)); }

  /// Convolution: sum_{m,n} a_m b_n [m + n].
  Element mul(const Element& x, const Element& y) const {
    Element out;
    for (const auto& [m, a] : x) {
      for (const auto& [n, b] : y) accumulate(out, group_->add(m, n), ring_.mul(a, b));
    }
    return out;
  }
  Element scale(const Coeff& c, const Element& x) const {
    Element out;
    for (const auto& [m, a] : x) {
      Coeff v = ring_.mul(c, a);
      if (!ring_.is_zero(v)) out.emplace(m, std::move(v));
    }
    return out;
  }

  bool is_zero(const Element& x) const { return x.empty(); }
  bool equal(const Element& x, const Element& y) const { return x == y; }

  Element frobenius(const Element& x, std::uint64_t p) const {
    Element out;
    for (const auto& [m, a] : x) {
      accumulate(out, group_->scalar_mul(static_cast<std::int64_t>(p), m), ring_.frobenius(a, p));
    }
    return out;
  }

  Element divide_by_p(const Element& x, std::uint64_t p) const {
    Element out;
    for (const auto& [m, a] : x) {
      Coeff q = ring_.divide_by_p(a, p);
      if (!lower_ring().is_zero(q)) out.emplace(m, std::move(q));
    }
    return out;
  }
  Element times_p_from_lower(const Element& y, std::uint64_t p) const {
    Element out;
    for (const auto& [m, a] : y) {
      Coeff v = ring_.times_p_from_lower(a, p);
      if (!ring_.is_zero(v)) out.emplace(m, std::move(v));
    }
    return out;
  }
  Element reduce_to(const Element& x, const GroupRing& target) const {
    Element out;
    for (const auto& [m, a] : x) {
      Coeff v = ring_.reduce_to(a, target.ring_);
      if (!target.ring_.is_zero(v)) out.emplace(m, std::move(v));
    }
    return out;
  }
  Element lift_to(const Element& x, const GroupRing& target) const {
    Element out;
    for (const auto& [m, a] : x) out.emplace(m, ring_.lift_to(a, target.ring_));
    return out;
  }

  GroupRing lower() const { return GroupRing(ring_.lower(), group_); }

  Coeff augmentation(const Element& x) const {
    Coeff total = ring_.zero();
    for (const auto& [m, a] : x) ring_.add_into(total, a);
    return total;
  }

  /// Coefficient of [m] (zero when absent).
  Coeff coefficient(const Element& x, const GroupElement& m) const {
    auto it = x.find(m);
    return it == x.end() ? ring_.zero() : it->second;
  }

  std::string format(const Element& x) const {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [m, a] : x) {
      std::string c = ring_.format(a);
      const bool is_identity = m == group_->zero();
      std::string term;
      if (is_identity) {
        term = c;
      } else {
        if (c == "-1") {
          c = "-";
        } else if (c == "1") {
          c.clear();
        } else if (c.find_first_of("+x") != std::string::npos && c.front() != '(') {
          c = "(" + c + ")";
        }
        term = c + "[" + group_->format(m) + "]";
      }
      if (out.empty()) {
        out = term;
      } else if (term.front() == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    }
    return out;
  }

  std::string descriptor() const { return ring_.descriptor() + "[" + group_->descriptor() + "]"; }

  bool operator==(const GroupRing& o) const {
    return ring_ == o.ring_ && (group_ == o.group_ || *group_ == *o.group_);
  }

  // ---- finite contexts: coordinates indexed by (group index, ring coordinate) ----

  std::uint64_t prime() const
    requires FiniteContext<R>
  {
    return ring_.prime();
  }
  int digits() const
    requires FiniteContext<R>
  {
    return ring_.digits();
  }
  const Modulus& modulus() const
    requires FiniteContext<R>
  {
    return ring_.modulus();
  }
  std::size_t dimension() const
    requires FiniteContext<R>
  {
    return group_order() * ring_.dimension();
  }
  GroupRing at_precision(int s) const
    requires FiniteContext<R>
  {
    return GroupRing(ring_.at_precision(s), group_);
  }
  Vector to_coords(const Element& x) const
    requires FiniteContext<R>
  {
    const std::size_t d = ring_.dimension();
    Vector v(dimension(), 0);
    for (const auto& [m, a] : x) {
      const std::size_t base = group_->index_of(m) * d;
      Vector c = ring_.to_coords(a);
      for (std::size_t j = 0; j < d; ++j) v[base + j] = c[j];
    }
    return v;
  }
  Element from_coords(const Vector& v) const
    requires FiniteContext<R>
  {
    const std::size_t d = ring_.dimension();
    if (v.size() != dimension()) fail(ErrorKind::ValidationError, "coordinate vector has wrong dimension");
    Element out;
    for (std::size_t i = 0; i < group_order(); ++i) {
      Vector c(v.begin() + static_cast<std::ptrdiff_t>(i * d), v.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
      Coeff a = ring_.from_coords(c);
      if (!ring_.is_zero(a)) out.emplace(group_->element_at(i), std::move(a));
    }
    return out;
  }

 private:
  std::size_t group_order() const {
    auto n = group_->order();
    if (!n) fail(ErrorKind::GroupNotFinite, "coordinates need a finite group");
    return static_cast<std::size_t>(*n);
  }
  R lower_ring() const { return ring_.lower(); }

  void accumulate(Element& acc, const GroupElement& m, const Coeff& c) const {
    if (ring_.is_zero(c)) return;
    auto [it, inserted] = acc.try_emplace(m, c);
    if (!inserted) {
      ring_.add_into(it->second, c);
      if (ring_.is_zero(it->second)) acc.erase(it);
    }
  }

  R ring_;
  GroupPtr group_;
};

using IntegerGroupRing = GroupRing<IntegerRing>;
using WittGroupRing = GroupRing<WittRing>;

/// Image under the map R[M] -> R[M/p^s] induced by a quotient map.
template <DeltaContext R>
std::pair<GroupRing<R>, typename GroupRing<R>::Element> pushforward_along_quotient(
    const GroupRing<R>& ctx, const typename GroupRing<R>::Element& x, const GroupMap& q) {
  if (q.source_rank() != ctx.group().rank()) {
    fail(ErrorKind::GroupMismatch, "quotient map does not start at this group");
  }
  GroupRing<R> target(ctx.coefficients(), q.target_ptr());
  typename GroupRing<R>::Element out;
  for (const auto& [m, a] : x) target.add_into(out, target.basis(q.apply(m), a));
  return {target, out};
}

/// Determinant of multiplication by u on Z[M] in the basis {[m]}; u is a unit
/// exactly when this is +1 or -1.
BigInt regular_rep_det(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& u);

/// Unit certificate for Z[M' + Z^a] with M' finite: the support lies in one
/// coset t + M' and u [-t] has regular determinant +1 or -1.
bool is_integral_unit(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& u);

/// Exact determinant of a square integer matrix (fraction-free elimination).
BigInt integer_determinant(std::vector<std::vector<BigInt>> a);

}  // namespace deltaring
