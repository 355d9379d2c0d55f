#pragma once

// Algorithms on finite rings of characteristic p^r given by coordinates:
// exhaustive enumeration, unit certification, inverses and the
// connected-component (idempotent) structure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "deltaring/fp_linalg.hpp"
#include "deltaring/group_ring.hpp"
#include "deltaring/ring_concepts.hpp"

namespace deltaring {

inline constexpr std::size_t kMaxEnumerationLog2 = 22;
inline constexpr std::size_t kMaxIdempotentSearchLog2 = 20;

/// floor(log2 of p^e), saturating; used for resource guards.
inline double log2_power(std::uint64_t p, std::size_t e) {
  return static_cast<double>(e) * std::log2(static_cast<double>(p));
}

/// Visits every coordinate vector of (Z/p^r)^n in odometer order.
inline void for_each_coords(std::size_t n, std::uint64_t modulus,
                            const std::function<void(const Vector&)>& visit) {
  Vector v(n, 0);
  while (true) {
    visit(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == modulus) v[i++] = 0;
    if (i == n) break;
  }
}

template <FiniteContext R>
void for_each_element(const R& ctx, const std::function<void(const typename R::Element&)>& visit) {
  for_each_coords(ctx.dimension(), ctx.modulus().value(),
                  [&](const Vector& v) { visit(ctx.from_coords(v)); });
}

/// Matrix of x -> u x over Z/p^r in the coordinate basis.
template <FiniteContext R>
Matrix multiplication_matrix(const R& ctx, const typename R::Element& u) {
  const std::size_t n = ctx.dimension();
  Matrix a(n, n);
  Vector e(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1;
    a.set_column(j, ctx.to_coords(ctx.mul(u, ctx.from_coords(e))));
    e[j] = 0;
  }
  return a;
}

/// Units are detected mod p, where p is nilpotent.
template <FiniteContext R>
bool is_unit(const R& ctx, const typename R::Element& u) {
  R fp = ctx.at_precision(1);
  typename R::Element ubar = ctx.reduce_to(u, fp);
  return rank_mod_p(multiplication_matrix(fp, ubar), fp.modulus()) == fp.dimension();
}

/// Over a finite p-group, A/p[M] -> A/p has nilpotent kernel, so units are
/// exactly the elements with unit augmentation.
template <FiniteContext R>
bool is_unit(const GroupRing<R>& ctx, const typename GroupRing<R>::Element& u) {
  if (ctx.group().is_finite() && ctx.group().is_p_power_torsion(ctx.prime())) {
    return is_unit(ctx.coefficients(), ctx.augmentation(u));
  }
  GroupRing<R> fp = ctx.at_precision(1);
  auto ubar = ctx.reduce_to(u, fp);
  return rank_mod_p(multiplication_matrix(fp, ubar), fp.modulus()) == fp.dimension();
}

/// The inverse, solved mod p and refined by Newton's iteration; nullopt for
/// non-units.
template <FiniteContext R>
std::optional<typename R::Element> inverse(const R& ctx, const typename R::Element& u) {
  R fp = ctx.at_precision(1);
  typename R::Element ubar = ctx.reduce_to(u, fp);
  auto v0 = solve_mod_p(multiplication_matrix(fp, ubar), fp.to_coords(fp.one()), fp.modulus());
  if (!v0) return std::nullopt;
  typename R::Element v = fp.lift_to(fp.from_coords(*v0), ctx);
  const typename R::Element two = ctx.from_int(2);
  for (int correct = 1; correct < ctx.digits(); correct *= 2) {
    v = ctx.mul(v, ctx.sub(two, ctx.mul(u, v)));
  }
  if (!(ctx.mul(u, v) == ctx.one())) return std::nullopt;
  return v;
}

template <FiniteContext R>
typename R::Element require_inverse(const R& ctx, const typename R::Element& u) {
  auto v = inverse(ctx, u);
  if (!v) fail(ErrorKind::NotAUnit, ctx.format(u) + " is not invertible");
  return *v;
}

/// Primitive orthogonal idempotents summing to one; position = component index.
template <FiniteContext R>
struct IdempotentDecomposition {
  R context;
  std::vector<typename R::Element> idempotents;

  std::size_t size() const { return idempotents.size(); }
};

/// Idempotent lifting e <- 3e^2 - 2e^3 from a residue mod p.
template <FiniteContext R>
typename R::Element lift_idempotent(const R& ctx, typename R::Element e) {
  const auto three = ctx.from_int(3), two = ctx.from_int(2);
  for (int round = 0; round < 2 * ctx.digits() + 2; ++round) {
    auto e2 = ctx.mul(e, e);
    auto next = ctx.sub(ctx.mul(three, e2), ctx.mul(two, ctx.mul(e2, e)));
    if (next == e) return e;
    e = std::move(next);
  }
  fail(ErrorKind::PreconditionViolated, "idempotent lifting did not stabilize");
}

template <FiniteContext R>
IdempotentDecomposition<R> idempotent_decomposition(const R& ctx) {
  R fp = ctx.at_precision(1);
  if (log2_power(fp.prime(), fp.dimension()) > static_cast<double>(kMaxIdempotentSearchLog2)) {
    fail(ErrorKind::RingTooLarge, "idempotent search over more than 2^20 residues");
  }
  using E = typename R::Element;
  std::vector<E> all;
  for_each_element(fp, [&](const E& e) {
    if (!fp.is_zero(e) && fp.mul(e, e) == e) all.push_back(e);
  });
  std::vector<E> primitive;
  for (const E& e : all) {
    bool minimal = std::all_of(all.begin(), all.end(), [&](const E& f) {
      E fe = fp.mul(f, e);
      return fp.is_zero(fe) || fe == e;
    });
    if (minimal) primitive.push_back(e);
  }
  std::sort(primitive.begin(), primitive.end(),
            [&](const E& a, const E& b) { return fp.to_coords(a) > fp.to_coords(b); });
  IdempotentDecomposition<R> out{ctx, {}};
  for (const E& e : primitive) out.idempotents.push_back(lift_idempotent(ctx, fp.lift_to(e, ctx)));
  return out;
}

/// A locally constant M-valued function: one group element per component.
struct LocallyConstantFunction {
  GroupPtr group;
  std::vector<GroupElement> values;
};

/// All |M|^c locally constant functions; infinite M needs a box bound.
template <FiniteContext R>
std::vector<LocallyConstantFunction> locally_constant_functions(
    const IdempotentDecomposition<R>& components, const GroupPtr& group,
    std::optional<std::int64_t> box = std::nullopt) {
  if (!group->is_finite() && !box) {
    fail(ErrorKind::GroupNotFinite, "enumerating functions into an infinite group needs a box bound");
  }
  const std::vector<GroupElement> elements = group->enumerate(box.value_or(0));
  const std::size_t c = components.size();
  double log_count = static_cast<double>(c) * std::log2(static_cast<double>(elements.size()));
  if (log_count > static_cast<double>(kMaxEnumerationLog2)) {
    fail(ErrorKind::RingTooLarge, "too many locally constant functions to enumerate");
  }
  std::vector<LocallyConstantFunction> out;
  std::vector<std::size_t> digit(c, 0);
  while (true) {
    LocallyConstantFunction f{group, {}};
    for (std::size_t i = 0; i < c; ++i) f.values.push_back(elements[digit[i]]);
    out.push_back(std::move(f));
    std::size_t i = 0;
    while (i < c && ++digit[i] == elements.size()) digit[i++] = 0;
    if (i == c) break;
  }
  return out;
}

/// The unit sum_i e_i [m_i] of a locally constant function.
template <FiniteContext R>
typename GroupRing<R>::Element materialize(const GroupRing<R>& ctx, const IdempotentDecomposition<R>& components,
                                           const LocallyConstantFunction& f) {
  if (f.values.size() != components.size()) {
    fail(ErrorKind::ValidationError, "function has the wrong number of components");
  }
  typename GroupRing<R>::Element out;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    ctx.add_into(out, ctx.basis(f.values[i], components.idempotents[i]));
  }
  return out;
}

}  // namespace deltaring
