#pragma once

// The delta operation delta_p(x) = (phi(x) - x^p) / p and the structures
// built from it. In a context of precision r the result lives at precision
// r - 1: one digit is consumed per application.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deltaring/finite_ring.hpp"
#include "deltaring/group_ring.hpp"
#include "deltaring/ring_concepts.hpp"
#include "deltaring/witt_ring.hpp"

namespace deltaring {

/// A delta (or psi) value together with the context it lives in.
template <DeltaContext R>
struct DeltaValue {
  R context;
  typename R::Element value;

  std::optional<int> precision() const { return context.precision(); }
  bool is_zero() const { return context.is_zero(value); }
  std::string format() const { return context.format(value); }
};

template <DeltaContext R>
DeltaValue<R> delta_p(const R& ctx, const typename R::Element& x, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorKind::ValidationError, std::to_string(p) + " is not prime");
  if (auto r = ctx.precision(); r && *r < 2) {
    fail(ErrorKind::PrecisionExhausted, "delta needs at least two digits of precision");
  }
  auto diff = ctx.sub(ctx.frobenius(x, p), power(ctx, x, p));
  return {ctx.lower(), ctx.divide_by_p(diff, p)};
}

/// psi(x) = x^p + p delta_p(x), at the precision of x.
template <DeltaContext R>
typename R::Element psi(const R& ctx, const typename R::Element& x, std::uint64_t p) {
  DeltaValue<R> d = delta_p(ctx, x, p);
  return ctx.add(power(ctx, x, p), ctx.times_p_from_lower(d.value, p));
}

struct AxiomCounterexample {
  std::string identity;
  std::string x;
  std::string y;
  std::string lhs;
  std::string rhs;
};

struct DeltaAxiomReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::optional<AxiomCounterexample> counterexample;
};

/// Checks delta(0) = delta(1) = 0 and the additive and multiplicative
/// identities on every pair, exactly at the available precision.
template <DeltaContext R>
DeltaAxiomReport verify_delta_axioms(const R& ctx, std::uint64_t p,
                                     const std::vector<std::pair<typename R::Element, typename R::Element>>& sample) {
  using E = typename R::Element;
  const R low = ctx.lower();
  DeltaAxiomReport report;
  auto record = [&](const char* identity, const E& x, const E& y, const E& lhs, const E& rhs) {
    if (report.counterexample) return;
    report.passed = false;
    report.counterexample =
        AxiomCounterexample{identity, ctx.format(x), ctx.format(y), low.format(lhs), low.format(rhs)};
  };
  auto d = [&](const E& x) { return delta_p(ctx, x, p).value; };

  for (const E& unit : {ctx.zero(), ctx.one()}) {
    E v = d(unit);
    if (!low.is_zero(v)) record("delta(0) = delta(1) = 0", unit, unit, v, low.zero());
  }
  const E p_low = low.from_int(static_cast<std::int64_t>(p));
  for (const auto& [x, y] : sample) {
    ++report.pairs_checked;
    const E dx = d(x), dy = d(y);
    const E xp = power(ctx, x, p), yp = power(ctx, y, p);
    const E sum = ctx.add(x, y);

    E lhs = d(sum);
    E cross = ctx.divide_by_p(ctx.sub(ctx.add(xp, yp), power(ctx, sum, p)), p);
    E rhs = low.add(low.add(dx, dy), cross);
    if (!(lhs == rhs)) record("additive", x, y, lhs, rhs);

    lhs = d(ctx.mul(x, y));
    rhs = low.add(low.add(low.mul(ctx.reduce_to(xp, low), dy), low.mul(ctx.reduce_to(yp, low), dx)),
                  low.mul(p_low, low.mul(dx, dy)));
    if (!(lhs == rhs)) record("multiplicative", x, y, lhs, rhs);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rank-one units and delta-Hensel lifting

/// Semilinear correction data for lifting from precision r to r + 1.
template <FiniteContext R>
class FrobeniusSolver {
 public:
  /// ctx is the residue context A/p (precision 1).
  FrobeniusSolver(const R& residue, std::uint64_t p) : residue_(residue), p_(p) {
    const std::size_t n = residue_.dimension();
    phi_ = Matrix(n, n);
    Vector e(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = 1;
      phi_.set_column(j, residue_.to_coords(residue_.frobenius(residue_.from_coords(e), p_)));
      e[j] = 0;
    }
    kernel_ = kernel_mod_p(phi_, residue_.modulus());
  }

  const std::vector<Vector>& kernel() const { return kernel_; }

  /// Every eps over A/p with phi(eps) = rhs.
  std::vector<Vector> solve_all(const Vector& rhs) const {
    auto x0 = solve_mod_p(phi_, rhs, residue_.modulus());
    if (!x0) return {};
    if (log2_power(p_, kernel_.size()) > 20.0) {
      fail(ErrorKind::SearchTooLarge, "too many semilinear lifts to enumerate");
    }
    const Modulus& fp = residue_.modulus();
    std::vector<Vector> out;
    std::vector<std::uint64_t> digit(kernel_.size(), 0);
    while (true) {
      Vector x = *x0;
      for (std::size_t i = 0; i < kernel_.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = fp.add(x[j], fp.mul(digit[i], kernel_[i][j]));
      }
      out.push_back(std::move(x));
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == p_) digit[i++] = 0;
      if (i == digit.size()) break;
    }
    return out;
  }

 private:
  R residue_;
  std::uint64_t p_;
  Matrix phi_;
  std::vector<Vector> kernel_;
};

/// All units u' = u mod p^r at precision r + 1 with delta(u') = 0 mod p^r,
/// sorted by coordinates. Requires delta(u) = 0 mod p^(r-1).
template <FiniteContext R>
std::vector<typename R::Element> delta_hensel_lift(const R& ctx, const typename R::Element& u, std::uint64_t p,
                                                   const FrobeniusSolver<R>* solver = nullptr) {
  using E = typename R::Element;
  if (p != ctx.prime()) fail(ErrorKind::PrimeMismatch, "lifting prime differs from the context prime");
  const int r = ctx.digits();
  const R up = ctx.at_precision(r + 1);
  const E lifted = ctx.lift_to(u, up);
  const DeltaValue<R> d = delta_p(up, lifted, p);
  // d lives mod p^r; it must be p^(r-1) c.
  const std::uint64_t scale = checked_power(p, r - 1);
  Vector c = d.context.to_coords(d.value);
  const R residue = ctx.at_precision(1);
  const Modulus& fp_mod = residue.modulus();
  for (auto& v : c) {
    if (v % scale != 0) {
      fail(ErrorKind::PreconditionViolated, "delta(u) is not zero modulo p^(r-1)");
    }
    v = fp_mod.neg(fp_mod.reduce(static_cast<std::int64_t>(v / scale)));
  }
  std::optional<FrobeniusSolver<R>> own;
  if (!solver) solver = &own.emplace(residue, p);

  const std::uint64_t step = checked_power(p, r);
  const Modulus& mod_up = up.modulus();
  std::vector<E> out;
  const Vector base = up.to_coords(lifted);
  for (const Vector& eps : solver->solve_all(c)) {
    Vector coords = base;
    for (std::size_t j = 0; j < coords.size(); ++j) coords[j] = mod_up.add(coords[j], mod_up.mul(step, eps[j]));
    E candidate = up.from_coords(coords);
    if (!delta_p(up, candidate, p).is_zero()) {
      fail(ErrorKind::PreconditionViolated, "semilinear correction did not annihilate delta");
    }
    out.push_back(std::move(candidate));
  }
  std::sort(out.begin(), out.end(), [&](const E& a, const E& b) { return up.to_coords(a) < up.to_coords(b); });
  return out;
}

/// A chain u_1, ..., u_d of successive lifts (precision r+1, ..., r+d) with
/// delta vanishing at each level, or nullopt if none exists.
template <FiniteContext R>
std::optional<std::vector<typename R::Element>> find_lift_chain(const R& ctx, const typename R::Element& u,
                                                                std::uint64_t p, int depth,
                                                                const FrobeniusSolver<R>* solver = nullptr) {
  if (depth == 0) return std::vector<typename R::Element>{};
  const R up = ctx.at_precision(ctx.digits() + 1);
  for (const auto& next : delta_hensel_lift(ctx, u, p, solver)) {
    if (auto rest = find_lift_chain(up, next, p, depth - 1, solver)) {
      rest->insert(rest->begin(), next);
      return rest;
    }
  }
  return std::nullopt;
}

/// The longest lift chain from u, capped at limit.
template <FiniteContext R>
int max_lift_depth(const R& ctx, const typename R::Element& u, std::uint64_t p, int limit,
                   const FrobeniusSolver<R>* solver = nullptr) {
  if (limit == 0) return 0;
  const R up = ctx.at_precision(ctx.digits() + 1);
  int best = 0;
  for (const auto& next : delta_hensel_lift(ctx, u, p, solver)) {
    best = std::max(best, 1 + max_lift_depth(up, next, p, limit - 1, solver));
    if (best == limit) break;
  }
  return best;
}

enum class RankOneLevel { yes_exact, yes_to_depth, no };

inline const char* to_string(RankOneLevel level) {
  switch (level) {
    case RankOneLevel::yes_exact: return "yes_exact";
    case RankOneLevel::yes_to_depth: return "yes_to_depth";
    case RankOneLevel::no: return "no";
  }
  return "no";
}

struct RankOneVerdict {
  RankOneLevel level = RankOneLevel::no;
  /// Depth certified (yes_to_depth) or the level at which lifting failed (no).
  int depth = 0;
  /// For "no": the nonvanishing delta or a description of the obstruction.
  std::string witness;
};

struct RankOneOptions {
  int depth = 0;
  /// Accept structurally exact witnesses (tautological and Teichmuller units).
  bool structural = true;
};

/// Is the residue u the truncation of a Teichmuller unit in every factor?
inline bool is_teichmuller_unit(const WittRing& ring, const WittRing::Element& u) {
  if (!is_unit(ring, u)) return false;
  for (std::size_t i = 0; i < ring.component_count(); ++i) {
    const WittRing::Element e = ring.component_unit(i);
    const WittRing::Element ui = ring.mul(e, u);
    const std::uint64_t q = checked_power(ring.prime(), ring.component_degree(i));
    // Raise ui + (1 - e) so that the other factors stay at 1.
    const WittRing::Element v = power(ring, ring.add(ui, ring.sub(ring.one(), e)), q);
    if (!(ring.mul(e, v) == ui)) return false;
  }
  return true;
}

inline bool is_structurally_rank_one(const WittRing& ring, const WittRing::Element& u) {
  return is_teichmuller_unit(ring, u);
}

/// u = sum_i e_i c_i [m_i] with each c_i a Teichmuller unit of factor i.
inline bool is_structurally_rank_one(const WittGroupRing& ctx, const WittGroupRing::Element& u) {
  const WittRing& ring = ctx.coefficients();
  for (std::size_t i = 0; i < ring.component_count(); ++i) {
    const WittRing::Element e = ring.component_unit(i);
    std::optional<std::pair<GroupElement, WittRing::Element>> term;
    for (const auto& [m, a] : u) {
      WittRing::Element ai = ring.mul(e, a);
      if (ring.is_zero(ai)) continue;
      if (term) return false;
      term.emplace(m, std::move(ai));
    }
    if (!term) return false;
    WittRing::Element c = ring.add(term->second, ring.sub(ring.one(), e));
    if (!is_teichmuller_unit(ring, c)) return false;
  }
  return true;
}

template <FiniteContext R>
RankOneVerdict is_rank_one_unit(const R& ctx, const typename R::Element& u, std::uint64_t p,
                                const RankOneOptions& options = {}) {
  if (p != ctx.prime()) fail(ErrorKind::PrimeMismatch, "rank-one test prime differs from the context prime");
  if (!is_unit(ctx, u)) fail(ErrorKind::NotAUnit, ctx.format(u) + " is not a unit");
  if (options.structural && is_structurally_rank_one(ctx, u)) return {RankOneLevel::yes_exact, options.depth, ""};
  DeltaValue<R> d = delta_p(ctx, u, p);
  if (!d.is_zero()) return {RankOneLevel::no, 0, "delta = " + d.format()};
  const int reached = max_lift_depth(ctx, u, p, options.depth);
  if (reached < options.depth) {
    return {RankOneLevel::no, reached + 1,
            "no delta-lift to precision " + std::to_string(ctx.digits() + reached + 1)};
  }
  return {RankOneLevel::yes_to_depth, options.depth, ""};
}

/// Exact contexts decide membership outright.
RankOneVerdict is_rank_one_unit(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& u, std::uint64_t p);

// ---------------------------------------------------------------------------
// Artin-Schreier kernels and tangent fixed points

/// ker(phi - 1) on A/p^r: a free Z/p^r-module with one generator per
/// connected component.
struct ArtinSchreierKernel {
  WittRing ring;
  std::vector<WittRing::Element> basis;
  /// log_p of the kernel order.
  int log_size = 0;
  std::size_t component_count = 0;
};

ArtinSchreierKernel artin_schreier_kernel(const WittRing& ring, std::optional<int> precision = std::nullopt);

/// An element of A/p^s (x) M, one coefficient per generator of M; the slot of
/// a generator of order d lives mod gcd(p^s, d) (free generators mod p^s).
struct TangentElement {
  std::vector<int> digits;
  std::vector<Vector> slots;

  bool is_zero() const;
  bool operator==(const TangentElement&) const = default;
};

/// The class of z in J / J^2 = A (x) M. Requires augmentation(z) = 0.
TangentElement tangent_projection(const WittGroupRing& ctx, const WittGroupRing::Element& z);

/// z lies in J^2 exactly when it has augmentation zero and vanishing tangent class.
bool in_augmentation_square(const WittGroupRing& ctx, const WittGroupRing::Element& z);

struct TangentFixedPoints {
  /// The fixed group, in invariant-factor form.
  FgAbelianGroup group;
  /// Generators: per invariant factor p^v, a kernel basis of A/p^v placed in that slot.
  std::vector<TangentElement> generators;
};

/// Fixed points of phi_A (x) id_M on A (x) M for a finite abelian p-group M,
/// over the p-complete ring A (independent of the truncation of ring).
TangentFixedPoints tangent_fixed_points(const WittRing& ring, const FgAbelianGroup& group);

// ---------------------------------------------------------------------------
// Square-zero identities

struct SquareZeroReport {
  bool additive = true;
  bool semilinear = true;
  std::string discrepancy;

  bool passed() const { return additive && semilinear; }
};

/// delta(x + a) = delta(x) + delta(a) - x^(p-1) a and delta(x a) = phi(x) delta(a)
/// for a with a^2 = 0.
template <DeltaContext R>
SquareZeroReport delta_on_square_zero(const R& ctx, const typename R::Element& x, const typename R::Element& a,
                                      std::uint64_t p) {
  using E = typename R::Element;
  if (!ctx.is_zero(ctx.mul(a, a))) fail(ErrorKind::NotSquareZero, ctx.format(a) + " does not square to zero");
  const R low = ctx.lower();
  SquareZeroReport report;
  const E lhs_add = delta_p(ctx, ctx.add(x, a), p).value;
  const E rhs_add = low.sub(low.add(delta_p(ctx, x, p).value, delta_p(ctx, a, p).value),
                            ctx.reduce_to(ctx.mul(power(ctx, x, p - 1), a), low));
  if (!(lhs_add == rhs_add)) {
    report.additive = false;
    report.discrepancy = "additive: " + low.format(lhs_add) + " != " + low.format(rhs_add);
  }
  const E lhs_mul = delta_p(ctx, ctx.mul(x, a), p).value;
  const E rhs_mul = low.mul(ctx.reduce_to(ctx.frobenius(x, p), low), delta_p(ctx, a, p).value);
  if (!(lhs_mul == rhs_mul)) {
    report.semilinear = false;
    if (report.discrepancy.empty()) {
      report.discrepancy = "semilinear: " + low.format(lhs_mul) + " != " + low.format(rhs_mul);
    }
  }
  return report;
}

/// The same identities for a in the augmentation ideal J, compared modulo J^2.
SquareZeroReport delta_on_augmentation_square(const WittGroupRing& ctx, const WittGroupRing::Element& x,
                                              const WittGroupRing::Element& a, std::uint64_t p);

}  // namespace deltaring
