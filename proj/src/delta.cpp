#include "deltaring/delta.hpp"

namespace deltaring {

namespace {

Vector frobenius_minus_identity(const WittRing& ring, const Vector& coords) {
  const WittRing::Element x = ring.from_coords(coords);
  return ring.to_coords(ring.sub(ring.frobenius(x), x));
}

Matrix frobenius_minus_identity_matrix(const WittRing& ring) {
  const std::size_t n = ring.dimension();
  Matrix a(n, n);
  Vector e(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1;
    a.set_column(j, frobenius_minus_identity(ring, e));
    e[j] = 0;
  }
  return a;
}

int p_valuation_capped(std::int64_t d, std::uint64_t p, int cap) {
  int v = 0;
  while (v < cap && d % static_cast<std::int64_t>(p) == 0) {
    d /= static_cast<std::int64_t>(p);
    ++v;
  }
  return v;
}

}  // namespace

RankOneVerdict is_rank_one_unit(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& u, std::uint64_t p) {
  if (!is_integral_unit(ctx, u)) fail(ErrorKind::NotAUnit, ctx.format(u) + " is not a unit");
  DeltaValue<IntegerGroupRing> d = delta_p(ctx, u, p);
  if (d.is_zero()) return {RankOneLevel::yes_exact, 0, ""};
  return {RankOneLevel::no, 0, "delta_" + std::to_string(p) + " = " + d.format()};
}

ArtinSchreierKernel artin_schreier_kernel(const WittRing& base, std::optional<int> precision) {
  const WittRing ring = precision ? base.at_precision(*precision) : base;
  const std::uint64_t p = ring.prime();
  const int r = ring.digits();
  const WittRing residue = ring.at_precision(1);
  const Matrix residue_map = frobenius_minus_identity_matrix(residue);
  const std::vector<Vector> residue_basis = kernel_mod_p(residue_map, residue.modulus());

  ArtinSchreierKernel out{ring, {}, 0, ring.component_count()};
  if (residue_basis.size() != ring.component_count()) {
    fail(ErrorKind::PreconditionViolated, "residue fixed space does not match the component count");
  }
  // Lift each residue solution one digit at a time.
  for (const Vector& start : residue_basis) {
    Vector x = start;
    for (int s = 1; s < r; ++s) {
      const WittRing up = ring.at_precision(s + 1);
      const Modulus& m = up.modulus();
      const std::uint64_t scale = checked_power(p, s);
      Vector w = frobenius_minus_identity(up, x);
      for (auto& v : w) {
        if (v % scale != 0) fail(ErrorKind::PreconditionViolated, "fixed point lost while lifting");
        v = residue.modulus().neg(v / scale % p);
      }
      auto eta = solve_mod_p(residue_map, w, residue.modulus());
      if (!eta) fail(ErrorKind::PreconditionViolated, "fixed point does not lift");
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = m.add(x[j], m.mul(scale, (*eta)[j]));
    }
    const WittRing::Element e = ring.from_coords(x);
    if (!(ring.frobenius(e) == e)) fail(ErrorKind::PreconditionViolated, "lifted element is not fixed");
    out.basis.push_back(e);
  }
  out.log_size = kernel_log_size(frobenius_minus_identity_matrix(ring), ring.modulus());
  if (out.log_size != r * static_cast<int>(out.component_count)) {
    fail(ErrorKind::PreconditionViolated, "kernel is not free of rank equal to the component count");
  }
  return out;
}

bool TangentElement::is_zero() const {
  for (const auto& slot : slots) {
    for (auto v : slot) {
      if (v != 0) return false;
    }
  }
  return true;
}

TangentElement tangent_projection(const WittGroupRing& ctx, const WittGroupRing::Element& z) {
  const WittRing& ring = ctx.coefficients();
  if (!ring.is_zero(ctx.augmentation(z))) {
    fail(ErrorKind::PreconditionViolated, "tangent class needs an element of the augmentation ideal");
  }
  const FgAbelianGroup& group = ctx.group();
  const std::uint64_t p = ring.prime();
  const int r = ring.digits();
  TangentElement out;
  for (auto d : group.invariant_factors()) out.digits.push_back(p_valuation_capped(d, p, r));
  for (int i = 0; i < group.free_rank(); ++i) out.digits.push_back(r);
  for (int s : out.digits) out.slots.emplace_back(s == 0 ? 0 : ring.dimension(), 0);

  for (const auto& [m, a] : z) {
    const Vector coeffs = ring.to_coords(a);
    for (std::size_t i = 0; i < out.slots.size(); ++i) {
      if (out.digits[i] == 0) continue;
      const Modulus mod(p, out.digits[i]);
      const std::uint64_t mi = mod.reduce(m.coords[i]);
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        out.slots[i][j] = mod.add(out.slots[i][j], mod.mul(mod.reduce(static_cast<std::int64_t>(coeffs[j] % mod.value())), mi));
      }
    }
  }
  return out;
}

bool in_augmentation_square(const WittGroupRing& ctx, const WittGroupRing::Element& z) {
  if (!ctx.coefficients().is_zero(ctx.augmentation(z))) return false;
  return tangent_projection(ctx, z).is_zero();
}

TangentFixedPoints tangent_fixed_points(const WittRing& ring, const FgAbelianGroup& group) {
  const std::uint64_t p = ring.prime();
  if (!group.is_finite() || !group.is_p_power_torsion(p)) {
    fail(ErrorKind::GroupNotPPower, group.descriptor() + " is not a finite abelian " + std::to_string(p) + "-group");
  }
  const auto& factors = group.invariant_factors();
  TangentFixedPoints out;
  std::vector<std::int64_t> orders;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const int v = p_valuation_capped(factors[i], p, 64);
    const ArtinSchreierKernel kernel = artin_schreier_kernel(ring, v);
    for (const auto& b : kernel.basis) {
      orders.push_back(factors[i]);
      TangentElement t;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        t.digits.push_back(j == i ? v : p_valuation_capped(factors[j], p, 64));
        t.slots.emplace_back(ring.dimension(), 0);
      }
      t.slots[i] = kernel.ring.to_coords(b);
      out.generators.push_back(std::move(t));
    }
  }
  out.group = canonicalize_cyclic_sum(orders).target();
  return out;
}

SquareZeroReport delta_on_augmentation_square(const WittGroupRing& ctx, const WittGroupRing::Element& x,
                                              const WittGroupRing::Element& a, std::uint64_t p) {
  if (!ctx.coefficients().is_zero(ctx.augmentation(a))) {
    fail(ErrorKind::NotSquareZero, ctx.format(a) + " is not in the augmentation ideal");
  }
  const WittGroupRing low = ctx.lower();
  SquareZeroReport report;
  const auto lhs_add = delta_p(ctx, ctx.add(x, a), p).value;
  const auto rhs_add = low.sub(low.add(delta_p(ctx, x, p).value, delta_p(ctx, a, p).value),
                               ctx.reduce_to(ctx.mul(power(ctx, x, p - 1), a), low));
  if (!in_augmentation_square(low, low.sub(lhs_add, rhs_add))) {
    report.additive = false;
    report.discrepancy = "additive: " + low.format(lhs_add) + " != " + low.format(rhs_add) + " mod J^2";
  }
  const auto lhs_mul = delta_p(ctx, ctx.mul(x, a), p).value;
  const auto rhs_mul = low.mul(ctx.reduce_to(ctx.frobenius(x, p), low), delta_p(ctx, a, p).value);
  if (!in_augmentation_square(low, low.sub(lhs_mul, rhs_mul))) {
    report.semilinear = false;
    if (report.discrepancy.empty()) {
      report.discrepancy = "semilinear: " + low.format(lhs_mul) + " != " + low.format(rhs_mul) + " mod J^2";
    }
  }
  return report;
}

}  // namespace deltaring
