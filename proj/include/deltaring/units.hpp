#pragma once

// Enumerative unit theory: unit sets of finite rings, rank-one reduced units
// of truncated group rings, tautological units, Bass cyclic units, torsion
// unit searches in Z[M] and the integral rank-one classifier.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deltaring/delta.hpp"
#include "deltaring/finite_ring.hpp"
#include "deltaring/group_ring.hpp"

namespace deltaring {

enum class UnitMode { all, reduced, rank_one_reduced, tautological };

const char* to_string(UnitMode mode);

template <class R>
struct UnitSet {
  R context;
  UnitMode mode = UnitMode::all;
  std::vector<typename R::Element> units;
  /// inverses[i] * units[i] = 1 (filled for mode all).
  std::vector<typename R::Element> inverses;
  /// For rank-one sets: one certifying chain of lifts per unit, precision r+1..r+d.
  std::vector<std::vector<typename R::Element>> lift_chains;
  std::optional<int> precision;
  std::optional<int> depth;
  std::size_t candidates = 0;
  /// Candidates with delta = 0 at the top precision, before lifting.
  std::size_t delta_zero_at_top = 0;
  /// Whether M is p-power torsion, the case where rank-one units are expected to be tautological.
  bool p_power_torsion = true;
};

/// All units with verified inverses; |A| <= 2^22.
template <FiniteContext R>
UnitSet<R> enumerate_units(const R& ctx) {
  if (log2_power(ctx.prime(), ctx.dimension() * static_cast<std::size_t>(ctx.digits())) >
      static_cast<double>(kMaxEnumerationLog2)) {
    fail(ErrorKind::RingTooLarge, "unit enumeration over more than 2^22 elements");
  }
  UnitSet<R> out{ctx, UnitMode::all, {}, {}, {}, ctx.digits(), std::nullopt, 0, 0, true};
  for_each_element(ctx, [&](const typename R::Element& x) {
    ++out.candidates;
    if (!is_unit(ctx, x)) return;
    auto inv = inverse(ctx, x);
    if (!inv) fail(ErrorKind::PreconditionViolated, "unit without an inverse");
    out.units.push_back(x);
    out.inverses.push_back(*inv);
  });
  return out;
}

/// Reduced units u of A/p^r[M] with delta_p(u) = 0 at the top precision that
/// admit d successive delta-Hensel lifts. Work is split over jobs threads; the
/// result is sorted canonically and independent of jobs.
UnitSet<WittGroupRing> enumerate_rank_one_reduced(const WittGroupRing& ctx, std::uint64_t p, int depth,
                                                  unsigned jobs = 1);

/// Image of the tautological map: sum_i e_i [m_i] over all locally constant
/// functions, for finite M.
UnitSet<WittGroupRing> tautological_units(const WittGroupRing& ctx);

/// The components of a Witt ring product, read off its factors.
IdempotentDecomposition<WittRing> structural_components(const WittRing& ring);

struct BassUnitSpec {
  std::int64_t order = 0;
  std::int64_t k = 0;
  /// Defaults to the multiplicative order of k mod n.
  std::optional<std::int64_t> m;
};

struct BassUnit {
  std::int64_t order = 0;
  std::int64_t k = 0;
  std::int64_t m = 0;
  IntegerGroupRing context;
  IntegerGroupRing::Element unit;
  /// Coefficient of g^i at position i.
  std::vector<BigInt> coefficients;
};

/// u = (1 + g + ... + g^(k-1))^m + ((1 - k^m) / n) (1 + g + ... + g^(n-1)).
BassUnit bass_cyclic_unit(const BassUnitSpec& spec);

struct HigmanReport {
  FgAbelianGroup group;
  std::int64_t coefficient_bound = 0;
  std::int64_t order_bound = 0;
  std::size_t candidates = 0;
  IntegerGroupRing context;
  /// Torsion units found, with their orders.
  std::vector<IntegerGroupRing::Element> torsion_units;
  std::vector<std::int64_t> orders;
  /// Whether the torsion units are exactly {[m] : m in M}.
  bool only_trivial = false;
};

/// Augmentation-one u in Z[M] with coefficients in [-B, B], det = +-1 and
/// u^j = 1 for some j <= N.
HigmanReport higman_torsion_check(const FgAbelianGroup& group, std::int64_t bound, std::int64_t order_bound);

enum class Classification { tautological, rejected, inconclusive };

const char* to_string(Classification c);

struct ClassifyVerdict {
  Classification outcome = Classification::inconclusive;
  std::optional<GroupElement> element;
  std::optional<std::uint64_t> prime;
  std::string witness;
  std::vector<std::uint64_t> primes_queried;
};

/// Tautological units +[m] are recognized without computing any delta;
/// anything else is rejected by the first prime p <= prime_bound with
/// delta_p(u) != 0.
ClassifyVerdict integral_delta_unit_classify(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& u,
                                             std::uint64_t prime_bound = 13);

}  // namespace deltaring
