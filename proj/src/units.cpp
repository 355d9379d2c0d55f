#include "deltaring/units.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

namespace deltaring {

const char* to_string(UnitMode mode) {
  switch (mode) {
    case UnitMode::all: return "all";
    case UnitMode::reduced: return "reduced";
    case UnitMode::rank_one_reduced: return "rank1-reduced";
    case UnitMode::tautological: return "tautological";
  }
  return "all";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::tautological: return "tautological";
    case Classification::rejected: return "rejected";
    case Classification::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

struct Survivor {
  WittGroupRing::Element unit;
  std::vector<WittGroupRing::Element> chain;
};

struct ChunkResult {
  std::vector<Survivor> survivors;
  std::size_t delta_zero = 0;
};

}  // namespace

UnitSet<WittGroupRing> enumerate_rank_one_reduced(const WittGroupRing& ctx, std::uint64_t p, int depth,
                                                  unsigned jobs) {
  if (p != ctx.prime()) fail(ErrorKind::PrimeMismatch, "enumeration prime differs from the ring's prime");
  if (depth < 0) fail(ErrorKind::ValidationError, "depth must be nonnegative");
  const FgAbelianGroup& group = ctx.group();
  if (!group.is_finite()) fail(ErrorKind::GroupNotFinite, "rank-one enumeration needs a finite group");
  const WittRing& ring = ctx.coefficients();
  const std::size_t order = static_cast<std::size_t>(*group.order());
  const std::size_t ring_log = ring.log_size();
  if (log2_power(p, ring_log * (order - 1)) > static_cast<double>(kMaxEnumerationLog2)) {
    fail(ErrorKind::RingTooLarge, "more than 2^22 reduced candidates");
  }
  const std::uint64_t ring_size = checked_power(p, static_cast<int>(ring_log));
  std::uint64_t total = 1;
  for (std::size_t i = 1; i < order; ++i) total *= ring_size;

  const std::vector<GroupElement> elements = group.enumerate();
  const std::uint64_t digit_base = ring.modulus().value();
  const WittRing::Element one = ring.one();
  const FrobeniusSolver<WittGroupRing> solver(ctx.at_precision(1), p);

  auto coefficient = [&](std::uint64_t index) {
    Vector coords(ring.dimension(), 0);
    for (auto& c : coords) {
      c = index % digit_base;
      index /= digit_base;
    }
    return ring.from_coords(coords);
  };

  auto run = [&](std::uint64_t begin, std::uint64_t end, ChunkResult& out) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      WittGroupRing::Element u;
      WittRing::Element rest = ring.zero();
      std::uint64_t code = idx;
      for (std::size_t j = 1; j < order; ++j) {
        WittRing::Element c = coefficient(code % ring_size);
        code /= ring_size;
        if (ring.is_zero(c)) continue;
        ring.add_into(rest, c);
        u.emplace(elements[j], std::move(c));
      }
      WittRing::Element c0 = ring.sub(one, rest);
      if (!ring.is_zero(c0)) u.emplace(elements[0], std::move(c0));
      if (!is_unit(ctx, u)) continue;
      if (!delta_p(ctx, u, p).is_zero()) continue;
      ++out.delta_zero;
      if (auto chain = find_lift_chain(ctx, u, p, depth, &solver)) {
        out.survivors.push_back({std::move(u), std::move(*chain)});
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::vector<ChunkResult> chunks(workers);
  if (workers == 1) {
    run(0, total, chunks[0]);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = total * w / workers, end = total * (w + 1) / workers;
      threads.emplace_back([&, w, begin, end] {
        try {
          run(begin, end, chunks[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<Survivor> all;
  UnitSet<WittGroupRing> out{ctx, UnitMode::rank_one_reduced, {}, {}, {}, ring.digits(), depth, total, 0,
                             group.is_p_power_torsion(p)};
  for (auto& chunk : chunks) {
    out.delta_zero_at_top += chunk.delta_zero;
    for (auto& s : chunk.survivors) all.push_back(std::move(s));
  }
  std::sort(all.begin(), all.end(), [](const Survivor& a, const Survivor& b) { return a.unit < b.unit; });
  for (auto& s : all) {
    out.units.push_back(std::move(s.unit));
    out.lift_chains.push_back(std::move(s.chain));
  }
  return out;
}

IdempotentDecomposition<WittRing> structural_components(const WittRing& ring) {
  IdempotentDecomposition<WittRing> out{ring, {}};
  for (std::size_t i = 0; i < ring.component_count(); ++i) out.idempotents.push_back(ring.component_unit(i));
  return out;
}

UnitSet<WittGroupRing> tautological_units(const WittGroupRing& ctx) {
  const auto components = structural_components(ctx.coefficients());
  UnitSet<WittGroupRing> out{ctx, UnitMode::tautological, {}, {}, {}, ctx.precision(), std::nullopt, 0, 0,
                             ctx.group().is_p_power_torsion(ctx.prime())};
  for (const auto& f : locally_constant_functions(components, ctx.group_ptr())) {
    out.units.push_back(materialize(ctx, components, f));
  }
  out.candidates = out.units.size();
  std::sort(out.units.begin(), out.units.end());
  return out;
}

BassUnit bass_cyclic_unit(const BassUnitSpec& spec) {
  const std::int64_t n = spec.order, k = spec.k;
  if (n < 2) fail(ErrorKind::InvalidSpec, "cyclic order must be at least 2");
  if (k < 1) fail(ErrorKind::InvalidSpec, "k must be positive");
  if (std::gcd(k, n) != 1) fail(ErrorKind::InvalidSpec, "k must be prime to the order");
  auto k_power_mod = [&](std::int64_t e) {
    std::int64_t acc = 1 % n;
    for (std::int64_t i = 0; i < e; ++i) acc = static_cast<std::int64_t>((static_cast<__int128>(acc) * (k % n)) % n);
    return acc;
  };
  std::int64_t m = 0;
  if (spec.m) {
    m = *spec.m;
    if (m < 1 || k_power_mod(m) != 1 % n) fail(ErrorKind::InvalidSpec, "k^m is not 1 modulo the order");
  } else {
    m = 1;
    while (k_power_mod(m) != 1 % n) ++m;
  }

  IntegerGroupRing ctx(IntegerRing{}, FgAbelianGroup::cyclic(n));
  const FgAbelianGroup& group = ctx.group();
  auto g = [&](std::int64_t i) { return group.make({i}); };
  IntegerGroupRing::Element partial, norm;
  for (std::int64_t i = 0; i < k; ++i) ctx.add_into(partial, ctx.basis(g(i)));
  for (std::int64_t i = 0; i < n; ++i) ctx.add_into(norm, ctx.basis(g(i)));
  BigInt km = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(m));
  BigInt scale = (1 - km) / n;
  IntegerGroupRing::Element u = ctx.add(power(ctx, partial, static_cast<std::uint64_t>(m)), ctx.scale(scale, norm));

  BassUnit out{n, k, m, ctx, u, {}};
  for (std::int64_t i = 0; i < n; ++i) out.coefficients.push_back(ctx.coefficient(u, g(i)));
  return out;
}

HigmanReport higman_torsion_check(const FgAbelianGroup& group, std::int64_t bound, std::int64_t order_bound) {
  if (!group.is_finite()) fail(ErrorKind::GroupNotFinite, "torsion unit search needs a finite group");
  if (bound < 0 || order_bound < 1) fail(ErrorKind::ValidationError, "bounds must be nonnegative");
  const std::size_t n = static_cast<std::size_t>(*group.order());
  const double log_candidates = std::log2(static_cast<double>(n)) +
                                static_cast<double>(n) * std::log2(static_cast<double>(2 * bound + 1));
  if (log_candidates > 24.0) fail(ErrorKind::SearchTooLarge, "more than 2^24 candidates");

  IntegerGroupRing ctx(IntegerRing{}, group);
  HigmanReport out{group, bound, order_bound, 0, ctx, {}, {}, false};
  const std::vector<GroupElement> elements = group.enumerate();
  const auto one = ctx.one();
  std::vector<std::int64_t> coeffs(n, -bound);
  while (true) {
    std::int64_t rest = 0;
    for (std::size_t j = 1; j < n; ++j) rest += coeffs[j];
    const std::int64_t c0 = 1 - rest;
    if (c0 >= -bound && c0 <= bound) {
      ++out.candidates;
      IntegerGroupRing::Element u = ctx.basis(elements[0], BigInt(c0));
      for (std::size_t j = 1; j < n; ++j) ctx.add_into(u, ctx.basis(elements[j], BigInt(coeffs[j])));
      IntegerGroupRing::Element cur = u;
      for (std::int64_t j = 1; j <= order_bound; ++j) {
        if (cur == one) {
          BigInt det = regular_rep_det(ctx, u);
          if (det == 1 || det == -1) {
            out.torsion_units.push_back(u);
            out.orders.push_back(j);
          }
          break;
        }
        cur = ctx.mul(cur, u);
      }
    }
    std::size_t j = 1;
    while (j < n && ++coeffs[j] > bound) coeffs[j++] = -bound;
    if (j >= n) break;
  }
  std::vector<IntegerGroupRing::Element> trivial;
  for (const auto& m : elements) trivial.push_back(ctx.basis(m));
  std::sort(trivial.begin(), trivial.end());
  std::vector<IntegerGroupRing::Element> found = out.torsion_units;
  std::sort(found.begin(), found.end());
  out.only_trivial = found == trivial;
  return out;
}

ClassifyVerdict integral_delta_unit_classify(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& u,
                                             std::uint64_t prime_bound) {
  if (!is_integral_unit(ctx, u)) fail(ErrorKind::NotAUnit, ctx.format(u) + " is not a unit");
  ClassifyVerdict out;
  if (u.size() == 1 && u.begin()->second == 1) {
    out.outcome = Classification::tautological;
    out.element = u.begin()->first;
    return out;
  }
  for (std::uint64_t p = 2; p <= prime_bound; ++p) {
    if (!is_prime(p)) continue;
    out.primes_queried.push_back(p);
    DeltaValue<IntegerGroupRing> d = delta_p(ctx, u, p);
    if (!d.is_zero()) {
      out.outcome = Classification::rejected;
      out.prime = p;
      out.witness = d.format();
      return out;
    }
  }
  return out;
}

}  // namespace deltaring
