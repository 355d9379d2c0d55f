// Acceptance criteria: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Each criterion checks the library against an independent
// oracle route and within its runtime budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "deltaring/commands.hpp"
#include "deltaring/delta.hpp"
#include "deltaring/units.hpp"
#include "golden_cases.hpp"
#include "oracles.hpp"

using namespace deltaring;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (condition) return;
    if (ok) detail = what;
    ok = false;
  }
};

template <class R>
std::vector<typename R::Element> elements_of(const R& ctx) {
  std::vector<typename R::Element> out;
  for_each_element(ctx, [&](const typename R::Element& x) { out.push_back(x); });
  return out;
}

template <class R>
std::vector<std::pair<typename R::Element, typename R::Element>> all_pairs(const R& ctx) {
  const auto all = elements_of(ctx);
  std::vector<std::pair<typename R::Element, typename R::Element>> out;
  for (const auto& x : all) {
    for (const auto& y : all) out.emplace_back(x, y);
  }
  return out;
}

IntegerGroupRing::Element random_integral(const IntegerGroupRing& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-9, 9);
  IntegerGroupRing::Element x;
  for (const auto& m : ctx.group().enumerate()) ctx.add_into(x, ctx.basis(m, BigInt(dist(rng))));
  return x;
}

unsigned hardware_jobs() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

// ---- 1. delta axioms ---------------------------------------------------------

Outcome delta_axioms() {
  Outcome out;
  std::size_t pairs = 0;
  // Precision 1 leaves no digit for delta to land in, so the finite rings start at r = 2.
  for (std::uint64_t p : {2, 3}) {
    for (int r = 2; r <= 3; ++r) {
      const WittRing ring = WittRing::padic(p, r);
      const auto report = verify_delta_axioms(ring, p, all_pairs(ring));
      pairs += report.pairs_checked;
      out.require(report.passed, "axioms fail on " + ring.descriptor());
      // Second route: the closed-form residue oracle.
      for (const auto& x : elements_of(ring)) {
        out.require(static_cast<oracle::i64>(delta_p(ring, x, p).value[0]) ==
                        oracle::delta_residue(static_cast<oracle::i64>(x[0]), static_cast<oracle::i64>(p), r),
                    "delta disagrees with the residue oracle on " + ring.descriptor());
      }
    }
  }
  const WittRing f4 = WittRing::witt(2, 2, 2);
  const auto w = verify_delta_axioms(f4, 2, all_pairs(f4));
  pairs += w.pairs_checked;
  out.require(w.passed && w.pairs_checked == 256, "axioms fail on W(2,2,2)");

  const IntegerGroupRing z6(IntegerRing{}, FgAbelianGroup::cyclic(6));
  std::mt19937_64 rng(20240601);
  std::vector<std::pair<IntegerGroupRing::Element, IntegerGroupRing::Element>> sample;
  for (int i = 0; i < 10000; ++i) sample.emplace_back(random_integral(z6, rng), random_integral(z6, rng));
  for (std::uint64_t p : {2, 3}) {
    const auto report = verify_delta_axioms(z6, p, sample);
    pairs += report.pairs_checked;
    out.require(report.passed && report.pairs_checked == 10000, "axioms fail on Z[C6] at p = " + std::to_string(p));
  }
  // Second route for Z[C6]: the dense exact oracle.
  for (std::size_t i = 0; i < 200; ++i) {
    oracle::Poly a(6, 0);
    for (const auto& [m, c] : sample[i].first) a[static_cast<std::size_t>(m.coords[0])] = static_cast<oracle::i64>(c);
    const auto d = delta_p(z6, sample[i].first, 2).value;
    oracle::Poly got(6, 0);
    for (const auto& [m, c] : d) got[static_cast<std::size_t>(m.coords[0])] = static_cast<oracle::i64>(c);
    out.require(got == oracle::cyclic_delta_exact(a, 2), "Z[C6] delta disagrees with the dense oracle");
  }
  if (out.ok) out.detail = std::to_string(pairs) + " pairs";
  return out;
}

// ---- 2. psi = phi -------------------------------------------------------------

Outcome psi_is_frobenius() {
  Outcome out;
  std::size_t checked = 0;
  std::vector<WittRing> rings;
  for (std::uint64_t p : {2, 3}) {
    for (int r = 2; r <= 3; ++r) rings.push_back(WittRing::padic(p, r));
  }
  rings.push_back(WittRing::witt(2, 2, 2));
  for (const WittRing& ring : rings) {
    for (const auto& x : elements_of(ring)) {
      ++checked;
      out.require(psi(ring, x, ring.prime()) == ring.frobenius(x), "psi != phi on " + ring.descriptor());
    }
  }
  const IntegerGroupRing z6(IntegerRing{}, FgAbelianGroup::cyclic(6));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const auto x = random_integral(z6, rng);
    for (std::uint64_t p : {2, 3}) {
      ++checked;
      out.require(psi(z6, x, p) == z6.frobenius(x, p), "psi != phi on Z[C6]");
    }
  }
  if (out.ok) out.detail = std::to_string(checked) + " elements";
  return out;
}

// ---- 3. Teichmuller units -------------------------------------------------------

Outcome teichmuller_units() {
  Outcome out;
  struct Field {
    std::uint64_t p;
    int k;
  };
  for (Field f : {Field{2, 2}, Field{2, 3}, Field{3, 2}}) {
    const std::uint64_t q = checked_power(f.p, f.k);
    for (int r = 1; r <= 3; ++r) {
      const WittRing ring = WittRing::witt(f.p, f.k, r);
      // delta of tau(a) computed one digit higher is exact at precision r.
      const WittRing up = ring.at_precision(r + 1);
      std::size_t lifts = 0;
      for_each_coords(static_cast<std::size_t>(f.k), f.p, [&](const Vector& a) {
        if (std::all_of(a.begin(), a.end(), [](std::uint64_t v) { return v == 0; })) return;
        ++lifts;
        out.require(delta_p(up, up.teichmuller(a), f.p).is_zero(), "delta(tau) != 0 on " + ring.descriptor());
      });
      std::size_t fixed = 0;
      for_each_element(ring, [&](const WittRing::Element& u) {
        if (is_unit(ring, u) && power(ring, u, q) == u) ++fixed;
      });
      out.require(fixed == q - 1 && lifts == q - 1, "wrong count of q-th power fixed units on " + ring.descriptor());
      // Second route: the dense extension oracle.
      const Vector& lifted = ring.lifted_modulus(0);
      const oracle::Extension ext{static_cast<oracle::i64>(f.p), r, static_cast<oracle::i64>(ring.modulus().value()),
                                  oracle::Poly(lifted.begin(), lifted.end())};
      std::size_t oracle_fixed = 0;
      for (const auto& u : ext.all()) {
        bool unit = false;
        for (auto c : u) unit = unit || c % ext.p != 0;
        if (unit && ext.pow(u, static_cast<oracle::i64>(q)) == u) ++oracle_fixed;
      }
      out.require(oracle_fixed == q - 1, "oracle count differs on " + ring.descriptor());
    }
  }
  return out;
}

// ---- 4. Artin-Schreier kernels ----------------------------------------------------

Outcome artin_schreier_sizes() {
  Outcome out;
  std::size_t rings = 0;
  for (std::uint64_t p : {2, 3}) {
    for (int r = 1; r <= 3; ++r) {
      const WittRing zp = WittRing::padic(p, r), wq = WittRing::witt(p, 2, r);
      for (const WittRing& ring : {zp, wq, WittRing::product({zp, zp}), WittRing::product({zp, wq}),
                                   WittRing::product({wq, wq})}) {
        ++rings;
        const auto kernel = artin_schreier_kernel(ring);
        const int expected = r * static_cast<int>(ring.component_count());
        out.require(kernel.log_size == expected, "kernel size differs on " + ring.descriptor());
        if (ring.log_size() * std::log2(static_cast<double>(p)) <= 16.0) {
          std::size_t fixed = 0;
          for_each_element(ring, [&](const WittRing::Element& x) { fixed += ring.frobenius(x) == x; });
          out.require(fixed == checked_power(p, expected), "brute-force kernel differs on " + ring.descriptor());
        }
      }
    }
  }
  if (out.ok) out.detail = std::to_string(rings) + " rings";
  return out;
}

// ---- 5. tangent fixed points vs locally constant functions ---------------------------

Outcome tangent_vs_locally_constant() {
  Outcome out;
  std::size_t cases = 0;
  for (std::uint64_t p : {2, 3}) {
    const auto pp = static_cast<std::int64_t>(p);
    const std::vector<FgAbelianGroup> groups = {FgAbelianGroup::cyclic(pp), FgAbelianGroup::cyclic(pp * pp),
                                                FgAbelianGroup({pp, pp}, 0)};
    for (int r = 1; r <= 3; ++r) {
      std::vector<WittRing> rings = {WittRing::padic(p, r),
                                     WittRing::product({WittRing::padic(p, r), WittRing::padic(p, r)})};
      if (p == 2) rings.push_back(WittRing::witt(2, 2, r));
      for (const WittRing& ring : rings) {
        for (const FgAbelianGroup& group : groups) {
          ++cases;
          const auto fixed = tangent_fixed_points(ring, group);
          const auto gp = std::make_shared<const FgAbelianGroup>(group);
          const auto functions = locally_constant_functions(idempotent_decomposition(ring), gp);
          std::int64_t exponent = 1;
          for (const auto& f : functions) {
            for (const auto& v : f.values) exponent = std::max(exponent, group.element_order(v));
          }
          const std::string where = ring.descriptor() + " with " + group.descriptor();
          out.require(fixed.group.order() == functions.size(), "cardinality differs for " + where);
          out.require(fixed.group.exponent() == exponent, "exponent differs for " + where);
        }
      }
    }
  }
  if (out.ok) out.detail = std::to_string(cases) + " cases";
  return out;
}

// ---- 6 and 10. rank-one stabilization and subgroup closure ----------------------------

struct RigidityCase {
  std::string name;
  WittGroupRing ctx;
  std::uint64_t p;
  std::set<oracle::Poly> oracle_set;
};

std::vector<RigidityCase> rigidity_cases() {
  const int r = 3, d = 2;
  std::vector<RigidityCase> out;
  auto single = [&](std::uint64_t p, std::int64_t n) {
    WittGroupRing ctx(WittRing::padic(p, r), FgAbelianGroup::cyclic(n));
    return RigidityCase{ctx.descriptor(), ctx, p,
                        oracle::liftable_reduced_units(static_cast<oracle::i64>(p), r, d, static_cast<std::size_t>(n))};
  };
  out.push_back(single(2, 2));
  out.push_back(single(2, 4));
  out.push_back(single(3, 3));
  // A[M] for A = A1 x A2 splits as A1[M] x A2[M]: the oracle set is the product.
  const WittRing z27 = WittRing::padic(3, r);
  WittGroupRing ctx(WittRing::product({z27, z27}), FgAbelianGroup::cyclic(3));
  const auto factor = oracle::liftable_reduced_units(3, r, d, 3);
  std::set<oracle::Poly> product;
  for (const auto& a : factor) {
    for (const auto& b : factor) {
      oracle::Poly joined;
      for (std::size_t i = 0; i < a.size(); ++i) {
        joined.push_back(a[i]);
        joined.push_back(b[i]);
      }
      product.insert(joined);
    }
  }
  out.push_back({ctx.descriptor(), ctx, 3, product});
  return out;
}

std::vector<UnitSet<WittGroupRing>>& survivor_sets() {
  static std::vector<UnitSet<WittGroupRing>> sets;
  return sets;
}

Outcome rank_one_stabilization() {
  Outcome out;
  std::string counts;
  for (const auto& c : rigidity_cases()) {
    const auto survivors = enumerate_rank_one_reduced(c.ctx, c.p, 2, hardware_jobs());
    const auto taut = tautological_units(c.ctx);
    const std::size_t expected =
        checked_power(c.ctx.group().order().value(), static_cast<int>(c.ctx.coefficients().component_count()));
    out.require(survivors.units == taut.units, "survivors differ from tautological units on " + c.name);
    out.require(survivors.units.size() == expected, "wrong survivor count on " + c.name);
    std::set<oracle::Poly> found;
    for (const auto& u : survivors.units) {
      const Vector v = c.ctx.to_coords(u);
      found.insert(oracle::Poly(v.begin(), v.end()));
    }
    out.require(found == c.oracle_set, "survivors differ from the exhaustive oracle on " + c.name);
    if (!counts.empty()) counts += ", ";
    counts += c.name + ": " + std::to_string(survivors.units.size());
    survivor_sets().push_back(survivors);
  }
  if (out.ok) out.detail = counts;
  return out;
}

Outcome subgroup_closure() {
  Outcome out;
  if (survivor_sets().empty()) {
    for (const auto& c : rigidity_cases()) survivor_sets().push_back(enumerate_rank_one_reduced(c.ctx, c.p, 2));
  }
  std::size_t products = 0;
  for (const auto& set : survivor_sets()) {
    const auto& ctx = set.context;
    for (const auto& u : set.units) {
      for (const auto& v : set.units) {
        ++products;
        const auto verdict = is_rank_one_unit(ctx, ctx.mul(u, v), ctx.prime(), {2, false});
        out.require(verdict.level == RankOneLevel::yes_to_depth, "product leaves the rank-one set in " +
                                                                     ctx.descriptor() + ": " + verdict.witness);
      }
    }
  }
  if (out.ok) out.detail = std::to_string(products) + " products";
  return out;
}

// ---- 7. Bass units ---------------------------------------------------------------------

Outcome bass_falsification() {
  Outcome out;
  std::string primes;
  for (BassUnitSpec spec : {BassUnitSpec{5, 2, 4}, BassUnitSpec{7, 2, 3}}) {
    const auto b = bass_cyclic_unit(spec);
    const std::string name = "(" + std::to_string(spec.order) + "," + std::to_string(spec.k) + ")";
    const BigInt det = regular_rep_det(b.context, b.unit);
    out.require(det == 1 || det == -1, "Bass unit " + name + " has determinant " + det.str());
    out.require(b.context.augmentation(b.unit) == 1, "Bass unit " + name + " has augmentation != 1");
    oracle::Poly coeffs;
    for (const auto& c : b.coefficients) coeffs.push_back(static_cast<oracle::i64>(c));
    const oracle::i64 oracle_det = oracle::cyclic_regular_det(coeffs);
    out.require(oracle_det == 1 || oracle_det == -1, "oracle determinant of " + name + " is not +-1");
    const auto verdict = integral_delta_unit_classify(b.context, b.unit, 13);
    out.require(verdict.outcome == Classification::rejected && verdict.prime && *verdict.prime <= 13,
                "Bass unit " + name + " was not rejected");
    if (verdict.prime) {
      const auto d = oracle::cyclic_delta_exact(coeffs, static_cast<oracle::i64>(*verdict.prime));
      out.require(std::any_of(d.begin(), d.end(), [](oracle::i64 c) { return c != 0; }),
                  "oracle delta vanishes at the witness prime for " + name);
      if (!primes.empty()) primes += ", ";
      primes += name + " by p = " + std::to_string(*verdict.prime);
    }
  }
  if (out.ok) out.detail = primes;
  return out;
}

// ---- 8. torsion units ------------------------------------------------------------------

Outcome higman_desk_check() {
  Outcome out;
  for (std::int64_t n : {2, 3, 4}) {
    const auto report = higman_torsion_check(FgAbelianGroup::cyclic(n), 2, 2 * n);
    out.require(report.only_trivial, "nontrivial torsion units in Z[C" + std::to_string(n) + "]");
    std::set<std::string> reported, expected;
    for (const auto& u : report.torsion_units) reported.insert(report.context.format(u));
    for (const auto& m : report.context.group().enumerate()) {
      expected.insert(report.context.format(report.context.basis(m, BigInt(1))));
    }
    out.require(reported == expected, "torsion units of Z[C" + std::to_string(n) + "] are not exactly {[m]}");
    // Second route: dense powers over the same candidates.
    std::set<oracle::Poly> torsion;
    oracle::Poly c(static_cast<std::size_t>(n), -2);
    while (true) {
      oracle::i64 rest = 0;
      for (std::size_t i = 1; i < c.size(); ++i) rest += c[i];
      c[0] = 1 - rest;
      if (c[0] >= -2 && c[0] <= 2) {
        oracle::Poly one(c.size(), 0);
        one[0] = 1;
        for (oracle::i64 j = 1; j <= 2 * n; ++j) {
          if (oracle::cyclic_pow(c, j, 0) == one) {
            torsion.insert(c);
            break;
          }
        }
      }
      std::size_t i = 1;
      while (i < c.size() && ++c[i] > 2) c[i++] = -2;
      if (i == c.size()) break;
    }
    std::set<oracle::Poly> trivial;
    for (std::int64_t m = 0; m < n; ++m) {
      oracle::Poly e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(m)] = 1;
      trivial.insert(e);
    }
    out.require(torsion == trivial, "oracle finds nontrivial torsion in Z[C" + std::to_string(n) + "]");
  }
  return out;
}

// ---- 9. square-zero identities -----------------------------------------------------------

Outcome square_zero() {
  Outcome out;
  std::size_t checks = 0;
  const WittRing z16 = WittRing::padic(2, 4);
  for (const auto& x : elements_of(z16)) {
    for (std::int64_t a : {0, 8}) {
      ++checks;
      const auto report = delta_on_square_zero(z16, x, z16.from_int(a), 2);
      out.require(report.passed(), "Z/16: " + report.discrepancy);
    }
  }
  const WittGroupRing ctx(WittRing::padic(2, 3), FgAbelianGroup::cyclic(2));
  const auto all = elements_of(ctx);
  for (const auto& x : all) {
    for (const auto& a : all) {
      if (!ctx.coefficients().is_zero(ctx.augmentation(a))) continue;
      ++checks;
      const auto report = delta_on_augmentation_square(ctx, x, a, 2);
      out.require(report.passed(), "(Z/8)[C2]: " + report.discrepancy);
    }
  }
  if (out.ok) out.detail = std::to_string(checks) + " checks";
  return out;
}

// ---- 11. CLI determinism ------------------------------------------------------------------

Outcome cli_determinism() {
  Outcome out;
  for (const auto& c : golden::cases()) {
    const std::string expected = golden::read_fixture(c.fixture);
    out.require(!expected.empty(), "missing fixture " + c.fixture);
    for (int run = 0; run < 2; ++run) {
      const CommandResult result = run_command(c.args);
      out.require(result.exit_code == 0 && result.output == expected, c.fixture + " differs on run " +
                                                                          std::to_string(run + 1));
    }
    if (c.parallel) {
      for (const char* jobs : {"1", "4"}) {
        auto args = c.args;
        args.insert(args.end(), {"--jobs", jobs});
        out.require(run_command(args).output == expected, c.fixture + " differs with --jobs " + jobs);
      }
    }
  }
  return out;
}

struct Criterion {
  int number;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "delta-ring identities", 10, delta_axioms},
      {2, "psi equals the Frobenius lift", 5, psi_is_frobenius},
      {3, "Teichmuller units are rank one", 5, teichmuller_units},
      {4, "Artin-Schreier kernel sizes", 10, artin_schreier_sizes},
      {5, "tangent fixed points match locally constant functions", 10, tangent_vs_locally_constant},
      {6, "rank-one reduced units stabilize to tautological units", 60, rank_one_stabilization},
      {7, "Bass units are rejected", 5, bass_falsification},
      {8, "torsion units of Z[M] are trivial", 30, higman_desk_check},
      {9, "square-zero identities", 5, square_zero},
      {10, "rank-one units form a subgroup", 10, subgroup_closure},
      {11, "CLI output is deterministic", 10, cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.ok && seconds > c.budget_seconds) {
      outcome.ok = false;
      outcome.detail = "over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
    }
    if (!outcome.ok) ++failures;
    std::printf("%s criterion %2d: %s (%.2f s)%s%s\n", outcome.ok ? "PASS" : "FAIL", c.number, c.title, seconds,
                outcome.detail.empty() ? "" : ": ", outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
