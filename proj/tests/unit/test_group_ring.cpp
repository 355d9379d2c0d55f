#include <doctest.h>

#include <random>

#include "deltaring/finite_ring.hpp"
#include "deltaring/group_ring.hpp"
#include "oracles.hpp"

using namespace deltaring;

namespace {

IntegerGroupRing cyclic_integral(std::int64_t n) { return {IntegerRing{}, FgAbelianGroup::cyclic(n)}; }

IntegerGroupRing::Element from_poly(const IntegerGroupRing& ctx, const oracle::Poly& a) {
  IntegerGroupRing::Element x;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ctx.add_into(x, ctx.basis(ctx.group().make({static_cast<std::int64_t>(i)}), BigInt(a[i])));
  }
  return x;
}

oracle::Poly to_poly(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& x) {
  oracle::Poly a(static_cast<std::size_t>(ctx.group().order().value()), 0);
  for (const auto& [m, c] : x) a[static_cast<std::size_t>(m.coords[0])] = static_cast<oracle::i64>(c);
  return a;
}

oracle::Poly random_poly(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  oracle::Poly a(n);
  for (auto& c : a) c = dist(rng);
  return a;
}

}  // namespace

TEST_CASE("convolution in Z[C_n]") {
  const auto z2 = cyclic_integral(2);
  CHECK(z2.mul(from_poly(z2, {1, 1}), from_poly(z2, {1, -1})) == z2.zero());
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      const auto x = from_poly(z2, {a, b});
      CHECK(to_poly(z2, z2.mul(x, x)) == oracle::Poly{a * a + b * b, 2 * a * b});
    }
  }
  const auto z3 = cyclic_integral(3);
  CHECK(z3.mul(from_poly(z3, {0, 1, 0}), from_poly(z3, {0, 0, 1})) == z3.one());
}

TEST_CASE("convolution and Frobenius match the dense oracle") {
  std::mt19937_64 rng(7);
  for (std::int64_t n : {2, 3, 4, 5, 6}) {
    const auto ctx = cyclic_integral(n);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_poly(rng, static_cast<std::size_t>(n), 5);
      const auto b = random_poly(rng, static_cast<std::size_t>(n), 5);
      CHECK(to_poly(ctx, ctx.mul(from_poly(ctx, a), from_poly(ctx, b))) == oracle::cyclic_mul(a, b, 0));
      for (std::uint64_t p : {2, 3, 5}) {
        CHECK(to_poly(ctx, ctx.frobenius(from_poly(ctx, a), p)) ==
              oracle::cyclic_frobenius(a, static_cast<oracle::i64>(p), 0));
      }
    }
  }
}

TEST_CASE("augmentation") {
  const auto z5 = cyclic_integral(5);
  CHECK(z5.augmentation(z5.basis(z5.group().make({3}))) == 1);
  CHECK(z5.augmentation(from_poly(z5, {-2, 1, 3, 1, -2})) == 1);
  CHECK(z5.augmentation(z5.zero()) == 0);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = from_poly(z5, random_poly(rng, 5, 4)), b = from_poly(z5, random_poly(rng, 5, 4));
    CHECK(z5.augmentation(z5.mul(a, b)) == z5.augmentation(a) * z5.augmentation(b));
  }
}

TEST_CASE("Frobenius lift examples") {
  const auto z3 = cyclic_integral(3);
  CHECK(to_poly(z3, z3.frobenius(from_poly(z3, {4, 5, 6}), 2)) == oracle::Poly{4, 6, 5});
  const IntegerGroupRing zz(IntegerRing{}, FgAbelianGroup({}, 1));
  const auto t = zz.basis(zz.group().make({1}));
  CHECK(zz.frobenius(t, 2) == zz.basis(zz.group().make({2})));

  const WittRing f4 = WittRing::witt(2, 2, 2);
  const WittGroupRing ctx(f4, FgAbelianGroup::cyclic(3));
  const auto omega = f4.teichmuller(Vector{0, 1});
  const auto omega2 = f4.mul(omega, omega);
  const auto g = ctx.group().make({1});
  CHECK(ctx.frobenius(ctx.basis(g, omega), 2) == ctx.basis(ctx.group().scalar_mul(2, g), omega2));
}

TEST_CASE("Frobenius is a ring endomorphism of W[M]") {
  const WittRing f4 = WittRing::witt(2, 2, 2);
  const WittGroupRing ctx(f4, FgAbelianGroup::cyclic(2));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> digit(0, 3);
  auto random_element = [&] {
    Vector v(ctx.dimension());
    for (auto& c : v) c = digit(rng);
    return ctx.from_coords(v);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_element(), y = random_element();
    CHECK(ctx.frobenius(ctx.mul(x, y), 2) == ctx.mul(ctx.frobenius(x, 2), ctx.frobenius(y, 2)));
    CHECK(ctx.frobenius(ctx.add(x, y), 2) == ctx.add(ctx.frobenius(x, 2), ctx.frobenius(y, 2)));
  }
}

TEST_CASE("regular representation determinants") {
  const auto z3 = cyclic_integral(3);
  CHECK(abs(regular_rep_det(z3, z3.basis(z3.group().make({1})))) == 1);
  const auto z2 = cyclic_integral(2);
  CHECK(regular_rep_det(z2, from_poly(z2, {1, 1})) == 0);
  const auto z5 = cyclic_integral(5);
  CHECK(abs(regular_rep_det(z5, from_poly(z5, {-2, 1, 3, 1, -2}))) == 1);
  std::mt19937_64 rng(3);
  for (std::int64_t n : {2, 3, 4, 5, 6, 7}) {
    const auto ctx = cyclic_integral(n);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_poly(rng, static_cast<std::size_t>(n), 3);
      CHECK(regular_rep_det(ctx, from_poly(ctx, a)) == oracle::cyclic_regular_det(a));
    }
  }
}

TEST_CASE("integral unit certificates with a free part") {
  const IntegerGroupRing ctx(IntegerRing{}, FgAbelianGroup({5}, 1));
  const auto& m = ctx.group();
  // t^3 times the Bass unit of C5.
  IntegerGroupRing::Element bass;
  const std::int64_t coeffs[] = {-2, 1, 3, 1, -2};
  for (std::int64_t i = 0; i < 5; ++i) ctx.add_into(bass, ctx.basis(m.make({i, 3}), BigInt(coeffs[i])));
  CHECK(is_integral_unit(ctx, bass));
  CHECK(is_integral_unit(ctx, ctx.neg(ctx.basis(m.make({2, -1})))));
  CHECK_FALSE(is_integral_unit(ctx, ctx.add(ctx.one(), ctx.basis(m.make({0, 1})))));
  CHECK_FALSE(is_integral_unit(ctx, ctx.from_int(2)));
  CHECK_FALSE(is_integral_unit(ctx, ctx.zero()));
}

TEST_CASE("pushforward along quotients") {
  const IntegerGroupRing zz(IntegerRing{}, FgAbelianGroup({}, 1));
  const GroupMap q = quotient_map(zz.group(), 2, 1);
  const auto t = [&](std::int64_t e) { return zz.basis(zz.group().make({e})); };
  {
    const auto x = zz.add(zz.scale(3, t(2)), t(3));
    const auto [target, image] = pushforward_along_quotient(zz, x, q);
    CHECK(target.group().descriptor() == "C2");
    CHECK(image == target.add(target.from_int(3), target.basis(target.group().make({1}))));
  }
  {
    const auto [target, image] = pushforward_along_quotient(zz, zz.sub(t(1), zz.one()), q);
    CHECK(image == target.sub(target.basis(target.group().make({1})), target.one()));
  }
  {
    const auto z4 = cyclic_integral(4);
    const GroupMap id = quotient_map(z4.group(), 2, 2);
    const auto x = from_poly(z4, {1, -2, 3, 5});
    const auto [target, image] = pushforward_along_quotient(z4, x, id);
    CHECK(target.group() == z4.group());
    CHECK(image == x);
  }
}

TEST_CASE("unit detection matches the dense oracle") {
  for (std::int64_t n : {2, 3, 4}) {
    for (const WittRing& ring : {WittRing::padic(2, 2), WittRing::padic(3, 2)}) {
      const WittGroupRing ctx(ring, FgAbelianGroup::cyclic(n));
      CAPTURE(ctx.descriptor());
      const auto p = static_cast<oracle::i64>(ring.prime());
      std::size_t mismatches = 0, units = 0;
      for_each_element(ctx, [&](const WittGroupRing::Element& u) {
        const Vector v = ctx.to_coords(u);
        const bool expected = oracle::cyclic_is_unit(oracle::Poly(v.begin(), v.end()), p);
        if (is_unit(ctx, u) != expected) ++mismatches;
        if (!expected) return;
        ++units;
        const auto inv = inverse(ctx, u);
        if (!inv || !(ctx.mul(u, *inv) == ctx.one())) ++mismatches;
      });
      CHECK(mismatches == 0);
      CHECK(units > 0);
    }
  }
}

TEST_CASE("primitive idempotents") {
  {
    const WittRing z9z9 = WittRing::product({WittRing::padic(3, 2), WittRing::padic(3, 2)});
    const auto dec = idempotent_decomposition(z9z9);
    REQUIRE(dec.size() == 2);
    CHECK(dec.idempotents[0] == z9z9.component_unit(0));
    CHECK(dec.idempotents[1] == z9z9.component_unit(1));
  }
  for (int r = 1; r <= 3; ++r) {
    const WittRing ring = WittRing::padic(5, r);
    const auto dec = idempotent_decomposition(ring);
    REQUIRE(dec.size() == 1);
    CHECK(dec.idempotents[0] == ring.one());
  }
  {
    const WittGroupRing f3c2(WittRing::padic(3, 1), FgAbelianGroup::cyclic(2));
    const auto dec = idempotent_decomposition(f3c2);
    REQUIRE(dec.size() == 2);
    CHECK(f3c2.format(dec.idempotents[0]) == "2 + 2[g]");
    CHECK(f3c2.format(dec.idempotents[1]) == "2 + [g]");
  }
  {
    // Lifted idempotents of Z/9[C2] are (1 + g)/2 and (1 - g)/2.
    const WittGroupRing ctx(WittRing::padic(3, 2), FgAbelianGroup::cyclic(2));
    const auto dec = idempotent_decomposition(ctx);
    REQUIRE(dec.size() == 2);
    auto sum = ctx.zero();
    for (const auto& e : dec.idempotents) {
      CHECK(ctx.mul(e, e) == e);
      ctx.add_into(sum, e);
    }
    CHECK(sum == ctx.one());
    CHECK(ctx.mul(dec.idempotents[0], dec.idempotents[1]) == ctx.zero());
  }
}

TEST_CASE("locally constant functions") {
  const auto c4 = std::make_shared<const FgAbelianGroup>(FgAbelianGroup::cyclic(4));
  const WittRing z9 = WittRing::padic(3, 2);
  CHECK(locally_constant_functions(idempotent_decomposition(z9), c4).size() == 4);
  const WittRing z9z9 = WittRing::product({z9, z9});
  CHECK(locally_constant_functions(idempotent_decomposition(z9z9), c4).size() == 16);
  const auto c2 = std::make_shared<const FgAbelianGroup>(FgAbelianGroup::cyclic(2));
  CHECK(locally_constant_functions(idempotent_decomposition(WittRing::witt(2, 2, 2)), c2).size() == 2);
  const auto z = std::make_shared<const FgAbelianGroup>(FgAbelianGroup({}, 1));
  try {
    locally_constant_functions(idempotent_decomposition(z9), z);
    FAIL("expected GroupNotFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GroupNotFinite);
  }
  CHECK(locally_constant_functions(idempotent_decomposition(z9z9), z, 1).size() == 9);
}

TEST_CASE("materialized functions are units") {
  const WittRing z9z9 = WittRing::product({WittRing::padic(3, 2), WittRing::padic(3, 2)});
  const WittGroupRing ctx(z9z9, FgAbelianGroup::cyclic(3));
  const auto dec = idempotent_decomposition(z9z9);
  for (const auto& f : locally_constant_functions(dec, ctx.group_ptr())) {
    const auto u = materialize(ctx, dec, f);
    CHECK(is_unit(ctx, u));
    CHECK(ctx.augmentation(u) == z9z9.one());
  }
}
