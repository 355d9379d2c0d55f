#include <doctest.h>

#include <set>

#include "deltaring/fp_linalg.hpp"
#include "deltaring/padic.hpp"
#include "oracles.hpp"

using namespace deltaring;

TEST_CASE("residue arithmetic mod 9") {
  const PadicApprox five(3, 2, 5), seven(3, 2, 7);
  CHECK(add(five, seven).residue() == 3);
  CHECK(mul(five, seven).residue() == 8);
  CHECK(inv(PadicApprox(3, 2, 2)).residue() == 5);
  CHECK(sub(five, seven).residue() == 7);
  CHECK(pow(PadicApprox(3, 2, 2), 6).residue() == 1);
}

TEST_CASE("canonical form and mixed precision") {
  CHECK(PadicApprox(3, 2, -1).residue() == 8);
  CHECK(PadicApprox(2, 3, 17).residue() == 1);
  const PadicApprox a(3, 3, 20), b(3, 2, 4);
  const PadicApprox s = add(a, b);
  CHECK(s.precision() == 2);
  CHECK(s.residue() == (20 + 4) % 9);
  CHECK_THROWS_AS(add(PadicApprox(3, 2, 1), PadicApprox(5, 2, 1)), Error);
}

TEST_CASE("inverse of a multiple of p is NotAUnit") {
  try {
    inv(PadicApprox(3, 2, 6));
    FAIL("expected NotAUnit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAUnit);
  }
}

TEST_CASE("exact division by p consumes one digit") {
  const PadicApprox q = exact_div_p(PadicApprox(3, 3, 18));
  CHECK(q.precision() == 2);
  CHECK(q.residue() == 6);
  const PadicApprox h = exact_div_p(PadicApprox(2, 4, 12));
  CHECK(h.precision() == 3);
  CHECK(h.residue() == 6);
  try {
    exact_div_p(PadicApprox(3, 3, 7));
    FAIL("expected NotDivisible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDivisible);
  }
  try {
    exact_div_p(PadicApprox(3, 1, 0));
    FAIL("expected PrecisionExhausted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionExhausted);
  }
}

TEST_CASE("division undoes multiplication by p") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (int r = 2; r <= 4; ++r) {
      const std::int64_t q = oracle::ipow(static_cast<std::int64_t>(p), r);
      for (std::int64_t x = 0; x < q; ++x) {
        const PadicApprox px = mul(PadicApprox(p, r, x), PadicApprox(p, r, static_cast<std::int64_t>(p)));
        CHECK(exact_div_p(px) == PadicApprox(p, r, x).truncate(r - 1));
      }
    }
  }
}

TEST_CASE("Teichmuller representatives") {
  CHECK(teichmuller(3, 2, 2).residue() == 8);
  CHECK(teichmuller(5, 2, 2).residue() == 7);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (int r = 1; r <= 4; ++r) CHECK(teichmuller(p, r, 1).residue() == 1);
  }
}

TEST_CASE("Teichmuller properties hold exhaustively") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (int r = 1; r <= 4; ++r) {
      for (std::uint64_t a = 1; a < p; ++a) {
        const PadicApprox u = teichmuller(p, r, a);
        CHECK(pow(u, p - 1).residue() == 1 % u.modulus().value());
        CHECK(u.residue() % p == a);
        for (std::uint64_t b = 1; b < p; ++b) {
          CHECK(mul(u, teichmuller(p, r, b)) == teichmuller(p, r, a * b % p));
        }
      }
    }
  }
}

TEST_CASE("exactly p - 1 units satisfy u^p = u") {
  for (std::int64_t p : {2, 3, 5}) {
    for (int r = 1; r <= 4; ++r) {
      const std::int64_t q = oracle::ipow(p, r);
      std::size_t count = 0;
      for (std::int64_t u = 0; u < q; ++u) {
        if (u % p != 0 && oracle::pow_mod(u, p, q) == u) ++count;
      }
      CHECK(count == static_cast<std::size_t>(p - 1));
      std::set<std::uint64_t> lifts;
      for (std::int64_t a = 1; a < p; ++a) lifts.insert(teichmuller(p, r, a).residue());
      for (auto t : lifts) CHECK(oracle::pow_mod(static_cast<std::int64_t>(t), p, q) == static_cast<std::int64_t>(t));
    }
  }
}

TEST_CASE("moduli near 2^64") {
  const Modulus m(2, 63);
  CHECK(m.value() == (std::uint64_t{1} << 63));
  CHECK(m.mul(m.value() - 1, m.value() - 1) == 1);
  CHECK_THROWS_AS(Modulus(2, 64), Error);
  CHECK_THROWS_AS(Modulus(4, 2), Error);
  CHECK(is_prime(1000000007));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
}

TEST_CASE("F_p linear algebra") {
  const Modulus f3(3, 1);
  Matrix a(2, 2);
  a(0, 0) = 1, a(0, 1) = 2, a(1, 0) = 2, a(1, 1) = 1;  // det = -3 = 0 mod 3
  CHECK(rank_mod_p(a, f3) == 1);
  const auto ker = kernel_mod_p(a, f3);
  REQUIRE(ker.size() == 1);
  CHECK(a.apply(ker[0], f3) == Vector{0, 0});
  CHECK(solve_mod_p(a, Vector{1, 2}, f3).has_value());
  CHECK_FALSE(solve_mod_p(a, Vector{1, 0}, f3).has_value());
  // Over Z/9 the kernel of diag(3, 0) has 3 * 9 elements.
  Matrix d(2, 2);
  d(0, 0) = 3;
  CHECK(kernel_log_size(d, Modulus(3, 2)) == 3);
}
