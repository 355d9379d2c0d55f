#pragma once

// Exact arithmetic in Z/p^r with the precision carried as data.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "deltaring/error.hpp"

namespace deltaring {

using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);

/// The modulus p^r together with its factorization. Requires p^r < 2^64.
class Modulus {
 public:
  Modulus(std::uint64_t p, int r);

  std::uint64_t prime() const { return p_; }
  int precision() const { return r_; }
  std::uint64_t value() const { return m_; }

  std::uint64_t reduce(std::int64_t x) const;
  std::uint64_t reduce(const BigInt& x) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
    return s >= m_ ? static_cast<std::uint64_t>(s - m_) : static_cast<std::uint64_t>(s);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) + m_ - b);
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : m_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t pow(std::uint64_t a, const BigInt& e) const;

  /// Inverse of a residue coprime to p; throws NotAUnit otherwise.
  std::uint64_t inverse(std::uint64_t a) const;

  bool operator==(const Modulus& o) const { return p_ == o.p_ && r_ == o.r_; }

 private:
  std::uint64_t p_;
  int r_;
  std::uint64_t m_;
};

/// p^e as a 64-bit value; throws ValidationError on overflow.
std::uint64_t checked_power(std::uint64_t p, int e);

/// p-adic valuation of a nonzero residue (r for zero).
int valuation(std::uint64_t p, std::uint64_t x, int r);

/// An integer residue modulo p^r carrying its precision r.
class PadicApprox {
 public:
  PadicApprox(std::uint64_t p, int r, std::int64_t value);
  PadicApprox(std::uint64_t p, int r, const BigInt& value);

  std::uint64_t prime() const { return modulus_.prime(); }
  int precision() const { return modulus_.precision(); }
  std::uint64_t residue() const { return residue_; }
  const Modulus& modulus() const { return modulus_; }

  /// Reduction to a lower precision s <= r.
  PadicApprox truncate(int s) const;

  bool operator==(const PadicApprox& o) const {
    return modulus_ == o.modulus_ && residue_ == o.residue_;
  }

  std::string to_string() const;

 private:
  struct Canonical {};
  PadicApprox(Canonical, const Modulus& m, std::uint64_t residue)
      : modulus_(m), residue_(residue) {}

  friend PadicApprox add(const PadicApprox&, const PadicApprox&);
  friend PadicApprox sub(const PadicApprox&, const PadicApprox&);
  friend PadicApprox mul(const PadicApprox&, const PadicApprox&);
  friend PadicApprox pow(const PadicApprox&, std::uint64_t);
  friend PadicApprox inv(const PadicApprox&);
  friend PadicApprox exact_div_p(const PadicApprox&);
  friend PadicApprox teichmuller(std::uint64_t, int, std::uint64_t);

  Modulus modulus_;
  std::uint64_t residue_;
};

// Binary operations require equal primes; the result lives at the smaller
// of the two precisions.
PadicApprox add(const PadicApprox& x, const PadicApprox& y);
PadicApprox sub(const PadicApprox& x, const PadicApprox& y);
PadicApprox mul(const PadicApprox& x, const PadicApprox& y);
PadicApprox pow(const PadicApprox& x, std::uint64_t e);
PadicApprox inv(const PadicApprox& x);

/// Exact division by p. Consumes one digit: the result has precision r - 1.
PadicApprox exact_div_p(const PadicApprox& x);

/// The Teichmuller representative of a in (Z/p^r)^x: u = a mod p, u^p = u.
PadicApprox teichmuller(std::uint64_t p, int r, std::uint64_t a);

}  // namespace deltaring
