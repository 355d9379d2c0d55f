#include "deltaring/padic.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace deltaring {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PrimeMismatch: return "PrimeMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::GroupNotFinite: return "GroupNotFinite";
    case ErrorKind::GroupNotPPower: return "GroupNotPPower";
    case ErrorKind::RingTooLarge: return "RingTooLarge";
    case ErrorKind::SearchTooLarge: return "SearchTooLarge";
    case ErrorKind::NotSquareZero: return "NotSquareZero";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::UnsupportedContext: return "UnsupportedContext";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit inputs.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t checked_power(std::uint64_t p, int e) {
  std::uint64_t result = 1;
  for (int i = 0; i < e; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / p) {
      fail(ErrorKind::ValidationError,
           std::to_string(p) + "^" + std::to_string(e) + " does not fit in 64 bits");
    }
    result *= p;
  }
  return result;
}

int valuation(std::uint64_t p, std::uint64_t x, int r) {
  if (x == 0) return r;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return std::min(v, r);
}

Modulus::Modulus(std::uint64_t p, int r) : p_(p), r_(r) {
  if (!is_prime(p)) fail(ErrorKind::ValidationError, std::to_string(p) + " is not prime");
  if (r < 1) fail(ErrorKind::ValidationError, "precision must be positive");
  m_ = checked_power(p, r);
}

std::uint64_t Modulus::reduce(std::int64_t x) const {
  if (x >= 0) return static_cast<std::uint64_t>(x) % m_;
  // -(x+1) avoids overflow at INT64_MIN.
  std::uint64_t mag = static_cast<std::uint64_t>(-(x + 1)) + 1;
  return neg(mag % m_);
}

std::uint64_t Modulus::reduce(const BigInt& x) const {
  BigInt r = x % m_;
  if (r < 0) r += m_;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t Modulus::pow(std::uint64_t a, std::uint64_t e) const { return powmod(a, e, m_); }

std::uint64_t Modulus::pow(std::uint64_t a, const BigInt& e) const {
  std::uint64_t result = 1 % m_;
  BigInt rest = e;
  while (rest > 0) {
    if (bit_test(rest, 0)) result = mul(result, a);
    a = mul(a, a);
    rest >>= 1;
  }
  return result;
}

std::uint64_t Modulus::inverse(std::uint64_t a) const {
  if (a % p_ == 0) fail(ErrorKind::NotAUnit, std::to_string(a) + " mod " + std::to_string(m_));
  __int128 old_r = a, r = m_, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  __int128 m = m_;
  __int128 inv = old_s % m;
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

PadicApprox::PadicApprox(std::uint64_t p, int r, std::int64_t value)
    : modulus_(p, r), residue_(modulus_.reduce(value)) {}

PadicApprox::PadicApprox(std::uint64_t p, int r, const BigInt& value)
    : modulus_(p, r), residue_(modulus_.reduce(value)) {}

PadicApprox PadicApprox::truncate(int s) const {
  if (s < 1 || s > precision()) {
    fail(ErrorKind::ValidationError, "cannot truncate precision " + std::to_string(precision()) +
                                         " to " + std::to_string(s));
  }
  Modulus m(prime(), s);
  return PadicApprox(Canonical{}, m, residue_ % m.value());
}

std::string PadicApprox::to_string() const {
  return std::to_string(residue_) + " mod " + std::to_string(prime()) + "^" +
         std::to_string(precision());
}

namespace {

Modulus common_modulus(const PadicApprox& x, const PadicApprox& y) {
  if (x.prime() != y.prime()) {
    fail(ErrorKind::PrimeMismatch,
         std::to_string(x.prime()) + " vs " + std::to_string(y.prime()));
  }
  return x.precision() <= y.precision() ? x.modulus() : y.modulus();
}

}  // namespace

PadicApprox add(const PadicApprox& x, const PadicApprox& y) {
  Modulus m = common_modulus(x, y);
  return PadicApprox(PadicApprox::Canonical{}, m,
                     m.add(x.residue() % m.value(), y.residue() % m.value()));
}

PadicApprox sub(const PadicApprox& x, const PadicApprox& y) {
  Modulus m = common_modulus(x, y);
  return PadicApprox(PadicApprox::Canonical{}, m,
                     m.sub(x.residue() % m.value(), y.residue() % m.value()));
}

PadicApprox mul(const PadicApprox& x, const PadicApprox& y) {
  Modulus m = common_modulus(x, y);
  return PadicApprox(PadicApprox::Canonical{}, m,
                     m.mul(x.residue() % m.value(), y.residue() % m.value()));
}

PadicApprox pow(const PadicApprox& x, std::uint64_t e) {
  return PadicApprox(PadicApprox::Canonical{}, x.modulus_, x.modulus_.pow(x.residue_, e));
}

PadicApprox inv(const PadicApprox& x) {
  return PadicApprox(PadicApprox::Canonical{}, x.modulus_, x.modulus_.inverse(x.residue_));
}

PadicApprox exact_div_p(const PadicApprox& x) {
  if (x.residue_ % x.prime() != 0) {
    fail(ErrorKind::NotDivisible, x.to_string() + " is not divisible by " + std::to_string(x.prime()));
  }
  if (x.precision() == 1) fail(ErrorKind::PrecisionExhausted, "division by p at precision 1");
  Modulus lower(x.prime(), x.precision() - 1);
  return PadicApprox(PadicApprox::Canonical{}, lower, (x.residue_ / x.prime()) % lower.value());
}

PadicApprox teichmuller(std::uint64_t p, int r, std::uint64_t a) {
  Modulus m(p, r);
  if (a == 0 || a >= p) {
    fail(ErrorKind::PreconditionViolated, "Teichmuller lift needs 1 <= a < p");
  }
  // u <- u^p converges digit by digit; r iterations always suffice.
  std::uint64_t u = a;
  for (int i = 0; i <= r; ++i) {
    std::uint64_t next = m.pow(u, p);
    if (next == u) break;
    u = next;
  }
  return PadicApprox(PadicApprox::Canonical{}, m, u);
}

}  // namespace deltaring
