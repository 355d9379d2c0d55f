#include "deltaring/witt_ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace deltaring {

namespace {

// ---- polynomials over F_p, full coefficient vectors, low degree first ----

void trim(Vector& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Vector poly_mod(Vector a, const Vector& g, const Modulus& fp) {
  trim(a);
  const std::size_t dg = g.size() - 1;
  std::uint64_t lead_inv = fp.inverse(g.back());
  while (a.size() > dg) {
    std::uint64_t c = fp.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - 1 - dg;
    for (std::size_t j = 0; j <= dg; ++j) a[shift + j] = fp.sub(a[shift + j], fp.mul(c, g[j]));
    trim(a);
  }
  return a;
}

Vector poly_mulmod(const Vector& a, const Vector& b, const Vector& g, const Modulus& fp) {
  if (a.empty() || b.empty()) return {};
  Vector out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = fp.add(out[i + j], fp.mul(a[i], b[j]));
  }
  return poly_mod(std::move(out), g, fp);
}

Vector poly_powmod(Vector base, std::uint64_t e, const Vector& g, const Modulus& fp) {
  Vector result{1};
  base = poly_mod(std::move(base), g, fp);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, g, fp);
    base = poly_mulmod(base, base, g, fp);
    e >>= 1;
  }
  return result;
}

Vector poly_gcd(Vector a, Vector b, const Modulus& fp) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vector r = poly_mod(a, b, fp);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Vector monic_from_lower(const Vector& lower) {
  Vector g(lower);
  g.push_back(1);
  return g;
}

// ---- arithmetic in Z/p^r[x]/(f), f monic with the given lower coefficients ----

struct QuotientRing {
  const Modulus& m;
  const Vector& f;

  std::size_t k() const { return f.size(); }

  Vector mul(const Vector& a, const Vector& b) const {
    const std::size_t n = k();
    Vector tmp(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) tmp[i + j] = m.add(tmp[i + j], m.mul(a[i], b[j]));
    }
    for (std::size_t d = 2 * n - 2; d >= n; --d) {
      std::uint64_t c = tmp[d];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) tmp[d - n + j] = m.sub(tmp[d - n + j], m.mul(c, f[j]));
    }
    tmp.resize(n);
    return tmp;
  }
  Vector sub(const Vector& a, const Vector& b) const {
    Vector out(k());
    for (std::size_t i = 0; i < k(); ++i) out[i] = m.sub(a[i], b[i]);
    return out;
  }
  Vector scalar(std::uint64_t c) const {
    Vector out(k(), 0);
    out[0] = c % m.value();
    return out;
  }
  Vector pow(Vector base, const BigInt& e) const {
    Vector result = scalar(1);
    BigInt rest = e;
    while (rest > 0) {
      if (bit_test(rest, 0)) result = mul(result, base);
      base = mul(base, base);
      rest >>= 1;
    }
    return result;
  }
  // f(y) and f'(y) by Horner.
  Vector eval_f(const Vector& y) const {
    Vector acc = scalar(1);
    for (std::size_t j = k(); j-- > 0;) {
      acc = mul(acc, y);
      acc[0] = m.add(acc[0], f[j]);
    }
    return acc;
  }
  Vector eval_df(const Vector& y) const {
    Vector acc = scalar(m.reduce(static_cast<std::int64_t>(k())));
    for (std::size_t j = k() - 1; j-- > 0;) {
      acc = mul(acc, y);
      acc[0] = m.add(acc[0], m.mul(f[j + 1], m.reduce(static_cast<std::int64_t>(j + 1))));
    }
    return acc;
  }
  bool is_zero(const Vector& a) const {
    for (auto c : a) {
      if (c) return false;
    }
    return true;
  }
  Vector inverse(const Vector& a) const {
    const std::uint64_t p = m.prime();
    Modulus fp(p, 1);
    Vector fbar(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fbar[i] = f[i] % p;
    QuotientRing residue{fp, fbar};
    Vector abar(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) abar[i] = a[i] % p;
    if (residue.is_zero(abar)) fail(ErrorKind::NotAUnit, "zero residue has no inverse");
    BigInt q = 1;
    for (std::size_t i = 0; i < k(); ++i) q *= p;
    Vector v = residue.pow(abar, q - 2);
    // Newton: v <- v (2 - a v) doubles the number of correct digits.
    for (int correct = 1; correct < m.precision(); correct *= 2) {
      Vector av = mul(a, v);
      Vector two_minus = sub(scalar(2), av);
      v = mul(v, two_minus);
    }
    return v;
  }
};

Vector hensel_frobenius(const Modulus& m, const Vector& lifted, const Vector& fbar_lower) {
  const std::uint64_t p = m.prime();
  const std::size_t k = lifted.size();
  Modulus fp(p, 1);
  Vector g = monic_from_lower(fbar_lower);
  Vector xp = poly_powmod(Vector{0, 1}, p, g, fp);
  Vector F(k, 0);
  for (std::size_t i = 0; i < xp.size(); ++i) F[i] = xp[i];
  QuotientRing ring{m, lifted};
  // Newton iteration on f: the root x^p mod p is simple because f is separable.
  for (int iter = 0; iter < 128; ++iter) {
    Vector value = ring.eval_f(F);
    if (ring.is_zero(value)) return F;
    Vector step = ring.mul(value, ring.inverse(ring.eval_df(F)));
    F = ring.sub(F, step);
  }
  fail(ErrorKind::PreconditionViolated, "Newton iteration for the Frobenius image did not converge");
}

std::string poly_to_string(const std::uint64_t* c, std::size_t k) {
  std::string out;
  for (std::size_t d = k; d-- > 0;) {
    if (c[d] == 0) continue;
    if (!out.empty()) out += "+";
    if (d == 0 || c[d] != 1) out += std::to_string(c[d]);
    if (d >= 1) out += "x";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

bool is_irreducible_mod_p(std::uint64_t p, const Vector& lower) {
  Modulus fp(p, 1);
  const std::size_t k = lower.size();
  if (k == 0) return false;
  for (auto c : lower) {
    if (c >= p) return false;
  }
  if (k == 1) return true;
  Vector g = monic_from_lower(lower);
  // A factor of degree d < k would divide x^{p^d} - x.
  Vector h{0, 1};
  for (std::size_t d = 1; d <= k / 2; ++d) {
    h = poly_powmod(h, p, g, fp);
    Vector diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = fp.sub(diff[1], 1);
    trim(diff);
    if (diff.empty()) return false;
    Vector common = poly_gcd(g, diff, fp);
    if (common.size() > 1) return false;
  }
  return true;
}

Vector default_irreducible(std::uint64_t p, int k) {
  if (k < 1) fail(ErrorKind::ValidationError, "residue degree must be positive");
  if (k == 1) return Vector{0};
  Vector c(static_cast<std::size_t>(k), 0);
  // Odometer over coefficient vectors in increasing sum c_i p^i.
  while (true) {
    if (is_irreducible_mod_p(p, c)) return c;
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == p) c[i++] = 0;
    if (i == c.size()) break;
  }
  fail(ErrorKind::NotIrreducible, "no irreducible polynomial found");
}

std::shared_ptr<const WittRing::Data> WittRing::build(std::uint64_t p, int r,
                                                      std::vector<ResidueField> fields) {
  if (fields.empty()) fail(ErrorKind::ValidationError, "a ring needs at least one factor");
  auto d = std::make_shared<Data>(Data{Modulus(p, r), {}, 0, nullptr});
  for (auto& field : fields) {
    if (field.degree < 1 || field.polynomial.size() != static_cast<std::size_t>(field.degree)) {
      fail(ErrorKind::ValidationError, "residue polynomial must have k lower coefficients");
    }
    if (!is_irreducible_mod_p(p, field.polynomial)) {
      fail(ErrorKind::NotIrreducible, "residue polynomial is not irreducible mod " + std::to_string(p));
    }
    Factor f;
    f.field = field;
    f.offset = d->dimension;
    f.lifted = field.polynomial;  // coefficientwise lift with digits in [0, p)
    const std::size_t k = static_cast<std::size_t>(field.degree);
    if (k == 1) {
      f.frobenius_powers = {Vector{1}};
    } else {
      Vector F = hensel_frobenius(d->modulus, f.lifted, field.polynomial);
      QuotientRing ring{d->modulus, f.lifted};
      Vector power = ring.scalar(1);
      for (std::size_t i = 0; i < k; ++i) {
        f.frobenius_powers.push_back(power);
        power = ring.mul(power, F);
      }
    }
    d->dimension += k;
    d->factors.push_back(std::move(f));
  }
  if (r > 1) d->lower = reduce_data(*d);
  return d;
}

std::shared_ptr<const WittRing::Data> WittRing::reduce_data(const Data& src) {
  const int r = src.modulus.precision() - 1;
  auto d = std::make_shared<Data>(Data{Modulus(src.modulus.prime(), r), src.factors, src.dimension, nullptr});
  const std::uint64_t mv = d->modulus.value();
  for (auto& f : d->factors) {
    for (auto& c : f.lifted) c %= mv;
    for (auto& v : f.frobenius_powers) {
      for (auto& c : v) c %= mv;
    }
  }
  if (r > 1) d->lower = reduce_data(*d);
  return d;
}

WittRing WittRing::padic(std::uint64_t p, int r) { return from_fields(p, r, {ResidueField{1, Vector{0}}}); }

WittRing WittRing::witt(std::uint64_t p, int k, int r, std::optional<Vector> fbar) {
  if (!is_prime(p)) fail(ErrorKind::ValidationError, std::to_string(p) + " is not prime");
  Vector poly = fbar ? *fbar : default_irreducible(p, k);
  return from_fields(p, r, {ResidueField{k, std::move(poly)}});
}

WittRing WittRing::product(const std::vector<WittRing>& factors) {
  if (factors.empty()) fail(ErrorKind::ValidationError, "empty product");
  std::vector<ResidueField> fields;
  for (const auto& f : factors) {
    if (f.prime() != factors[0].prime()) {
      fail(ErrorKind::PrimeMismatch, "product factors must share one prime");
    }
    if (f.digits() != factors[0].digits()) {
      fail(ErrorKind::ValidationError, "product factors must share one precision");
    }
    for (const auto& factor : f.data_->factors) fields.push_back(factor.field);
  }
  return from_fields(factors[0].prime(), factors[0].digits(), std::move(fields));
}

WittRing WittRing::from_fields(std::uint64_t p, int r, std::vector<ResidueField> fields) {
  return WittRing(build(p, r, std::move(fields)));
}

WittRing::Element WittRing::frobenius_image(std::size_t i) const {
  const Factor& f = data_->factors[i];
  Element out = zero();
  if (f.field.degree == 1) {
    // The root of x + c_0.
    out[f.offset] = modulus().neg(f.lifted[0]);
    return out;
  }
  const Vector& F = f.frobenius_powers[1];
  std::copy(F.begin(), F.end(), out.begin() + static_cast<std::ptrdiff_t>(f.offset));
  return out;
}

WittRing::Element WittRing::one() const {
  Element e = zero();
  for (const auto& f : data_->factors) e[f.offset] = 1 % modulus().value();
  return e;
}

WittRing::Element WittRing::from_int(std::int64_t n) const {
  Element e = zero();
  std::uint64_t v = modulus().reduce(n);
  for (const auto& f : data_->factors) e[f.offset] = v;
  return e;
}

WittRing::Element WittRing::from_big(const BigInt& n) const {
  Element e = zero();
  std::uint64_t v = modulus().reduce(n);
  for (const auto& f : data_->factors) e[f.offset] = v;
  return e;
}

WittRing::Element WittRing::component_unit(std::size_t i) const {
  Element e = zero();
  e[data_->factors.at(i).offset] = 1 % modulus().value();
  return e;
}

WittRing::Element WittRing::add(const Element& x, const Element& y) const {
  Element out(x.size());
  const Modulus& m = modulus();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = m.add(x[i], y[i]);
  return out;
}

void WittRing::add_into(Element& acc, const Element& x) const {
  const Modulus& m = modulus();
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] = m.add(acc[i], x[i]);
}

WittRing::Element WittRing::sub(const Element& x, const Element& y) const {
  Element out(x.size());
  const Modulus& m = modulus();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = m.sub(x[i], y[i]);
  return out;
}

WittRing::Element WittRing::neg(const Element& x) const {
  Element out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = modulus().neg(x[i]);
  return out;
}

bool WittRing::is_zero(const Element& x) const {
  for (auto c : x) {
    if (c) return false;
  }
  return true;
}

void WittRing::mul_factor(const Factor& f, const std::uint64_t* x, const std::uint64_t* y,
                          std::uint64_t* out) const {
  const Modulus& m = modulus();
  const std::size_t k = static_cast<std::size_t>(f.field.degree);
  if (k == 1) {
    out[0] = m.mul(x[0], y[0]);
    return;
  }
  boost::container::small_vector<std::uint64_t, 8> tmp(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) tmp[i + j] = m.add(tmp[i + j], m.mul(x[i], y[j]));
  }
  for (std::size_t d = 2 * k - 2; d >= k; --d) {
    std::uint64_t c = tmp[d];
    if (c == 0) continue;
    for (std::size_t j = 0; j < k; ++j) tmp[d - k + j] = m.sub(tmp[d - k + j], m.mul(c, f.lifted[j]));
  }
  for (std::size_t i = 0; i < k; ++i) out[i] = tmp[i];
}

WittRing::Element WittRing::mul(const Element& x, const Element& y) const {
  Element out(x.size());
  for (const auto& f : data_->factors) {
    mul_factor(f, x.data() + f.offset, y.data() + f.offset, out.data() + f.offset);
  }
  return out;
}

WittRing::Element WittRing::frobenius(const Element& x) const {
  Element out = zero();
  const Modulus& m = modulus();
  for (const auto& f : data_->factors) {
    const std::size_t k = static_cast<std::size_t>(f.field.degree);
    if (k == 1) {
      out[f.offset] = x[f.offset];
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t c = x[f.offset + i];
      if (c == 0) continue;
      const Vector& power = f.frobenius_powers[i];
      for (std::size_t j = 0; j < k; ++j) {
        out[f.offset + j] = m.add(out[f.offset + j], m.mul(c, power[j]));
      }
    }
  }
  return out;
}

WittRing::Element WittRing::frobenius(const Element& x, std::uint64_t p) const {
  if (p != prime()) {
    fail(ErrorKind::PrimeMismatch, "Frobenius lift at " + std::to_string(p) + " on a ring over " +
                                       std::to_string(prime()));
  }
  return frobenius(x);
}

WittRing::Element WittRing::divide_by_p(const Element& x, std::uint64_t p) const {
  if (p != prime()) fail(ErrorKind::PrimeMismatch, "division by a foreign prime");
  if (digits() == 1) fail(ErrorKind::PrecisionExhausted, "division by p at precision 1");
  const std::uint64_t lower_mod = data_->lower->modulus.value();
  Element out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] % p != 0) {
      fail(ErrorKind::NotDivisible, "coefficient " + std::to_string(x[i]) + " is not divisible by p");
    }
    out[i] = (x[i] / p) % lower_mod;
  }
  return out;
}

WittRing::Element WittRing::times_p_from_lower(const Element& y, std::uint64_t p) const {
  if (p != prime()) fail(ErrorKind::PrimeMismatch, "multiplication by a foreign prime");
  Element out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = modulus().mul(y[i], p);
  return out;
}

WittRing::Element WittRing::reduce_to(const Element& x, const WittRing& target) const {
  Element out(x.size());
  const std::uint64_t mv = target.modulus().value();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] % mv;
  return out;
}

WittRing::Element WittRing::lift_to(const Element& x, const WittRing&) const { return x; }

WittRing WittRing::lower() const {
  if (!data_->lower) fail(ErrorKind::PrecisionExhausted, "no digits left below precision 1");
  return WittRing(data_->lower);
}

WittRing WittRing::at_precision(int s) const {
  if (s == digits()) return *this;
  if (s < digits()) {
    WittRing r = *this;
    while (r.digits() > s) r = r.lower();
    return r;
  }
  std::vector<ResidueField> fields;
  for (const auto& f : data_->factors) fields.push_back(f.field);
  return from_fields(prime(), s, std::move(fields));
}

WittRing::Element WittRing::teichmuller(const Vector& residue) const {
  if (residue.size() != dimension()) fail(ErrorKind::ValidationError, "residue has wrong dimension");
  bool nonzero = false;
  Element u = zero();
  for (std::size_t i = 0; i < residue.size(); ++i) {
    if (residue[i] >= prime()) fail(ErrorKind::ValidationError, "residue digits must be < p");
    u[i] = residue[i];
    nonzero = nonzero || residue[i] != 0;
  }
  if (!nonzero) fail(ErrorKind::PreconditionViolated, "Teichmuller lift of zero requested");
  // u <- u^q per factor, q = p^k, until stable; r + 1 rounds always suffice.
  for (const auto& f : data_->factors) {
    const std::size_t k = static_cast<std::size_t>(f.field.degree);
    Vector comp(u.begin() + f.offset, u.begin() + f.offset + k);
    QuotientRing ring{modulus(), f.lifted};
    BigInt q = 1;
    for (std::size_t i = 0; i < k; ++i) q *= prime();
    for (int round = 0; round <= digits() + 1; ++round) {
      Vector next = ring.pow(comp, q);
      if (next == comp) break;
      comp = std::move(next);
    }
    for (std::size_t i = 0; i < k; ++i) u[f.offset + i] = comp[i];
  }
  return u;
}

WittRing::Element WittRing::from_coords(const Vector& v) const {
  if (v.size() != dimension()) fail(ErrorKind::ValidationError, "coordinate vector has wrong dimension");
  Element e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = v[i] % modulus().value();
  return e;
}

std::string WittRing::format_component(const Element& x, std::size_t i) const {
  const Factor& f = data_->factors.at(i);
  return poly_to_string(x.data() + f.offset, static_cast<std::size_t>(f.field.degree));
}

std::string WittRing::format(const Element& x) const {
  if (component_count() == 1) return format_component(x, 0);
  std::string out = "(";
  for (std::size_t i = 0; i < component_count(); ++i) {
    if (i) out += ",";
    out += format_component(x, i);
  }
  return out + ")";
}

WittRing::Element WittRing::parse_component(const std::string& text, std::size_t i) const {
  const Factor& f = data_->factors.at(i);
  const std::size_t k = static_cast<std::size_t>(f.field.degree);
  std::vector<BigInt> coeffs(k, 0);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto bad = [&](const std::string& what) -> void {
    fail(ErrorKind::ValidationError, "cannot parse coefficient '" + text + "': " + what);
  };
  skip_ws();
  if (pos == text.size()) bad("empty");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      bad("expected + or -");
    }
    first = false;
    BigInt c = 1;
    bool has_digits = false;
    std::string digits;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) digits += text[pos++];
    if (!digits.empty()) {
      c = BigInt(digits);
      has_digits = true;
    }
    skip_ws();
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      skip_ws();
    }
    std::size_t degree = 0;
    if (pos < text.size() && text[pos] == 'x') {
      ++pos;
      degree = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::string e;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) e += text[pos++];
        if (e.empty()) bad("missing exponent");
        degree = std::stoul(e);
      }
    } else if (!has_digits) {
      bad("expected a term");
    }
    if (degree >= k) bad("degree exceeds residue degree");
    coeffs[degree] += sign * c;
  }
  Element e = zero();
  for (std::size_t d = 0; d < k; ++d) e[f.offset + d] = modulus().reduce(coeffs[d]);
  return e;
}

std::string WittRing::descriptor() const {
  std::string out;
  for (std::size_t i = 0; i < component_count(); ++i) {
    if (i) out += "x";
    const int k = component_degree(i);
    if (k == 1) {
      out += "Zp(" + std::to_string(prime()) + "," + std::to_string(digits()) + ")";
    } else {
      out += "W(" + std::to_string(prime()) + "," + std::to_string(k) + "," + std::to_string(digits()) + ")";
    }
  }
  return out;
}

bool WittRing::operator==(const WittRing& o) const {
  if (data_ == o.data_) return true;
  if (!(data_->modulus == o.data_->modulus) || data_->factors.size() != o.data_->factors.size()) return false;
  for (std::size_t i = 0; i < data_->factors.size(); ++i) {
    if (!(data_->factors[i].field == o.data_->factors[i].field)) return false;
  }
  return true;
}

}  // namespace deltaring
