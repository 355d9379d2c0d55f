#pragma once

// Truncated Witt rings W(F_{p^k})/p^r, realized as unramified extensions
// Z/p^r[x]/(f), and finite products of them sharing p and r. Z/p^r itself
// is the degree-one case.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "deltaring/fp_linalg.hpp"
#include "deltaring/padic.hpp"

namespace deltaring {

/// The residue field data of one factor: a monic irreducible polynomial over
/// F_p, given by its k lower coefficients c_0..c_{k-1}.
struct ResidueField {
  int degree = 1;
  Vector polynomial;

  bool operator==(const ResidueField&) const = default;
};

/// Is x^k + c_{k-1}x^{k-1} + ... + c_0 irreducible over F_p?
bool is_irreducible_mod_p(std::uint64_t p, const Vector& lower_coefficients);

/// Smallest monic irreducible of degree k over F_p, ordering by
/// sum_i c_i p^i. Degree one gives x.
Vector default_irreducible(std::uint64_t p, int k);

class WittRing {
 public:
  using Element = boost::container::small_vector<std::uint64_t, 4>;

  /// Z/p^r with the identity Frobenius.
  static WittRing padic(std::uint64_t p, int r);
  /// W(F_{p^k})/p^r for the given residue polynomial (default if omitted).
  static WittRing witt(std::uint64_t p, int k, int r, std::optional<Vector> fbar = std::nullopt);
  /// Product of rings over the same p and r.
  static WittRing product(const std::vector<WittRing>& factors);
  static WittRing from_fields(std::uint64_t p, int r, std::vector<ResidueField> fields);

  std::uint64_t prime() const { return data_->modulus.prime(); }
  std::optional<int> precision() const { return data_->modulus.precision(); }
  int digits() const { return data_->modulus.precision(); }
  const Modulus& modulus() const { return data_->modulus; }

  /// Rank as a free Z/p^r-module.
  std::size_t dimension() const { return data_->dimension; }
  std::size_t component_count() const { return data_->factors.size(); }
  int component_degree(std::size_t i) const { return data_->factors[i].field.degree; }
  std::size_t component_offset(std::size_t i) const { return data_->factors[i].offset; }
  const ResidueField& residue_field(std::size_t i) const { return data_->factors[i].field; }
  /// Lifted modulus f of factor i (lower coefficients mod p^r).
  const Vector& lifted_modulus(std::size_t i) const { return data_->factors[i].lifted; }
  /// Image of the generator x under Frobenius, supported on factor i.
  Element frobenius_image(std::size_t i) const;

  /// |A| as a power of p: r * dimension.
  std::size_t log_size() const { return dimension() * static_cast<std::size_t>(digits()); }

  Element zero() const { return Element(dimension(), 0); }
  Element one() const;
  Element from_int(std::int64_t n) const;
  Element from_big(const BigInt& n) const;
  /// The idempotent of factor i.
  Element component_unit(std::size_t i) const;

  Element add(const Element& x, const Element& y) const;
  Element sub(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  Element mul(const Element& x, const Element& y) const;
  void add_into(Element& acc, const Element& x) const;
  bool is_zero(const Element& x) const;
  bool equal(const Element& x, const Element& y) const { return x == y; }

  /// The unique Frobenius lift, acting on each factor by x -> F.
  Element frobenius(const Element& x) const;
  Element frobenius(const Element& x, std::uint64_t p) const;

  /// Exact division by p into the ring one digit lower.
  Element divide_by_p(const Element& x, std::uint64_t p) const;
  /// p times any lift of y, where y lives one digit lower.
  Element times_p_from_lower(const Element& y, std::uint64_t p) const;
  /// Reduction into a ring of lower precision over the same fields.
  Element reduce_to(const Element& x, const WittRing& target) const;
  /// Residues read as an element of a ring of higher precision.
  Element lift_to(const Element& x, const WittRing& target) const;

  WittRing lower() const;
  WittRing at_precision(int s) const;

  /// Teichmuller lift of a residue class, given by its coordinates mod p.
  Element teichmuller(const Vector& residue_coords) const;

  Vector to_coords(const Element& x) const { return Vector(x.begin(), x.end()); }
  Element from_coords(const Vector& v) const;

  /// Coefficient text: a residue for Z/p^r, a polynomial in x otherwise.
  std::string format_component(const Element& x, std::size_t i) const;
  std::string format(const Element& x) const;
  Element parse_component(const std::string& text, std::size_t i) const;

  /// "Zp(p,r)" / "W(p,k,r)" atoms joined by "x".
  std::string descriptor() const;

  bool operator==(const WittRing& o) const;
  bool operator!=(const WittRing& o) const { return !(*this == o); }

 private:
  struct Factor {
    ResidueField field;
    std::size_t offset = 0;
    Vector lifted;                     // f mod p^r, lower coefficients
    std::vector<Vector> frobenius_powers;  // F^i mod (p^r, f), i < k
  };
  struct Data {
    Modulus modulus;
    std::vector<Factor> factors;
    std::size_t dimension = 0;
    std::shared_ptr<const Data> lower;
  };

  explicit WittRing(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static std::shared_ptr<const Data> build(std::uint64_t p, int r, std::vector<ResidueField> fields);
  static std::shared_ptr<const Data> reduce_data(const Data& d);

  void mul_factor(const Factor& f, const std::uint64_t* x, const std::uint64_t* y,
                  std::uint64_t* out) const;

  std::shared_ptr<const Data> data_;
};

}  // namespace deltaring
