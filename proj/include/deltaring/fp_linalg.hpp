#pragma once

// Dense linear algebra over F_p and Z/p^r, sized for desk-scale problems.

#include <cstdint>
#include <optional>
#include <vector>

#include "deltaring/padic.hpp"

namespace deltaring {

using Vector = std::vector<std::uint64_t>;

/// Row-major dense matrix of residues.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void set_column(std::size_t j, const Vector& v);
  Vector apply(const Vector& x, const Modulus& m) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> data_;
};

// The F_p routines expect a Modulus of precision 1.

std::size_t rank_mod_p(Matrix a, const Modulus& fp);

/// Some x with a x = b over F_p, if one exists.
std::optional<Vector> solve_mod_p(Matrix a, Vector b, const Modulus& fp);

/// A basis of the null space of a over F_p, in reduced echelon order.
std::vector<Vector> kernel_mod_p(Matrix a, const Modulus& fp);

/// log_p |ker a| for a square matrix over Z/p^r, via the local Smith form.
int kernel_log_size(Matrix a, const Modulus& m);

}  // namespace deltaring
