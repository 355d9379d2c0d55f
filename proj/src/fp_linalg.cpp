#include "deltaring/fp_linalg.hpp"

#include <utility>

namespace deltaring {

void Matrix::set_column(std::size_t j, const Vector& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vector Matrix::apply(const Vector& x, const Modulus& m) const {
  Vector y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = m.add(acc, m.mul((*this)(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

namespace {

struct Echelon {
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form in place. The augmented column, when present,
// is never chosen as a pivot.
Echelon reduce(Matrix& a, const Modulus& fp, std::size_t pivot_limit) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_limit && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(row, j));
    }
    std::uint64_t scale = fp.inverse(a(row, col));
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) = fp.mul(a(row, j), scale);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      std::uint64_t factor = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        a(i, j) = fp.sub(a(i, j), fp.mul(factor, a(row, j)));
      }
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

}  // namespace

std::size_t rank_mod_p(Matrix a, const Modulus& fp) {
  return reduce(a, fp, a.cols()).pivot_cols.size();
}

std::optional<Vector> solve_mod_p(Matrix a, Vector b, const Modulus& fp) {
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j) % fp.value();
    aug(i, a.cols()) = b[i] % fp.value();
  }
  Echelon e = reduce(aug, fp, a.cols());
  for (std::size_t i = e.pivot_cols.size(); i < aug.rows(); ++i) {
    if (aug(i, a.cols()) != 0) return std::nullopt;
  }
  Vector x(a.cols(), 0);
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) x[e.pivot_cols[i]] = aug(i, a.cols());
  return x;
}

std::vector<Vector> kernel_mod_p(Matrix a, const Modulus& fp) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) %= fp.value();
  }
  Echelon e = reduce(a, fp, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) v[e.pivot_cols[i]] = fp.neg(a(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

int kernel_log_size(Matrix a, const Modulus& m) {
  const std::uint64_t p = m.prime();
  const int r = m.precision();
  const std::size_t n = a.rows();
  int total = 0;
  std::size_t done = 0;
  for (std::size_t t = 0; t < n; ++t) {
    // Pivot: entry of least valuation in the remaining block.
    int best = r;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < n; ++i) {
      for (std::size_t j = t; j < a.cols(); ++j) {
        int v = valuation(p, a(i, j), r);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == r) break;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(t, j), a(bi, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, t), a(i, bj));
    // pivot = p^best * unit; clear its row and column.
    std::uint64_t unit = a(t, t);
    std::uint64_t pb = checked_power(p, best);
    std::uint64_t unit_inv = m.inverse(unit / pb);
    for (std::size_t i = t + 1; i < n; ++i) {
      if (a(i, t) == 0) continue;
      std::uint64_t factor = m.mul(a(i, t) / pb, unit_inv);
      for (std::size_t j = t; j < a.cols(); ++j) a(i, j) = m.sub(a(i, j), m.mul(factor, a(t, j)));
    }
    for (std::size_t j = t + 1; j < a.cols(); ++j) {
      if (a(t, j) == 0) continue;
      std::uint64_t factor = m.mul(a(t, j) / pb, unit_inv);
      for (std::size_t i = t; i < n; ++i) a(i, j) = m.sub(a(i, j), m.mul(factor, a(i, t)));
    }
    total += best;
    ++done;
  }
  total += static_cast<int>(n - done) * r;
  return total;
}

}  // namespace deltaring
