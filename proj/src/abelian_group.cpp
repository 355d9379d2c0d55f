#include "deltaring/abelian_group.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>

namespace deltaring {

namespace {

std::int64_t mod_floor(std::int64_t x, std::int64_t d) {
  std::int64_t r = x % d;
  return r < 0 ? r + d : r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::ValidationError, "group arithmetic overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorKind::ValidationError, "group arithmetic overflow");
  return out;
}

}  // namespace

FgAbelianGroup::FgAbelianGroup(std::vector<std::int64_t> invariant_factors, int free_rank)
    : torsion_(std::move(invariant_factors)), free_rank_(free_rank) {
  if (free_rank_ < 0) fail(ErrorKind::ValidationError, "free rank must be non-negative");
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) fail(ErrorKind::ValidationError, "invariant factors must be >= 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0) {
      fail(ErrorKind::ValidationError, "invariant factors must form a divisibility chain");
    }
  }
}

FgAbelianGroup FgAbelianGroup::cyclic(std::int64_t n) {
  if (n == 1) return trivial();
  return FgAbelianGroup({n}, 0);
}

std::optional<std::uint64_t> FgAbelianGroup::order() const {
  if (!is_finite()) return std::nullopt;
  std::uint64_t n = 1;
  for (auto d : torsion_) {
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(d), &n)) {
      fail(ErrorKind::ValidationError, "group order overflows");
    }
  }
  return n;
}

std::optional<std::int64_t> FgAbelianGroup::exponent() const {
  if (!is_finite()) return std::nullopt;
  return torsion_.empty() ? 1 : torsion_.back();
}

bool FgAbelianGroup::is_p_power_torsion(std::uint64_t p) const {
  for (auto d : torsion_) {
    auto rest = static_cast<std::uint64_t>(d);
    while (rest % p == 0) rest /= p;
    if (rest != 1) return false;
  }
  return true;
}

GroupElement FgAbelianGroup::zero() const {
  GroupElement x;
  x.coords.assign(rank(), 0);
  return x;
}

GroupElement FgAbelianGroup::canonical(GroupElement x) const {
  for (std::size_t i = 0; i < torsion_.size(); ++i) x.coords[i] = mod_floor(x.coords[i], torsion_[i]);
  return x;
}

void FgAbelianGroup::check(const GroupElement& x) const {
  if (x.coords.size() != rank()) {
    fail(ErrorKind::GroupMismatch, "element with " + std::to_string(x.coords.size()) +
                                       " coordinates in a group of rank " + std::to_string(rank()));
  }
}

bool FgAbelianGroup::contains(const GroupElement& x) const {
  if (x.coords.size() != rank()) return false;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (x.coords[i] < 0 || x.coords[i] >= torsion_[i]) return false;
  }
  return true;
}

GroupElement FgAbelianGroup::make(std::vector<std::int64_t> coords) const {
  GroupElement x;
  x.coords.assign(coords.begin(), coords.end());
  check(x);
  return canonical(std::move(x));
}

GroupElement FgAbelianGroup::add(const GroupElement& x, const GroupElement& y) const {
  check(x);
  check(y);
  GroupElement out = x;
  for (std::size_t i = 0; i < out.coords.size(); ++i) {
    if (i < torsion_.size()) {
      out.coords[i] = mod_floor(x.coords[i] + y.coords[i], torsion_[i]);
    } else {
      out.coords[i] = checked_add(x.coords[i], y.coords[i]);
    }
  }
  return out;
}

GroupElement FgAbelianGroup::neg(const GroupElement& x) const { return scalar_mul(-1, x); }

GroupElement FgAbelianGroup::sub(const GroupElement& x, const GroupElement& y) const {
  return add(x, neg(y));
}

GroupElement FgAbelianGroup::scalar_mul(std::int64_t n, const GroupElement& x) const {
  check(x);
  GroupElement out = x;
  for (std::size_t i = 0; i < out.coords.size(); ++i) {
    if (i < torsion_.size()) {
      __int128 v = static_cast<__int128>(n) * x.coords[i] % torsion_[i];
      if (v < 0) v += torsion_[i];
      out.coords[i] = static_cast<std::int64_t>(v);
    } else {
      out.coords[i] = checked_mul(n, x.coords[i]);
    }
  }
  return out;
}

std::int64_t FgAbelianGroup::element_order(const GroupElement& x) const {
  check(x);
  std::int64_t order = 1;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (i >= torsion_.size()) {
      if (x.coords[i] != 0) return 0;
      continue;
    }
    std::int64_t d = torsion_[i];
    std::int64_t o = d / std::gcd(d, x.coords[i]);
    order = std::lcm(order, o);
  }
  return order;
}

std::uint64_t FgAbelianGroup::index_of(const GroupElement& x) const {
  if (!is_finite()) fail(ErrorKind::GroupNotFinite, "indexing an infinite group");
  check(x);
  std::uint64_t idx = 0;
  for (std::size_t i = torsion_.size(); i-- > 0;) {
    idx = idx * static_cast<std::uint64_t>(torsion_[i]) + static_cast<std::uint64_t>(x.coords[i]);
  }
  return idx;
}

GroupElement FgAbelianGroup::element_at(std::uint64_t index) const {
  if (!is_finite()) fail(ErrorKind::GroupNotFinite, "indexing an infinite group");
  GroupElement x = zero();
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    auto d = static_cast<std::uint64_t>(torsion_[i]);
    x.coords[i] = static_cast<std::int64_t>(index % d);
    index /= d;
  }
  return x;
}

void FgAbelianGroup::for_each(std::int64_t box,
                              const std::function<void(const GroupElement&)>& visit) const {
  if (box < 0) fail(ErrorKind::ValidationError, "box bound must be non-negative");
  GroupElement x = zero();
  for (std::size_t i = torsion_.size(); i < rank(); ++i) x.coords[i] = -box;
  // Odometer: torsion digits vary fastest, matching index_of.
  while (true) {
    visit(x);
    std::size_t i = 0;
    for (; i < rank(); ++i) {
      std::int64_t limit = i < torsion_.size() ? torsion_[i] - 1 : box;
      if (x.coords[i] < limit) {
        ++x.coords[i];
        break;
      }
      x.coords[i] = i < torsion_.size() ? 0 : -box;
    }
    if (i == rank()) break;
  }
}

std::vector<GroupElement> FgAbelianGroup::enumerate(std::int64_t box) const {
  std::vector<GroupElement> out;
  for_each(box, [&](const GroupElement& x) { out.push_back(x); });
  return out;
}

std::string FgAbelianGroup::descriptor() const {
  std::string out;
  for (auto d : torsion_) {
    if (!out.empty()) out += "+";
    out += "C" + std::to_string(d);
  }
  if (free_rank_ > 0 || out.empty()) {
    if (!out.empty()) out += "+";
    out += "Z^" + std::to_string(free_rank_);
  }
  return out;
}

std::string FgAbelianGroup::format(const GroupElement& x) const {
  check(x);
  const bool single_torsion = torsion_.size() == 1;
  const bool single_free = free_rank_ == 1;
  std::string out;
  for (std::size_t i = 0; i < rank(); ++i) {
    std::int64_t e = x.coords[i];
    if (e == 0) continue;
    std::string name;
    if (i < torsion_.size()) {
      name = single_torsion ? "g" : "g" + std::to_string(i + 1);
    } else {
      std::size_t j = i - torsion_.size();
      name = single_free ? "t" : "t" + std::to_string(j + 1);
    }
    if (!out.empty()) out += "*";
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

GroupMap::GroupMap(std::size_t source_rank, GroupPtr target,
                   std::vector<std::vector<std::int64_t>> columns)
    : source_rank_(source_rank), target_(std::move(target)), columns_(std::move(columns)) {}

GroupElement GroupMap::apply(const std::vector<std::int64_t>& src) const {
  if (src.size() != source_rank_) fail(ErrorKind::GroupMismatch, "source element has wrong rank");
  std::vector<std::int64_t> acc(target_->rank(), 0);
  const auto& tors = target_->invariant_factors();
  for (std::size_t j = 0; j < source_rank_; ++j) {
    if (src[j] == 0) continue;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      __int128 term = static_cast<__int128>(columns_[j][i]) * src[j];
      if (i < tors.size()) {
        term %= tors[i];
        acc[i] = static_cast<std::int64_t>((acc[i] + term) % tors[i]);
      } else {
        acc[i] = checked_add(acc[i], static_cast<std::int64_t>(term));
      }
    }
  }
  return target_->make(std::move(acc));
}

GroupElement GroupMap::apply(const GroupElement& x) const {
  return apply(std::vector<std::int64_t>(x.coords.begin(), x.coords.end()));
}

GroupMap canonicalize_cyclic_sum(const std::vector<std::int64_t>& orders) {
  const std::size_t n = orders.size();
  for (auto o : orders) {
    if (o < 0) fail(ErrorKind::ValidationError, "cyclic orders must be non-negative");
  }
  using Row = std::vector<__int128>;
  std::vector<Row> a(n, Row(n, 0)), u(n, Row(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = orders[i];
    u[i][i] = 1;
  }
  auto row_axpy = [&](std::size_t dst, std::size_t src, __int128 q) {
    for (std::size_t j = 0; j < n; ++j) {
      a[dst][j] -= q * a[src][j];
      u[dst][j] -= q * u[src][j];
    }
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, __int128 q) {
    for (std::size_t i = 0; i < n; ++i) a[i][dst] -= q * a[i][src];
  };
  auto abs128 = [](__int128 v) { return v < 0 ? -v : v; };

  std::size_t t = 0;
  for (; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t bi = n, bj = n;
      for (std::size_t i = t; i < n; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a[i][j] != 0 && (bi == n || abs128(a[i][j]) < abs128(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == n) break;
      std::swap(a[t], a[bi]);
      std::swap(u[t], u[bi]);
      for (std::size_t i = 0; i < n; ++i) std::swap(a[i][t], a[i][bj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        row_axpy(i, t, a[i][t] / a[t][t]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        col_axpy(j, t, a[t][j] / a[t][t]);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce the divisibility chain.
      std::size_t offender = n;
      for (std::size_t i = t + 1; i < n && offender == n; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            offender = i;
            break;
          }
        }
      }
      if (offender == n) break;
      row_axpy(t, offender, -1);
    }
    if (a[t][t] == 0) break;
    if (a[t][t] < 0) {
      for (std::size_t j = 0; j < n; ++j) {
        a[t][j] = -a[t][j];
        u[t][j] = -u[t][j];
      }
    }
  }

  std::vector<std::int64_t> torsion;
  std::vector<std::size_t> torsion_rows, free_rows;
  for (std::size_t i = 0; i < n; ++i) {
    __int128 s = i < t ? a[i][i] : 0;
    if (s == 1) continue;
    if (s == 0) {
      free_rows.push_back(i);
    } else {
      torsion.push_back(static_cast<std::int64_t>(s));
      torsion_rows.push_back(i);
    }
  }
  auto target = std::make_shared<const FgAbelianGroup>(torsion, static_cast<int>(free_rows.size()));
  std::vector<std::vector<std::int64_t>> columns(n, std::vector<std::int64_t>(target->rank(), 0));
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t k = 0;
    for (std::size_t idx = 0; idx < torsion_rows.size(); ++idx, ++k) {
      __int128 v = u[torsion_rows[idx]][j] % torsion[idx];
      if (v < 0) v += torsion[idx];
      columns[j][k] = static_cast<std::int64_t>(v);
    }
    for (std::size_t row : free_rows) columns[j][k++] = static_cast<std::int64_t>(u[row][j]);
  }
  return GroupMap(n, std::move(target), std::move(columns));
}

GroupMap quotient_map(const FgAbelianGroup& m, std::uint64_t p, int s) {
  if (s < 1) fail(ErrorKind::ValidationError, "quotient exponent must be positive");
  std::int64_t ps = 1;
  for (int i = 0; i < s; ++i) ps = checked_mul(ps, static_cast<std::int64_t>(p));
  std::vector<std::int64_t> orders;
  for (auto d : m.invariant_factors()) orders.push_back(std::gcd(d, ps));
  for (int i = 0; i < m.free_rank(); ++i) orders.push_back(ps);
  return canonicalize_cyclic_sum(orders);
}

}  // namespace deltaring
