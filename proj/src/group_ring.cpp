#include "deltaring/group_ring.hpp"

#include <cctype>

namespace deltaring {

IntegerRing::Element IntegerRing::parse(const std::string& text) const {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  std::size_t end = text.size();
  while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string body = text.substr(start, end - start);
  std::size_t digits_from = (!body.empty() && (body[0] == '-' || body[0] == '+')) ? 1 : 0;
  if (digits_from == body.size()) fail(ErrorKind::ValidationError, "empty integer '" + text + "'");
  for (std::size_t i = digits_from; i < body.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(body[i]))) {
      fail(ErrorKind::ValidationError, "not an integer: '" + text + "'");
    }
  }
  BigInt v(body.substr(digits_from));
  return body[0] == '-' ? BigInt(-v) : v;
}

BigInt integer_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  // Bareiss: every intermediate division is exact.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

BigInt regular_rep_det(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& u) {
  const auto& group = ctx.group();
  auto order = group.order();
  if (!order) fail(ErrorKind::GroupNotFinite, "regular representation needs a finite group");
  const std::size_t n = static_cast<std::size_t>(*order);
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n, 0));
  // Column j holds u * [m_j].
  for (std::size_t j = 0; j < n; ++j) {
    GroupElement mj = group.element_at(j);
    for (const auto& [m, c] : u) a[group.index_of(group.add(m, mj))][j] += c;
  }
  return integer_determinant(std::move(a));
}

bool is_integral_unit(const IntegerGroupRing& ctx, const IntegerGroupRing::Element& u) {
  if (u.empty()) return false;
  const auto& group = ctx.group();
  const std::size_t t = group.invariant_factors().size();
  auto free_part = [&](const GroupElement& m) {
    return std::vector<std::int64_t>(m.coords.begin() + static_cast<std::ptrdiff_t>(t), m.coords.end());
  };
  const auto shift = free_part(u.begin()->first);
  auto torsion = std::make_shared<const FgAbelianGroup>(group.invariant_factors(), 0);
  IntegerGroupRing finite(ctx.coefficients(), torsion);
  IntegerGroupRing::Element v;
  for (const auto& [m, c] : u) {
    if (free_part(m) != shift) return false;
    std::vector<std::int64_t> coords(m.coords.begin(), m.coords.begin() + static_cast<std::ptrdiff_t>(t));
    v.emplace(torsion->make(std::move(coords)), c);
  }
  BigInt det = regular_rep_det(finite, v);
  return det == 1 || det == -1;
}

}  // namespace deltaring
