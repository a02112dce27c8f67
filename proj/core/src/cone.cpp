#include "cy3/cone.hpp"

#include <algorithm>

#include "cy3/errors.hpp"

namespace cy3 {

std::optional<ConeDecomposition> cone_decomposition(const std::vector<std::vector<Rational>>& generators,
                                                    const std::vector<Rational>& target) {
  const std::size_t m = target.size();
  const std::size_t n = generators.size();
  for (const auto& g : generators) {
    if (g.size() != m) throw InputError("cone generator has wrong dimension");
  }
  bool zero = true;
  for (const auto& t : target) zero = zero && t == 0;
  if (zero) return ConeDecomposition{};
  if (n == 0) return std::nullopt;

  // Columns: n structural, m artificial, 1 right-hand side.
  const std::size_t cols = n + m + 1;
  const std::size_t rhs = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int sign = target[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * generators[j][i];
    t[i][n + i] = 1;
    t[i][rhs] = sign * target[i];
    basis[i] = n + i;
  }
  // Reduced costs for minimizing the sum of artificials.
  std::vector<Rational> obj(cols, Rational(0));
  for (std::size_t j = 0; j < cols; ++j) {
    if (j >= n && j < rhs) continue;
    for (std::size_t i = 0; i < m; ++i) obj[j] -= t[i][j];
  }

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a pivot.
    if (leave == m) break;

    const Rational pivot = t[leave][enter];
    for (auto& x : t[leave]) x /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      const Rational f = obj[enter];
      for (std::size_t j = 0; j < cols; ++j) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  if (obj[rhs] != 0) return std::nullopt;

  ConeDecomposition out;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n && t[i][rhs] != 0) out.emplace_back(basis[i], t[i][rhs]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace cy3
