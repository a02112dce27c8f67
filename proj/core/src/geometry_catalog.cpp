#include "cy3/geometry_catalog.hpp"

#include <cctype>
#include <map>
#include <mutex>

namespace cy3 {

namespace {

std::vector<Rational> to_rationals(const std::vector<int>& v) {
  return std::vector<Rational>(v.begin(), v.end());
}

std::vector<int> matvec(const std::vector<std::vector<int>>& m, const std::vector<int>& v) {
  std::vector<int> out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

// Ampleness on the base: strictly positive against every cone generator.
std::vector<LinearForm> base_ample_forms(const BaseSurface& b) {
  std::vector<LinearForm> forms;
  for (const auto& g : b.effective_generators) {
    forms.push_back({to_rationals(matvec(b.form, g)), "rho." + format_class(to_rationals(g), b.basis) + " > 0"});
  }
  return forms;
}

void enumerate_multiplicities(int k, int d, int index, int remaining_sum, int remaining_sq, std::vector<int>& m,
                              std::vector<std::vector<int>>& out) {
  if (index == k) {
    if (remaining_sum == 0 && remaining_sq == 0) {
      std::vector<int> curve{d};
      for (int mi : m) curve.push_back(-mi);
      out.push_back(std::move(curve));
    }
    return;
  }
  for (int mi = 0; mi * mi <= remaining_sq && mi <= remaining_sum; ++mi) {
    m[index] = mi;
    enumerate_multiplicities(k, d, index + 1, remaining_sum - mi, remaining_sq - mi * mi, m, out);
  }
}

}  // namespace

int BaseSurface::dot(const std::vector<int>& a, const std::vector<int>& b) const {
  int sum = 0;
  for (std::size_t i = 0; i < form.size(); ++i) {
    for (std::size_t j = 0; j < form.size(); ++j) sum += a[i] * form[i][j] * b[j];
  }
  return sum;
}

BaseSurface hirzebruch(int n) {
  if (n < 0 || n > 2) throw InputError("Hirzebruch surface F_" + std::to_string(n) + " is not an admitted base");
  BaseSurface b;
  b.kind = BaseSurface::Kind::hirzebruch;
  b.index = n;
  b.name = "F" + std::to_string(n);
  b.basis = {"s", "f"};
  b.form = {{-n, 1}, {1, 0}};
  b.c1 = {2, n + 2};
  b.c2 = 4;
  b.effective_generators = {{1, 0}, {0, 1}};
  b.ample_inequalities = base_ample_forms(b);
  return b;
}

std::vector<std::vector<int>> exceptional_curves(int k) {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < k; ++i) {
    std::vector<int> e(k + 1, 0);
    e[i + 1] = 1;
    out.push_back(std::move(e));
  }
  // d h - sum m_i e_i with d^2 - sum m_i^2 = -1 and 3d - sum m_i = 1; d <= 6 for k <= 8.
  std::vector<int> m(k, 0);
  for (int d = 1; d <= 6; ++d) {
    const int sum = 3 * d - 1;
    const int sq = d * d + 1;
    std::vector<std::vector<int>> found;
    enumerate_multiplicities(k, d, 0, sum, sq, m, found);
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

BaseSurface del_pezzo(int k) {
  if (k < 1 || k > 8) throw InputError("del Pezzo surface dP_" + std::to_string(k) + " is not an admitted base");
  BaseSurface b;
  b.kind = BaseSurface::Kind::del_pezzo;
  b.index = k;
  b.name = "dP" + std::to_string(k);
  b.basis = {"h"};
  for (int i = 1; i <= k; ++i) b.basis.push_back("e" + std::to_string(i));
  b.form.assign(k + 1, std::vector<int>(k + 1, 0));
  b.form[0][0] = 1;
  for (int i = 1; i <= k; ++i) b.form[i][i] = -1;
  b.c1.assign(k + 1, -1);
  b.c1[0] = 3;
  b.c2 = 3 + k;
  if (k == 1) {
    b.effective_generators = {{0, 1}, {1, -1}};
  } else {
    b.effective_generators = exceptional_curves(k);
  }
  b.ample_inequalities = base_ample_forms(b);
  return b;
}

Geometry build_octic_k3() {
  auto def = GeometryDefinition::zeros(2);
  def.name = "octic-k3";
  def.divisor_basis = {"E", "L"};
  def.curve_basis = {"h", "l"};
  constexpr std::size_t E = 0, L = 1;
  // E^3 = -16, E^2 L = 4, E L^2 = 0, L^3 = 0.
  const int d[2][2][2] = {{{-16, 4}, {4, 0}}, {{4, 0}, {0, 0}}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) def.triple_at(i, j, k) = d[i][j][k];
  // E.E = 4l - 8h, E.L = 4h, L.L = 0 (from H.E = 4l, H.L = 4h, H = E + 2L).
  def.curve_at(E, E) = {-8, 4};
  def.curve_at(E, L) = {4, 0};
  def.curve_at(L, E) = {4, 0};
  def.curve_at(L, L) = {0, 0};
  def.pairing = {{1, -2}, {0, 1}};
  def.c2X = {56, 24};
  def.c3X = -168;
  // H = sE + tL: s > 0, t > 0, t - 2s > 0.
  def.ample = {{{1, 0}, "s > 0"}, {{0, 1}, "t > 0"}, {{-2, 1}, "t - 2s > 0"}};
  def.effective_curves = {{1, 0}, {0, 1}};
  return Geometry(std::move(def));
}

Geometry build_elliptic(const BaseSurface& base) {
  const std::size_t nb = base.basis.size();
  const bool admitted = (base.kind == BaseSurface::Kind::hirzebruch && base.index >= 0 && base.index <= 2 && nb == 2) ||
                        (base.kind == BaseSurface::Kind::del_pezzo && base.index >= 1 && base.index <= 8 &&
                         nb == static_cast<std::size_t>(base.index) + 1);
  if (!admitted || base.form.size() != nb || base.c1.size() != nb) {
    throw InputError("unsupported base surface '" + base.name + "'");
  }
  const std::size_t rho = nb + 1;
  auto def = GeometryDefinition::zeros(rho);
  def.name = "elliptic-" + base.name;
  for (auto& ch : def.name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  def.divisor_basis = {"sigma"};
  def.curve_basis = {"fiber"};
  for (const auto& b : base.basis) {
    def.divisor_basis.push_back("pi*" + b);
    def.curve_basis.push_back("sigma.pi*" + b);
  }

  const std::vector<int> qc1 = matvec(base.form, base.c1);  // (c1 . b_j)_j
  const int c1sq = base.c1_squared();

  // Triple intersections: sigma^3 = c1^2, sigma^2 pi*a = -c1.a,
  // sigma pi*a pi*b = a.b, pi*a pi*b pi*c = 0.
  for (std::size_t i = 0; i < rho; ++i) {
    for (std::size_t j = 0; j < rho; ++j) {
      for (std::size_t k = 0; k < rho; ++k) {
        const int sigmas = (i == 0) + (j == 0) + (k == 0);
        int v = 0;
        if (sigmas == 3) {
          v = c1sq;
        } else if (sigmas == 2) {
          const std::size_t other = i != 0 ? i : (j != 0 ? j : k);
          v = -qc1[other - 1];
        } else if (sigmas == 1) {
          std::size_t a = 0, b = 0;
          bool first = true;
          for (std::size_t x : {i, j, k}) {
            if (x == 0) continue;
            (first ? a : b) = x;
            first = false;
          }
          v = base.form[a - 1][b - 1];
        }
        def.triple_at(i, j, k) = v;
      }
    }
  }

  // Divisor products as curves: sigma^2 = -sigma.pi*c1, sigma.pi*b = (sigma.pi*b),
  // pi*a.pi*b = (a.b) fiber.
  for (std::size_t i = 0; i < rho; ++i) {
    for (std::size_t j = 0; j < rho; ++j) {
      std::vector<Rational> c(rho, Rational(0));
      if (i == 0 && j == 0) {
        for (std::size_t m = 0; m < nb; ++m) c[m + 1] = -base.c1[m];
      } else if (i == 0 || j == 0) {
        c[i == 0 ? j : i] = 1;
      } else {
        c[0] = base.form[i - 1][j - 1];
      }
      def.curve_at(i, j) = std::move(c);
    }
  }

  // sigma.fiber = 1, pi*a.fiber = 0, sigma.(sigma.pi*b) = -c1.b, pi*a.(sigma.pi*b) = a.b.
  def.pairing.assign(rho, std::vector<Rational>(rho, Rational(0)));
  def.pairing[0][0] = 1;
  for (std::size_t b = 1; b < rho; ++b) def.pairing[0][b] = -qc1[b - 1];
  for (std::size_t a = 1; a < rho; ++a) {
    for (std::size_t b = 1; b < rho; ++b) def.pairing[a][b] = base.form[a - 1][b - 1];
  }

  // c2(X) = (c2 + 11 c1^2) fiber + 12 sigma.pi*c1; c3(X) = -60 c1^2.
  def.c2X.assign(rho, Rational(0));
  def.c2X[0] = base.c2 + 11 * c1sq;
  for (std::size_t m = 0; m < nb; ++m) def.c2X[m + 1] = 12 * base.c1[m];
  def.c3X = -60 * c1sq;

  // Effective curves: fiber and sigma.pi*g for each base generator g.
  def.effective_curves.push_back([&] {
    std::vector<Rational> f(rho, Rational(0));
    f[0] = 1;
    return f;
  }());
  for (const auto& g : base.effective_generators) {
    std::vector<Rational> c(rho, Rational(0));
    for (std::size_t m = 0; m < nb; ++m) c[m + 1] = g[m];
    def.effective_curves.push_back(std::move(c));
  }

  // H = z sigma + pi*rho is ample iff z > 0 and rho - z c1 is ample on the
  // base, i.e. H is strictly positive on every effective generator above.
  for (const auto& curve : def.effective_curves) {
    LinearForm form;
    form.coeffs.assign(rho, Rational(0));
    for (std::size_t i = 0; i < rho; ++i) {
      for (std::size_t a = 0; a < rho; ++a) form.coeffs[i] += def.pairing[i][a] * curve[a];
    }
    form.label = "H.(" + format_class(curve, def.curve_basis) + ") > 0";
    def.ample.push_back(std::move(form));
  }
  return Geometry(std::move(def));
}

std::vector<std::string> builtin_geometry_names() {
  std::vector<std::string> names{"octic-k3", "elliptic-f0", "elliptic-f1", "elliptic-f2"};
  for (int k = 1; k <= 8; ++k) names.push_back("elliptic-dp" + std::to_string(k));
  return names;
}

Geometry builtin_geometry(std::string_view name) {
  // Built-ins are immutable; cache so repeated lookups share one identity.
  static std::mutex mutex;
  static std::map<std::string, Geometry, std::less<>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(name); it != cache.end()) return it->second;

  auto build = [&]() -> Geometry {
    if (name == "octic-k3") return build_octic_k3();
    for (int n = 0; n <= 2; ++n) {
      if (name == "elliptic-f" + std::to_string(n)) return build_elliptic(hirzebruch(n));
    }
    for (int k = 1; k <= 8; ++k) {
      if (name == "elliptic-dp" + std::to_string(k)) return build_elliptic(del_pezzo(k));
    }
    throw InputError("unknown geometry '" + std::string(name) + "'");
  };
  Geometry g = build();
  cache.emplace(std::string(name), g);
  return g;
}

}  // namespace cy3
