#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cy3/intersection_model.hpp"

namespace cy3 {

/// Rational base surface for an elliptic fibration, with integer data in
/// its own divisor basis.
struct BaseSurface {
  enum class Kind { hirzebruch, del_pezzo };

  Kind kind;
  int index;  // n for F_n, k for dP_k
  std::string name;
  std::vector<std::string> basis;
  std::vector<std::vector<int>> form;  // symmetric intersection form
  std::vector<int> c1;
  int c2;
  /// Generators of the curve cone used for ampleness and effectivity.
  std::vector<std::vector<int>> effective_generators;
  std::vector<LinearForm> ample_inequalities;

  int dot(const std::vector<int>& a, const std::vector<int>& b) const;
  int c1_squared() const { return dot(c1, c1); }
};

/// F_n, n in {0, 1, 2}: basis (s, f) with s^2 = -n, s.f = 1, f^2 = 0.
BaseSurface hirzebruch(int n);

/// dP_k, k in 1..8: basis (h, e1..ek). The curve cone is generated by the
/// (-1)-curves for k >= 2, and by e1, h - e1 for k = 1.
BaseSurface del_pezzo(int k);

/// The (-1)-curves d h - sum m_i e_i of dP_k, in (d, -m_1, ..., -m_k) coords.
std::vector<std::vector<int>> exceptional_curves(int k);

/// Blown-up degree-8 hypersurface in P(1,1,2,2,2): divisor basis (E, L),
/// curve basis (h, l).
Geometry build_octic_k3();

/// Elliptic fibration over base with section sigma. Divisor basis
/// (sigma, pi*b_1, ...), curve basis (fiber, sigma.pi*b_1, ...).
Geometry build_elliptic(const BaseSurface& base);

/// octic-k3, elliptic-f0..f2, elliptic-dp1..dp8.
std::vector<std::string> builtin_geometry_names();

/// Throws InputError for an unknown name.
Geometry builtin_geometry(std::string_view name);

}  // namespace cy3
