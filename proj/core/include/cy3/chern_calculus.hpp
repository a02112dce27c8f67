#pragma once

#include <string>

#include "cy3/intersection_model.hpp"

namespace cy3 {

/// Chern data of a bundle with c1 = 0.
struct BundleData {
  int rank = 1;
  CurveClass c2;
  Rational c3;
  std::string label;

  bool operator==(const BundleData&) const = default;
};

/// O_X: (1, 0, 0).
BundleData trivial_line(const Geometry& g);
/// TX: (3, c2(X), c3(X)).
BundleData tangent(const Geometry& g);

/// Extension 0 -> E1(r2' D) -> E -> E2(-r1' D) -> 0 with r_i' = r_i / gcd(r1, r2).
class ExtensionSpec {
 public:
  ExtensionSpec(BundleData e1, BundleData e2, DivisorClass d);

  const BundleData& e1() const { return e1_; }
  const BundleData& e2() const { return e2_; }
  const DivisorClass& divisor() const { return d_; }
  int r1() const { return e1_.rank; }
  int r2() const { return e2_.rank; }
  int r1_reduced() const { return r1p_; }
  int r2_reduced() const { return r2p_; }
  int reduced_sum() const { return r1p_ + r2p_; }
  int rank() const { return e1_.rank + e2_.rank; }

  /// Same bundles, different divisor.
  ExtensionSpec with_divisor(DivisorClass d) const;

 private:
  BundleData e1_;
  BundleData e2_;
  DivisorClass d_;
  int r1p_;
  int r2p_;
};

/// Rank, c2 and c3 of the extension bundle E.
BundleData extension_chern(const Geometry& g, const ExtensionSpec& spec);

/// chi_D(E2, E1) by Hirzebruch-Riemann-Roch. Throws DataError if the inputs
/// are integral (D, c2(E_i), c3(E_i)) but the result is not an integer.
Rational euler_characteristic(const Geometry& g, const ExtensionSpec& spec);

/// c2(X).D + 8 D^3 < 0: nonsplit criterion for O_X by O_X.
bool nonsplit_r2(const Geometry& g, const DivisorClass& d);
Rational nonsplit_r2_value(const Geometry& g, const DivisorClass& d);

/// -3 c2(X).D + 32 D^3 + c3(X)/2 < 0: nonsplit criterion for TX by O_X.
bool nonsplit_r4(const Geometry& g, const DivisorClass& d);
Rational nonsplit_r4_value(const Geometry& g, const DivisorClass& d);

/// chi_D < 0. chi = 0 is not a certificate.
bool nonsplit_general(const Geometry& g, const ExtensionSpec& spec);

}  // namespace cy3
