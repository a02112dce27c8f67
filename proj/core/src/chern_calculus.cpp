#include "cy3/chern_calculus.hpp"

#include <numeric>

namespace cy3 {

BundleData trivial_line(const Geometry& g) { return {1, g.zero_curve(), Rational(0), "O_X"}; }

BundleData tangent(const Geometry& g) { return {3, g.c2X(), g.c3X(), "TX"}; }

ExtensionSpec::ExtensionSpec(BundleData e1, BundleData e2, DivisorClass d)
    : e1_(std::move(e1)), e2_(std::move(e2)), d_(std::move(d)) {
  if (e1_.rank < 1 || e2_.rank < 1) throw InputError("bundle ranks must be positive");
  if (e1_.c2.geometry_id() != d_.geometry_id() || e2_.c2.geometry_id() != d_.geometry_id()) {
    throw InputError("extension data belongs to different geometries");
  }
  const int g = std::gcd(e1_.rank, e2_.rank);
  r1p_ = e1_.rank / g;
  r2p_ = e2_.rank / g;
}

ExtensionSpec ExtensionSpec::with_divisor(DivisorClass d) const { return ExtensionSpec(e1_, e2_, std::move(d)); }

BundleData extension_chern(const Geometry& g, const ExtensionSpec& spec) {
  const int r1 = spec.r1(), r2 = spec.r2();
  const int r1p = spec.r1_reduced(), r2p = spec.r2_reduced();
  const DivisorClass& d = spec.divisor();
  const CurveClass d2 = g.product_curve(d, d);
  const Rational d3 = g.pair(d, d2);

  const Rational c2_coeff = -make_rational(r1 * r2p * r2p + r2 * r1p * r1p, 2);
  CurveClass c2 = c2_coeff * d2 + spec.e1().c2 + spec.e2().c2;

  const Rational c3_coeff = make_rational(r1 * r2p * r2p * r2p - r2 * r1p * r1p * r1p, 3);
  const CurveClass mixed = Rational(r1p) * spec.e2().c2 - Rational(r2p) * spec.e1().c2;
  Rational c3 = c3_coeff * d3 + 2 * g.pair(d, mixed) + spec.e1().c3 + spec.e2().c3;
  return {r1 + r2, std::move(c2), std::move(c3), "ext(" + spec.e2().label + ", " + spec.e1().label + ")"};
}

Rational euler_characteristic(const Geometry& g, const ExtensionSpec& spec) {
  const int r1 = spec.r1(), r2 = spec.r2();
  const int rp = spec.reduced_sum();
  const DivisorClass& d = spec.divisor();
  const Rational d3 = g.triple_product(d, d, d);

  const CurveClass bracket = make_rational(r1 * r2, 12) * g.c2X() - Rational(r2) * spec.e1().c2 - Rational(r1) * spec.e2().c2;
  Rational chi = make_rational(r1 * r2 * rp * rp * rp, 6) * d3 + rp * g.pair(d, bracket) +
                 make_rational(r2, 2) * spec.e1().c3 - make_rational(r1, 2) * spec.e2().c3;

  const bool integral_inputs = d.is_integral() && all_integer(spec.e1().c2.coords()) &&
                               all_integer(spec.e2().c2.coords()) && is_integer(spec.e1().c3) &&
                               is_integer(spec.e2().c3);
  if (integral_inputs && !is_integer(chi)) {
    throw DataError("Euler characteristic " + to_string(chi) + " is not an integer for D = " + to_string(d.coords()) +
                    " in geometry '" + g.name() + "'; the Chern data is inconsistent");
  }
  return chi;
}

Rational nonsplit_r2_value(const Geometry& g, const DivisorClass& d) {
  return g.c2_dot(d) + 8 * g.triple_product(d, d, d);
}

bool nonsplit_r2(const Geometry& g, const DivisorClass& d) { return nonsplit_r2_value(g, d) < 0; }

Rational nonsplit_r4_value(const Geometry& g, const DivisorClass& d) {
  return -3 * g.c2_dot(d) + 32 * g.triple_product(d, d, d) + g.c3X() / 2;
}

bool nonsplit_r4(const Geometry& g, const DivisorClass& d) { return nonsplit_r4_value(g, d) < 0; }

bool nonsplit_general(const Geometry& g, const ExtensionSpec& spec) { return euler_characteristic(g, spec) < 0; }

}  // namespace cy3
