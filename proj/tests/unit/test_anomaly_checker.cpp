#include <gtest/gtest.h>

#include "cy3/anomaly_checker.hpp"
#include "cy3/geometry_catalog.hpp"
#include "oracles.hpp"

namespace cy3 {
namespace {

using oracle::ints;

std::vector<Rational> recombine(const Geometry& g, const ConeDecomposition& dec) {
  std::vector<Rational> out(g.picard_rank());
  for (const auto& [index, lambda] : dec) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += lambda * g.definition().effective_curves[index][i];
  }
  return out;
}

TEST(Anomaly, OcticRankTwoFamily) {
  const Geometry g = builtin_geometry("octic-k3");
  const auto O = trivial_line(g);
  for (long x = -3; x <= 3; ++x) {
    const auto d = g.divisor(ints({x, -x}));
    const auto w = anomaly_class(g, extension_chern(g, ExtensionSpec(O, O, d)));
    EXPECT_EQ(w.coords(), ints({56 - 16 * x * x, 24 + 4 * x * x})) << x;
    EXPECT_EQ(is_effective(g, w).effective, x * x <= 1) << x;
  }
}

TEST(Anomaly, OcticVerdicts) {
  const Geometry g = builtin_geometry("octic-k3");
  const auto yes = is_effective(g, g.curve(ints({40, 28})));
  EXPECT_TRUE(yes.effective);
  ASSERT_TRUE(yes.decomposition.has_value());
  EXPECT_EQ(recombine(g, *yes.decomposition), ints({40, 28}));
  EXPECT_FALSE(is_effective(g, g.curve(ints({-8, 40}))).effective);
  EXPECT_FALSE(is_effective(g, g.curve(ints({-96, 24}))).effective);
}

TEST(Anomaly, ZeroClassIsEffective) {
  const Geometry g = builtin_geometry("octic-k3");
  const BundleData e{2, g.c2X(), Rational(0), "E"};
  const auto w = anomaly_class(g, e);
  EXPECT_TRUE(w.is_zero());
  EXPECT_TRUE(is_effective(g, w).effective);
}

TEST(Anomaly, RankFourIsSixDSquared) {
  const Geometry g = builtin_geometry("octic-k3");
  const auto d = g.divisor(ints({1, -1}));
  const auto w = anomaly_class(g, extension_chern(g, ExtensionSpec(tangent(g), trivial_line(g), d)));
  EXPECT_EQ(w, Rational(6) * g.product_curve(d, d));
  EXPECT_EQ(w.coords(), ints({-96, 24}));
}

TEST(Anomaly, EllipticHandcraftedCandidate) {
  const BaseSurface base = hirzebruch(0);
  const Geometry g = builtin_geometry("elliptic-f0");
  // x = -1, alpha = c1 = 2s + 2f.
  const auto d = g.divisor(ints({-1, 2, 2}));
  const auto O = trivial_line(g);
  const auto w = anomaly_class(g, extension_chern(g, ExtensionSpec(O, O, d)));
  EXPECT_EQ(w.coords(), oracle::elliptic_r2_anomaly(base, Rational(-1), ints({2, 2})));
  EXPECT_EQ(w.coords(), ints({100, 18, 18}));
  const auto verdict = is_effective(g, w);
  EXPECT_TRUE(verdict.effective);
  EXPECT_EQ(recombine(g, *verdict.decomposition), w.coords());
}

TEST(Anomaly, ScanPutsEffectiveFirst) {
  const Geometry g = builtin_geometry("octic-k3");
  const auto h = g.divisor({Rational(1), make_rational(5, 2)});
  SearchConfig config;
  const auto bundles = bundle_pair(g, RankCase::r2);
  const auto certs = search(g, h, config);
  const auto scanned = anomaly_scan(g, certs, bundles);
  ASSERT_EQ(scanned.size(), certs.size());
  bool seen_ineffective = false;
  for (const auto& e : scanned) {
    if (!e.verdict.effective) seen_ineffective = true;
    EXPECT_FALSE(seen_ineffective && e.verdict.effective);
    EXPECT_EQ(e.verdict.W, anomaly_class(g, e.bundle));
  }
  EXPECT_TRUE(scanned.front().verdict.effective);
  EXPECT_EQ(scanned.front().verdict.W.coords(), ints({40, 28}));
}

TEST(Anomaly, RankFourNeverEffective) {
  for (const auto& name : builtin_geometry_names()) {
    const Geometry g = builtin_geometry(name);
    std::vector<Rational> hc{Rational(1)};
    if (name == "octic-k3") {
      hc.push_back(Rational(3));
    } else {
      // rho = 3 c1, nudged along the last base direction where c1 is only nef.
      for (std::size_t i = 1; i < g.picard_rank(); ++i) hc.push_back(g.c2X()[i] / 4);
      if (!g.is_ample(g.divisor(hc))) hc.back() += 1;
    }
    const auto h = g.divisor(hc);
    ASSERT_TRUE(g.is_ample(h)) << name;
    SearchConfig config;
    config.rank_case = RankCase::r4;
    config.coord_bound = g.picard_rank() <= 5 ? 2 : 1;
    for (const auto& e : anomaly_scan(g, search(g, h, config), bundle_pair(g, RankCase::r4))) {
      EXPECT_FALSE(e.verdict.effective) << name;
    }
  }
}

}  // namespace
}  // namespace cy3
