#pragma once

#include <vector>

#include "cy3/cone.hpp"
#include "cy3/stability_search.hpp"

namespace cy3 {

struct AnomalyVerdict {
  CurveClass W;
  bool effective = false;
  /// Witness over the geometry's effective generators when effective.
  std::optional<ConeDecomposition> decomposition;

  bool operator==(const AnomalyVerdict&) const = default;
};

/// [W] = c2(X) - c2(E).
CurveClass anomaly_class(const Geometry& g, const BundleData& e);

/// Membership of W in the cone spanned by the configured effective curves.
/// W = 0 is effective.
AnomalyVerdict is_effective(const Geometry& g, const CurveClass& w);

struct AnomalyEntry {
  StabilityCertificate certificate;
  BundleData bundle;
  AnomalyVerdict verdict;
};

/// Builds E for every certificate and checks its anomaly class. Effective
/// solutions come first; the input order is kept within each group.
std::vector<AnomalyEntry> anomaly_scan(const Geometry& g, const std::vector<StabilityCertificate>& certificates,
                                       const BundlePair& bundles);

}  // namespace cy3
