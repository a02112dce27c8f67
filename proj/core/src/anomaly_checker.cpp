#include "cy3/anomaly_checker.hpp"

#include <algorithm>

namespace cy3 {

CurveClass anomaly_class(const Geometry& g, const BundleData& e) { return g.c2X() - e.c2; }

AnomalyVerdict is_effective(const Geometry& g, const CurveClass& w) {
  if (w.geometry_id() != g.id()) throw InputError("curve class does not belong to geometry '" + g.name() + "'");
  auto decomposition = cone_decomposition(g.definition().effective_curves, w.coords());
  const bool effective = decomposition.has_value();
  return AnomalyVerdict{w, effective, std::move(decomposition)};
}

std::vector<AnomalyEntry> anomaly_scan(const Geometry& g, const std::vector<StabilityCertificate>& certificates,
                                       const BundlePair& bundles) {
  std::vector<AnomalyEntry> out;
  out.reserve(certificates.size());
  for (const auto& cert : certificates) {
    BundleData e = extension_chern(g, ExtensionSpec(bundles.e1, bundles.e2, cert.divisor));
    AnomalyVerdict verdict = is_effective(g, anomaly_class(g, e));
    out.push_back({cert, std::move(e), std::move(verdict)});
  }
  std::stable_partition(out.begin(), out.end(), [](const AnomalyEntry& a) { return a.verdict.effective; });
  return out;
}

}  // namespace cy3
