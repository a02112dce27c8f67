#pragma once

// Search for divisor classes D certifying stable extensions: for an ample H
// the extension of E2(-r1' D) by E1(r2' D) is (H + eps D)-stable for small
// eps > 0 when D.H^2 = 0, D.H is numerically nontrivial (hence D^2.H < 0 by
// the Hodge index theorem) and chi_D(E2, E1) < 0.

#include <optional>
#include <string>
#include <vector>

#include "cy3/chern_calculus.hpp"
#include "cy3/intersection_model.hpp"

namespace cy3 {

enum class RankCase { r2, r4, custom };

/// The ordered pair (E1, E2) an extension is built from.
struct BundlePair {
  BundleData e1;
  BundleData e2;
};

/// O/O for r2, TX/O for r4. custom requires explicit bundles.
BundlePair bundle_pair(const Geometry& g, RankCase rank_case);

struct SearchConfig {
  int coord_bound = 3;
  int multiple_range = 10;
  RankCase rank_case = RankCase::r2;
  /// Used when rank_case == custom.
  std::optional<BundlePair> bundles;
  bool perturbation_enabled = false;
  std::vector<Rational> perturbation_deltas = default_deltas();
  bool include_failures = false;
  /// 0: CY3_THREADS or hardware concurrency.
  unsigned threads = 0;

  static std::vector<Rational> default_deltas();
};

struct CertificateChecks {
  bool orthogonal = false;
  bool nontrivial = false;
  bool negative = false;
  bool nonsplit = false;

  bool all() const { return orthogonal && nontrivial && negative && nonsplit; }
  bool operator==(const CertificateChecks&) const = default;
};

struct StabilityCertificate {
  DivisorClass divisor;
  DivisorClass polarization;
  /// Primitive class and multiple with divisor == multiple * primitive.
  DivisorClass primitive;
  int multiple = 1;
  /// True when the polarization came from the H + delta D fallback.
  bool perturbed = false;
  CertificateChecks checks;
  Rational orthogonality;         // D.H^2
  std::vector<Rational> dh_row;   // (B_i.D.H)_i
  Rational negativity;            // D^2.H
  Rational chi;

  bool valid() const { return checks.all(); }
  bool operator==(const StabilityCertificate&) const = default;
};

/// D.H^2.
Rational check_orthogonal(const Geometry& g, const DivisorClass& d, const DivisorClass& h);

/// The curve class D.H pairs nontrivially with some basis divisor.
bool check_numerically_nontrivial(const Geometry& g, const DivisorClass& d, const DivisorClass& h);

/// D^2.H. When D.H^2 = 0 and D.H is numerically nontrivial a nonnegative
/// value contradicts the Hodge index theorem and raises DataError.
Rational check_negativity(const Geometry& g, const DivisorClass& d, const DivisorClass& h);

/// Evaluates all four conditions for one candidate.
StabilityCertificate evaluate_candidate(const Geometry& g, const DivisorClass& d, const DivisorClass& h,
                                        const BundlePair& bundles);

/// Every primitive integral D with |coords| <= bound, D.H^2 = 0 and D.H
/// numerically nontrivial, in lexicographic order; both signs are kept.
/// Throws StructuralError for Picard rank 1.
std::vector<DivisorClass> solve_orthogonal(const Geometry& g, const DivisorClass& h, int bound, unsigned threads = 0);

struct MultipleHit {
  int multiple;
  Rational chi;
};

/// Smallest |m| in [-M, M] \ {0} with chi_{mD}(E2, E1) < 0, positive m first.
std::optional<MultipleHit> scan_multiples(const Geometry& g, const BundleData& e1, const BundleData& e2,
                                          const DivisorClass& d, int max_multiple);

struct Perturbation {
  DivisorClass polarization;
  DivisorClass divisor;
  Rational delta;
};

/// Fallback for D^3 = 0: walks the configured deltas, and for the first
/// H' = H + delta D that stays ample returns a D' with D'.H'^2 = 0, D'.H'
/// nontrivial and D'^3 != 0.
std::optional<Perturbation> perturb_polarization(const Geometry& g, const DivisorClass& h, const DivisorClass& d,
                                                 const SearchConfig& config);

/// Runs the full search. Throws InputError if h is not ample.
std::vector<StabilityCertificate> search(const Geometry& g, const DivisorClass& h, const SearchConfig& config);

/// CY3_THREADS if set and positive, else hardware concurrency (at least 1).
unsigned default_thread_count();

}  // namespace cy3
