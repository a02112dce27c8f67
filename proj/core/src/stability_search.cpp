#include "cy3/stability_search.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <map>
#include <numeric>
#include <thread>

namespace cy3 {

namespace {

using Lattice = std::vector<std::int64_t>;
__extension__ using Wide = __int128;

std::int64_t to_int64(const Integer& z) {
  // Keep headroom so the box sums below cannot overflow.
  if (!z.fits_slong_p() || abs(z) > (Integer(1) << 40)) {
    throw InputError("polarization too large for lattice enumeration");
  }
  return z.get_si();
}

std::int64_t gcd_of(const Lattice& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

struct OrthogonalForm {
  Lattice weights;           // integer multiple of (B_i.H^2)_i
  std::vector<std::vector<Rational>> dh;  // dh[i][j] = B_i.B_j.H
};

OrthogonalForm orthogonal_form(const Geometry& g, const DivisorClass& h) {
  const std::size_t rho = g.picard_rank();
  std::vector<Rational> w(rho);
  OrthogonalForm form;
  form.dh.assign(rho, std::vector<Rational>(rho));
  for (std::size_t i = 0; i < rho; ++i) {
    const DivisorClass bi = g.basis_divisor(i);
    w[i] = g.triple_product(bi, h, h);
    for (std::size_t j = 0; j < rho; ++j) form.dh[i][j] = g.triple_product(bi, g.basis_divisor(j), h);
  }
  const Integer den = common_denominator(w);
  for (auto& x : w) x *= den;
  for (const auto& x : w) form.weights.push_back(to_int64(x.get_num()));
  if (const auto c = gcd_of(form.weights); c > 1) {
    for (auto& x : form.weights) x /= c;
  }
  return form;
}

bool nontrivial_at(const OrthogonalForm& form, const Lattice& d) {
  for (const auto& row : form.dh) {
    Rational s = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (d[j] != 0) s += row[j] * Rational(static_cast<long>(d[j]));
    }
    if (s != 0) return true;
  }
  return false;
}

// Enumerates the free coordinates of one slab of the box (first free
// coordinate fixed to values congruent to worker mod workers) and solves the
// linear equation for the pivot coordinate.
void enumerate_slab(const OrthogonalForm& form, int bound, std::size_t pivot, unsigned worker, unsigned workers,
                    std::vector<Lattice>& out) {
  const std::size_t rho = form.weights.size();
  const bool has_pivot = pivot < rho;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < rho; ++i) {
    if (i != pivot) free.push_back(i);
  }
  const std::int64_t wp = has_pivot ? form.weights[pivot] : 0;
  const std::int64_t span = 2 * static_cast<std::int64_t>(bound) + 1;

  Lattice d(rho, 0);
  for (std::int64_t first = 0; first < span; ++first) {
    if (static_cast<unsigned>(first % workers) != worker) continue;
    // odometer over free[1..]
    std::vector<std::int64_t> digits(free.size(), 0);
    digits[0] = first;
    while (true) {
      Wide sum = 0;
      for (std::size_t n = 0; n < free.size(); ++n) {
        d[free[n]] = digits[n] - bound;
        sum += static_cast<Wide>(form.weights[free[n]]) * d[free[n]];
      }
      bool hit = false;
      if (!has_pivot) {
        hit = true;
      } else if (sum % wp == 0) {
        const Wide value = -sum / wp;
        if (value >= -bound && value <= bound) {
          d[pivot] = static_cast<std::int64_t>(value);
          hit = true;
        }
      }
      if (hit && gcd_of(d) == 1 && nontrivial_at(form, d)) out.push_back(d);

      std::size_t n = 1;
      while (n < free.size()) {
        if (++digits[n] < span) break;
        digits[n] = 0;
        ++n;
      }
      if (n >= free.size()) break;
    }
  }
}

std::vector<Rational> to_rationals(const Lattice& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

bool within_box(const DivisorClass& d, int bound) {
  for (const auto& c : d.coords()) {
    if (abs(c) > bound) return false;
  }
  return true;
}

}  // namespace

std::vector<Rational> SearchConfig::default_deltas() {
  return {make_rational(1, 2), make_rational(1, 4), make_rational(1, 8), make_rational(1, 16), make_rational(1, 32)};
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("CY3_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BundlePair bundle_pair(const Geometry& g, RankCase rank_case) {
  switch (rank_case) {
    case RankCase::r2:
      return {trivial_line(g), trivial_line(g)};
    case RankCase::r4:
      return {tangent(g), trivial_line(g)};
    case RankCase::custom:
      break;
  }
  throw InputError("custom rank case needs explicit bundles");
}

Rational check_orthogonal(const Geometry& g, const DivisorClass& d, const DivisorClass& h) {
  return g.triple_product(d, h, h);
}

bool check_numerically_nontrivial(const Geometry& g, const DivisorClass& d, const DivisorClass& h) {
  const CurveClass dh = g.product_curve(d, h);
  for (std::size_t i = 0; i < g.picard_rank(); ++i) {
    if (g.pair(g.basis_divisor(i), dh) != 0) return true;
  }
  return false;
}

Rational check_negativity(const Geometry& g, const DivisorClass& d, const DivisorClass& h) {
  Rational value = g.triple_product(d, d, h);
  if (value >= 0 && check_orthogonal(g, d, h) == 0 && check_numerically_nontrivial(g, d, h)) {
    throw DataError("Hodge index violation in geometry '" + g.name() + "': D = " + to_string(d.coords()) +
                    ", H = " + to_string(h.coords()) + " gives D.H^2 = 0 but D^2.H = " + to_string(value));
  }
  return value;
}

StabilityCertificate evaluate_candidate(const Geometry& g, const DivisorClass& d, const DivisorClass& h,
                                        const BundlePair& bundles) {
  DivisorClass primitive = d;
  int multiple = 1;
  if (d.is_integral() && !d.is_zero()) {
    const Integer c = content(d.coords());
    const Rational inverse = Rational(1) / Rational(c);
    primitive = inverse * d;
    multiple = static_cast<int>(c.get_si());
  }
  std::vector<Rational> row;
  const CurveClass dh = g.product_curve(d, h);
  for (std::size_t i = 0; i < g.picard_rank(); ++i) row.push_back(g.pair(g.basis_divisor(i), dh));

  const Rational orth = check_orthogonal(g, d, h);
  const bool nontrivial = std::any_of(row.begin(), row.end(), [](const Rational& x) { return x != 0; });
  const Rational neg = check_negativity(g, d, h);
  const Rational chi = euler_characteristic(g, ExtensionSpec(bundles.e1, bundles.e2, d));

  CertificateChecks checks;
  checks.orthogonal = orth == 0;
  checks.nontrivial = nontrivial;
  checks.negative = neg < 0;
  checks.nonsplit = chi < 0;
  return StabilityCertificate{d, h, std::move(primitive), multiple, false, checks, orth, std::move(row), neg, chi};
}

std::vector<DivisorClass> solve_orthogonal(const Geometry& g, const DivisorClass& h, int bound, unsigned threads) {
  if (g.picard_rank() < 2) {
    throw StructuralError("geometry '" + g.name() + "' has Picard rank 1; h^{1,1} > 1 required");
  }
  if (bound < 1) throw InputError("coordinate bound must be at least 1");
  const OrthogonalForm form = orthogonal_form(g, h);
  const std::size_t rho = g.picard_rank();

  std::size_t pivot = rho;
  std::int64_t best = 0;
  for (std::size_t i = 0; i < rho; ++i) {
    const auto w = form.weights[i] < 0 ? -form.weights[i] : form.weights[i];
    if (w > best) {
      best = w;
      pivot = i;
    }
  }

  const unsigned workers = std::max(1u, std::min<unsigned>(threads == 0 ? default_thread_count() : threads,
                                                            static_cast<unsigned>(2 * bound + 1)));
  std::vector<std::vector<Lattice>> parts(workers);
  if (workers == 1) {
    enumerate_slab(form, bound, pivot, 0, 1, parts[0]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] { enumerate_slab(form, bound, pivot, w, workers, parts[w]); });
    }
  }
  std::vector<Lattice> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());

  std::vector<DivisorClass> out;
  out.reserve(all.size());
  for (const auto& d : all) out.push_back(g.divisor(to_rationals(d)));
  return out;
}

std::optional<MultipleHit> scan_multiples(const Geometry& g, const BundleData& e1, const BundleData& e2,
                                          const DivisorClass& d, int max_multiple) {
  if (max_multiple < 1) throw InputError("multiple range must be at least 1");
  if (d.is_zero()) return std::nullopt;
  const ExtensionSpec base(e1, e2, d);
  for (int k = 1; k <= max_multiple; ++k) {
    for (int m : {k, -k}) {
      Rational chi = euler_characteristic(g, base.with_divisor(Rational(m) * d));
      if (chi < 0) return MultipleHit{m, std::move(chi)};
    }
  }
  return std::nullopt;
}

std::optional<Perturbation> perturb_polarization(const Geometry& g, const DivisorClass& h, const DivisorClass& d,
                                                 const SearchConfig& config) {
  if (!config.perturbation_enabled) return std::nullopt;
  for (const auto& delta : config.perturbation_deltas) {
    DivisorClass shifted = h + delta * d;
    if (!g.is_ample(shifted)) continue;
    for (auto& candidate : solve_orthogonal(g, shifted, config.coord_bound, config.threads)) {
      if (g.triple_product(candidate, candidate, candidate) != 0) {
        return Perturbation{std::move(shifted), std::move(candidate), delta};
      }
    }
  }
  return std::nullopt;
}

std::vector<StabilityCertificate> search(const Geometry& g, const DivisorClass& h, const SearchConfig& config) {
  if (auto bad = g.violated_ample_inequality(h)) {
    throw InputError("H = " + to_string(h.coords()) + " is not ample: violates " +
                     (bad->label.empty() ? to_string(bad->coeffs) : bad->label));
  }
  if (!g.is_ample(h)) throw InputError("geometry '" + g.name() + "' has no configured ample cone");
  if (config.coord_bound < 1) throw InputError("coordinate bound must be at least 1");
  if (config.multiple_range < 1) throw InputError("multiple range must be at least 1");
  const BundlePair bundles = config.rank_case == RankCase::custom
                                 ? (config.bundles ? *config.bundles : bundle_pair(g, RankCase::custom))
                                 : bundle_pair(g, config.rank_case);

  using Key = std::pair<std::vector<Rational>, std::vector<Rational>>;
  std::map<Key, StabilityCertificate> found;
  auto record = [&](StabilityCertificate cert) {
    Key key{cert.divisor.coords(), cert.polarization.coords()};
    found.emplace(std::move(key), std::move(cert));
  };

  const auto primitives = solve_orthogonal(g, h, config.coord_bound, config.threads);
  for (const auto& p : primitives) {
    for (int m = 1; m <= config.multiple_range; ++m) {
      const DivisorClass d = Rational(m) * p;
      if (!within_box(d, config.coord_bound)) break;
      record(evaluate_candidate(g, d, h, bundles));
    }
  }

  if (config.perturbation_enabled) {
    for (const auto& p : primitives) {
      if (g.triple_product(p, p, p) != 0) continue;
      if (scan_multiples(g, bundles.e1, bundles.e2, p, config.multiple_range)) continue;
      auto shifted = perturb_polarization(g, h, p, config);
      if (!shifted) continue;
      DivisorClass d = shifted->divisor;
      if (auto hit = scan_multiples(g, bundles.e1, bundles.e2, d, config.multiple_range)) {
        d = Rational(hit->multiple) * d;
      }
      auto cert = evaluate_candidate(g, d, shifted->polarization, bundles);
      cert.perturbed = true;
      record(std::move(cert));
    }
  }

  std::vector<StabilityCertificate> out;
  for (auto& [key, cert] : found) {
    if (config.include_failures || cert.valid()) out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace cy3
