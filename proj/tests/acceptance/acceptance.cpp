// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Expected values come from the closed forms and brute-force
// enumerations in oracles.hpp, not from the library under test.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "commands.hpp"
#include "cy3/anomaly_checker.hpp"
#include "cy3/geometry_catalog.hpp"
#include "oracles.hpp"

namespace {

using namespace cy3;
using oracle::ints;
using oracle::Vec;
using nlohmann::json;

/// Collects mismatches; the first few are printed under the verdict line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  template <typename A, typename B>
  void equal(const A& actual, const B& expected, const std::string& what) {
    std::ostringstream os;
    if (!(actual == expected)) os << what << ": got " << show(actual) << ", expected " << show(expected);
    expect(actual == expected, os.str());
  }
  void note(std::string text) { notes_.push_back(std::move(text)); }

  bool ok() const { return failed_ == 0 && checks_ > 0; }
  std::size_t checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  static std::string show(const Rational& q) { return to_string(q); }
  static std::string show(const Vec& v) { return to_string(v); }
  static std::string show(long v) { return std::to_string(v); }
  static std::string show(int v) { return std::to_string(v); }
  static std::string show(std::size_t v) { return std::to_string(v); }
  static std::string show(bool v) { return v ? "true" : "false"; }
  static std::string show(const std::string& s) { return s; }
  static std::string show(const json& j) { return j.dump(); }

  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

Vec concat(const Rational& head, const Vec& tail) {
  Vec out{head};
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

BaseSurface base_of(const std::string& name) {
  for (int n = 0; n <= 2; ++n)
    if (name == "elliptic-f" + std::to_string(n)) return hirzebruch(n);
  return del_pezzo(std::stoi(name.substr(std::string("elliptic-dp").size())));
}

std::vector<std::string> elliptic_names() {
  auto names = builtin_geometry_names();
  names.erase(names.begin());
  return names;
}

/// Random ample H for any built-in geometry.
Vec random_ample(std::mt19937_64& rng, const std::string& name) {
  if (name == "octic-k3") {
    while (true) {
      const Rational s(oracle::uniform(rng, 1, 4));
      const Rational t = s * 2 + make_rational(oracle::uniform(rng, 1, 12), oracle::uniform(rng, 1, 4));
      return {s, t};
    }
  }
  return concat(Rational(1), oracle::random_ample_rho(rng, base_of(name)));
}

struct CliRun {
  int code;
  json doc;
};

CliRun cli_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, code <= 1 ? json::parse(out.str()) : json()};
}

const json* find_certificate(const json& doc, const json& d) {
  for (const auto& c : doc.at("certificates"))
    if (c.at("D") == d) return &c;
  return nullptr;
}

// 1
void octic_table(Checker& c) {
  const Geometry g = builtin_geometry("octic-k3");
  const auto E = g.basis_divisor(0), L = g.basis_divisor(1);
  const auto h = g.basis_curve(0), l = g.basis_curve(1);
  c.equal(g.triple_product(E, E, E), Rational(-16), "E^3");
  c.equal(g.triple_product(E, E, L), Rational(4), "E^2 L");
  c.equal(g.pair(E, h), Rational(1), "E.h");
  c.equal(g.pair(E, l), Rational(-2), "E.l");
  c.equal(g.pair(L, h), Rational(0), "L.h");
  c.equal(g.pair(L, l), Rational(1), "L.l");
  c.expect(g.product_curve(L, L).is_zero(), "L^2 = 0");
  c.equal(g.c2X().coords(), ints({56, 24}), "c2(X)");
  c.equal(g.c2_dot(E), Rational(8), "c2.E");
  c.equal(g.c2_dot(L), Rational(24), "c2.L");
  // Whole tensor against the hand-expanded trilinear form.
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        Vec a(2), b(2), d(2);
        a[i] = b[j] = d[k] = 1;
        c.equal(g.definition().triple_at(i, j, k), oracle::octic_triple(a, b, d), "d_ijk");
      }
}

// 2
void orthogonality_closed_form(Checker& c) {
  const Geometry g = builtin_geometry("octic-k3");
  std::mt19937_64 rng(2);
  for (int n = 0; n < 200; ++n) {
    const Rational x(oracle::uniform(rng, -20, 20)), y(oracle::uniform(rng, -20, 20));
    const Rational s(oracle::uniform(rng, 1, 20));
    const Rational t = s * 2 + oracle::uniform(rng, 1, 20);
    c.equal(check_orthogonal(g, g.divisor({x, y}), g.divisor({s, t})), oracle::octic_orthogonality(x, y, s, t),
            "D.H^2");
  }
}

// 3
void rank_two_specialization(Checker& c) {
  std::mt19937_64 rng(3);
  for (const auto& name : builtin_geometry_names()) {
    const Geometry g = builtin_geometry(name);
    const auto& def = g.definition();
    const auto O = trivial_line(g);
    for (int n = 0; n < 200; ++n) {
      const Vec d = oracle::random_vec(rng, g.picard_rank(), -10, 10);
      const Rational chi = euler_characteristic(g, ExtensionSpec(O, O, g.divisor(d)));
      const Rational expected = oracle::raw_pair(def, d, def.c2X) + Rational(8) * oracle::raw_triple(def, d, d, d);
      c.equal(Rational(6) * chi, expected, name + " 6 chi(O,O)");
      c.equal(Rational(6) * chi, oracle::raw_chi(def, oracle::raw_trivial(def), oracle::raw_trivial(def), d) * 6,
              name + " HRR");
      if (name == "octic-k3") c.equal(Rational(6) * chi, oracle::octic_r2_six_chi(d[0], d[1]), "octic polynomial");
    }
  }
}

// 4
void rank_four_specialization(Checker& c) {
  std::mt19937_64 rng(4);
  for (const auto& name : builtin_geometry_names()) {
    const Geometry g = builtin_geometry(name);
    const auto& def = g.definition();
    const auto O = trivial_line(g), T = tangent(g);
    for (int n = 0; n < 200; ++n) {
      const Vec d = oracle::random_vec(rng, g.picard_rank(), -10, 10);
      const Rational chi = euler_characteristic(g, ExtensionSpec(T, O, g.divisor(d)));
      const Rational expected = Rational(-3) * oracle::raw_pair(def, d, def.c2X) +
                                Rational(32) * oracle::raw_triple(def, d, d, d) + def.c3X / 2;
      c.equal(chi, expected, name + " chi(TX,O)");
      if (name == "octic-k3") c.equal(chi, oracle::octic_r4_chi(d[0], d[1]), "octic polynomial");
    }
  }
  c.note("octic chi(TX,O) = 4 (-6x - 18y + 32x^2(3y - 4x) - 21)");
}

// 5
void elliptic_identities(Checker& c) {
  std::mt19937_64 rng(5);
  for (const auto& name : elliptic_names()) {
    const Geometry g = builtin_geometry(name);
    const BaseSurface base = base_of(name);
    const auto O = trivial_line(g), T = tangent(g);
    for (int n = 0; n < 100; ++n) {
      const Rational x(oracle::uniform(rng, -6, 6));
      const Vec alpha = oracle::random_vec(rng, base.basis.size(), -6, 6);
      const Vec rho = oracle::random_ample_rho(rng, base);
      const auto d = g.divisor(concat(x, alpha)), h = g.divisor(concat(Rational(1), rho));
      c.expect(g.is_ample(h), name + " H ample");
      c.equal(check_orthogonal(g, d, h), oracle::elliptic_orthogonality(base, x, alpha, Rational(1), rho),
              name + " D.H^2");
      c.equal(Rational(6) * euler_characteristic(g, ExtensionSpec(O, O, d)), oracle::elliptic_r2_six_chi(base, x, alpha),
              name + " 6 chi r2");
      c.equal(euler_characteristic(g, ExtensionSpec(T, O, d)), oracle::elliptic_r4_chi(base, x, alpha),
              name + " chi r4");
    }
  }
}

// 6
void octic_rank_two_pipeline(Checker& c) {
  const auto run = cli_json({"search", "octic-k3", "--H", "1,5/2", "--rank", "2", "--bound", "3"});
  c.equal(run.code, 0, "exit code");
  if (run.code != 0) return;
  const json* x1 = find_certificate(run.doc, json::array({"1", "-1"}));
  c.expect(x1 != nullptr, "certificate for E - L");
  if (x1) {
    c.expect(x1->at("valid").get<bool>(), "E - L valid");
    c.equal(x1->at("chi"), json("-40"), "chi(E - L)");
    c.equal(x1->at("anomaly").at("W"), json::array({"40", "28"}), "W(E - L)");
    c.expect(x1->at("anomaly").at("effective").get<bool>(), "W(E - L) effective");
  }
  const json* x2 = find_certificate(run.doc, json::array({"2", "-2"}));
  c.expect(x2 != nullptr, "certificate for 2(E - L)");
  if (x2) {
    c.equal(x2->at("anomaly").at("W"), json::array({"-8", "40"}), "W(2(E - L))");
    c.expect(!x2->at("anomaly").at("effective").get<bool>(), "W(2(E - L)) not effective");
  }
  // Only the x = 1 member is physical.
  c.equal(run.doc.at("summary").at("effective").get<int>(), 1, "effective count");

  // The opposite sign is orthogonal too; it has chi = +40 and the same W.
  const auto all = cli_json({"search", "octic-k3", "--H", "1,5/2", "--rank", "2", "--bound", "3",
                             "--include-failures"});
  const json* minus = find_certificate(all.doc, json::array({"-1", "1"}));
  c.expect(minus != nullptr, "candidate -(E - L) listed");
  if (minus) {
    c.equal(minus->at("chi"), json("40"), "chi(-(E - L))");
    c.equal(minus->at("anomaly").at("W"), json::array({"40", "28"}), "W(-(E - L))");
  }
  // Independent value: 6 chi = c2.D + 8 D^3 = -16 - 224.
  c.equal(oracle::octic_r2_six_chi(Rational(1), Rational(-1)), Rational(-240), "oracle 6 chi");
}

// 7
void octic_rank_four_pipeline(Checker& c) {
  const auto run = cli_json({"search", "octic-k3", "--H", "1,5/2", "--rank", "4", "--bound", "3"});
  c.equal(run.code, 0, "exit code");
  if (run.code != 0) return;
  c.expect(run.doc.at("summary").at("valid").get<int>() >= 1, "at least one valid certificate");
  c.equal(run.doc.at("summary").at("effective").get<int>(), 0, "effective verdicts");
  const json* x1 = find_certificate(run.doc, json::array({"1", "-1"}));
  c.expect(x1 != nullptr && x1->at("valid").get<bool>(), "E - L valid");
  if (x1) c.equal(x1->at("chi"), json(to_string(oracle::octic_r4_chi(Rational(1), Rational(-1)))), "chi(E - L)");
  c.equal(oracle::octic_r4_chi(Rational(1), Rational(-1)), Rational(-932), "oracle chi");
  for (const auto& cert : run.doc.at("certificates")) {
    c.expect(!cert.at("anomaly").at("effective").get<bool>(), "rank 4 verdict not effective");
  }
}

// 8
void hodge_index_suite(Checker& c) {
  std::mt19937_64 rng(8);
  const auto names = builtin_geometry_names();
  std::size_t triples = 0;
  for (int attempt = 0; attempt < 20000 && triples < 500; ++attempt) {
    const std::string& name = names[static_cast<std::size_t>(oracle::uniform(rng, 0, names.size() - 1))];
    const Geometry g = builtin_geometry(name);
    const int bound = g.picard_rank() <= 3 ? 4 : (g.picard_rank() <= 5 ? 2 : 1);
    const Vec hv = random_ample(rng, name);
    const auto h = g.divisor(hv);
    for (const auto& d : solve_orthogonal(g, h, bound, 1)) {
      const Rational raw = oracle::raw_triple(g.definition(), d.coords(), d.coords(), hv);
      c.expect(raw < 0, name + " D^2.H < 0 at D = " + to_string(d.coords()) + ", H = " + to_string(hv));
      c.equal(check_negativity(g, d, h), raw, "check_negativity");
      ++triples;
    }
  }
  c.expect(triples >= 500, "collected " + std::to_string(triples) + " triples");
  c.note(std::to_string(triples) + " triples");
}

// 9
void drift_degree_suite(Checker& c) {
  std::mt19937_64 rng(9);
  std::size_t certs = 0;
  for (const auto& name : builtin_geometry_names()) {
    const Geometry g = builtin_geometry(name);
    for (auto rc : {RankCase::r2, RankCase::r4}) {
      for (int trial = 0; trial < 4; ++trial) {
        const Vec hv = random_ample(rng, name);
        const auto h = g.divisor(hv);
        SearchConfig config;
        config.rank_case = rc;
        config.coord_bound = g.picard_rank() <= 3 ? 3 : (g.picard_rank() <= 5 ? 2 : 1);
        const auto bundles = bundle_pair(g, rc);
        for (const auto& cert : search(g, h, config)) {
          if (!cert.valid()) continue;
          const ExtensionSpec spec(bundles.e1, bundles.e2, cert.divisor);
          const auto e = extension_chern(g, spec);
          const auto drift = bundles.e1.c2 + bundles.e2.c2 - e.c2;
          const Rational degree = g.pair(h, drift);
          c.expect(degree < 0, name + " drift degree at D = " + to_string(cert.divisor.coords()));
          const long r1 = spec.r1(), r2 = spec.r2(), p1 = spec.r1_reduced(), p2 = spec.r2_reduced();
          const Rational coeff = Rational(r1 * p2 * p2 + r2 * p1 * p1) / 2;
          c.equal(degree, coeff * oracle::raw_triple(g.definition(), cert.divisor.coords(), cert.divisor.coords(), hv),
                  "drift degree closed form");
          ++certs;
        }
      }
    }
  }
  c.expect(certs > 0, "some certificates");
  c.note(std::to_string(certs) + " certificates");
}

// 10
void brute_force_equivalence(Checker& c) {
  std::mt19937_64 rng(10);
  std::size_t runs = 0, hits = 0;
  for (const auto& name : builtin_geometry_names()) {
    const Geometry g = builtin_geometry(name);
    const std::size_t rho = g.picard_rank();
    if (rho > 5) continue;
    const int max_bound = rho <= 3 ? 4 : (rho == 4 ? 3 : 2);
    const auto& def = g.definition();
    for (int bound = 1; bound <= max_bound; ++bound) {
      for (int trial = 0; trial < 3; ++trial) {
        const Vec hv = random_ample(rng, name);
        for (auto rc : {RankCase::r2, RankCase::r4}) {
          SearchConfig config;
          config.coord_bound = bound;
          config.rank_case = rc;
          const auto certs = search(g, g.divisor(hv), config);
          const auto e1 = rc == RankCase::r2 ? oracle::raw_trivial(def) : oracle::raw_tangent(def);
          const auto brute = oracle::brute_force_search(def, hv, bound, e1, oracle::raw_trivial(def));
          std::vector<oracle::BruteForceHit> found;
          for (const auto& cert : certs) {
            c.expect(cert.polarization.coords() == hv, "unperturbed polarization");
            found.push_back({cert.divisor.coords(), cert.chi});
          }
          c.expect(found == brute, name + " bound " + std::to_string(bound) + " H = " + to_string(hv) + ": " +
                                       std::to_string(found.size()) + " vs " + std::to_string(brute.size()));
          ++runs;
          hits += brute.size();
        }
      }
    }
  }
  // A fixed octic case with a known answer keeps the comparison honest.
  const Geometry octic = builtin_geometry("octic-k3");
  const auto brute = oracle::brute_force_search(octic.definition(), {Rational(1), make_rational(5, 2)}, 4,
                                                oracle::raw_trivial(octic.definition()),
                                                oracle::raw_trivial(octic.definition()));
  c.equal(brute.size(), std::size_t{4}, "octic brute force count");
  c.note(std::to_string(runs) + " searches, " + std::to_string(hits) + " certificates");
}

// 11
void integrality_suite(Checker& c) {
  std::mt19937_64 rng(11);
  const auto names = builtin_geometry_names();
  std::size_t samples = 0;
  for (int n = 0; n < 10000; ++n) {
    const auto& name = names[static_cast<std::size_t>(n) % names.size()];
    const Geometry g = builtin_geometry(name);
    const auto O = trivial_line(g), T = tangent(g);
    const auto d = g.divisor(oracle::random_vec(rng, g.picard_rank(), -25, 25));
    for (const auto& e1 : {O, T}) {
      try {
        const Rational chi = euler_characteristic(g, ExtensionSpec(e1, O, d));
        c.expect(is_integer(chi), name + " chi integral");
      } catch (const DataError& e) {
        c.expect(false, name + ": " + e.what());
      }
      ++samples;
    }
  }
  c.note(std::to_string(samples) + " evaluations");
}

// 12
void elliptic_anomaly(Checker& c) {
  std::mt19937_64 rng(12);
  for (const auto& name : elliptic_names()) {
    const Geometry g = builtin_geometry(name);
    const BaseSurface base = base_of(name);
    const auto O = trivial_line(g);
    for (int n = 0; n < 100; ++n) {
      const Rational x(oracle::uniform(rng, -6, 6));
      const Vec alpha = oracle::random_vec(rng, base.basis.size(), -6, 6);
      const auto d = g.divisor(concat(x, alpha));
      const auto w = anomaly_class(g, extension_chern(g, ExtensionSpec(O, O, d)));
      c.equal(w.coords(), oracle::elliptic_r2_anomaly(base, x, alpha), name + " W");
    }
    if (base.kind == BaseSurface::Kind::hirzebruch) {
      c.equal(g.c2X()[0], Rational(92), name + " c2 + 11 c1^2");
      // Fiber coefficient nonnegative exactly when alpha^2 >= -92.
      for (const Vec& alpha : {ints({-3, 0}), ints({3, 4}), ints({5, -8}), ints({6, -8})}) {
        const Rational a2 = oracle::base_dot(base, alpha, alpha);
        const auto w = anomaly_class(g, extension_chern(g, ExtensionSpec(O, O, g.divisor(concat(Rational(1), alpha)))));
        c.equal(w[0] >= 0, a2 >= -92, name + " fiber bound");
      }
    }
  }
}

struct Criterion {
  int number;
  const char* title;
  std::function<void(Checker&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "octic intersection table", octic_table},
      {2, "orthogonality closed form", orthogonality_closed_form},
      {3, "rank 2 nonsplit specialization", rank_two_specialization},
      {4, "rank 4 nonsplit specialization", rank_four_specialization},
      {5, "elliptic identities", elliptic_identities},
      {6, "octic rank 2 end to end", octic_rank_two_pipeline},
      {7, "octic rank 4 anomaly obstruction", octic_rank_four_pipeline},
      {8, "Hodge index property", hodge_index_suite},
      {9, "negative degree of the c2 drift", drift_degree_suite},
      {10, "brute force equivalence", brute_force_equivalence},
      {11, "chi integrality", integrality_suite},
      {12, "elliptic anomaly closed form", elliptic_anomaly},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(checker);
    } catch (const std::exception& e) {
      checker.expect(false, std::string("exception: ") + e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (checker.ok() ? "PASS" : "FAIL") << "  " << criterion.number << ". " << criterion.title << "  ("
              << checker.checks() << " checks, " << ms << " ms";
    for (const auto& n : checker.notes()) std::cout << "; " << n;
    std::cout << ")\n";
    for (const auto& f : checker.failures()) std::cout << "      " << f << "\n";
    if (!checker.ok()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
