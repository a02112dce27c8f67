#include "cy3/intersection_model.hpp"

#include <atomic>
#include <sstream>
#include <utility>

namespace cy3 {

namespace {

std::uint64_t next_geometry_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

std::vector<Rational> zero_vector(std::size_t n) { return std::vector<Rational>(n, Rational(0)); }

void check_same(std::uint64_t a, std::uint64_t b) {
  if (a != b) throw InputError("classes belong to different geometries");
}

// Gaussian elimination over Q; the pairing must be invertible.
bool is_nonsingular(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(m[pivot], m[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return true;
}

std::string idx(std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream os;
  os << "(" << i << "," << j << "," << k << ")";
  return os.str();
}

}  // namespace

Rational LinearForm::evaluate(const std::vector<Rational>& coords) const {
  if (coords.size() != coeffs.size()) throw InputError("linear form length mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) sum += coeffs[i] * coords[i];
  return sum;
}

GeometryDefinition GeometryDefinition::zeros(std::size_t rho) {
  GeometryDefinition def;
  def.divisor_basis.resize(rho);
  def.curve_basis.resize(rho);
  def.triple = zero_vector(rho * rho * rho);
  def.pair_to_curve.assign(rho * rho, zero_vector(rho));
  def.pairing.assign(rho, zero_vector(rho));
  def.c2X = zero_vector(rho);
  def.c3X = 0;
  return def;
}

Rational& GeometryDefinition::triple_at(std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t r = picard_rank();
  return triple[(i * r + j) * r + k];
}

const Rational& GeometryDefinition::triple_at(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t r = picard_rank();
  return triple[(i * r + j) * r + k];
}

std::vector<Rational>& GeometryDefinition::curve_at(std::size_t i, std::size_t j) {
  return pair_to_curve[i * picard_rank() + j];
}

const std::vector<Rational>& GeometryDefinition::curve_at(std::size_t i, std::size_t j) const {
  return pair_to_curve[i * picard_rank() + j];
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.message << "\n";
  return os.str();
}

ValidationReport validate_geometry(const GeometryDefinition& def) {
  ValidationReport report;
  auto shape = [&](std::string msg) {
    report.violations.push_back({Violation::Kind::shape, {}, std::move(msg)});
  };
  const std::size_t rho = def.picard_rank();
  if (rho == 0) {
    shape("divisor basis is empty");
    return report;
  }
  if (def.curve_basis.size() != rho) shape("curve basis size differs from Picard rank");
  if (def.triple.size() != rho * rho * rho) shape("triple tensor must have rho^3 entries");
  if (def.pair_to_curve.size() != rho * rho) shape("pair_to_curve must have rho^2 entries");
  for (const auto& c : def.pair_to_curve) {
    if (c.size() != rho) {
      shape("pair_to_curve entry has wrong length");
      break;
    }
  }
  if (def.pairing.size() != rho) shape("pairing must have rho rows");
  for (const auto& row : def.pairing) {
    if (row.size() != rho) {
      shape("pairing row has wrong length");
      break;
    }
  }
  if (def.c2X.size() != rho) shape("c2X has wrong length");
  for (std::size_t n = 0; n < def.ample.size(); ++n) {
    if (def.ample[n].coeffs.size() != rho) shape("ample form " + std::to_string(n) + " has wrong length");
  }
  for (std::size_t n = 0; n < def.effective_curves.size(); ++n) {
    if (def.effective_curves[n].size() != rho) shape("effective curve " + std::to_string(n) + " has wrong length");
  }
  if (!report.ok()) return report;

  for (std::size_t i = 0; i < rho; ++i) {
    for (std::size_t j = i; j < rho; ++j) {
      for (std::size_t k = j; k < rho; ++k) {
        const Rational& v = def.triple_at(i, j, k);
        if (v != def.triple_at(i, k, j) || v != def.triple_at(j, i, k) || v != def.triple_at(j, k, i) ||
            v != def.triple_at(k, i, j) || v != def.triple_at(k, j, i)) {
          report.violations.push_back(
              {Violation::Kind::symmetry, {i, j, k}, "triple tensor not symmetric at " + idx(i, j, k)});
        }
      }
    }
  }
  for (std::size_t i = 0; i < rho; ++i) {
    for (std::size_t j = i + 1; j < rho; ++j) {
      if (def.curve_at(i, j) != def.curve_at(j, i)) {
        report.violations.push_back({Violation::Kind::symmetry,
                                     {i, j},
                                     "pair_to_curve not symmetric at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")"});
      }
    }
  }
  for (std::size_t i = 0; i < rho; ++i) {
    for (std::size_t j = 0; j < rho; ++j) {
      for (std::size_t k = 0; k < rho; ++k) {
        Rational paired = 0;
        for (std::size_t a = 0; a < rho; ++a) paired += def.pairing[k][a] * def.curve_at(i, j)[a];
        if (paired != def.triple_at(i, j, k)) {
          report.violations.push_back(
              {Violation::Kind::consistency,
               {i, j, k},
               "B_" + std::to_string(k) + " . T(B_" + std::to_string(i) + ",B_" + std::to_string(j) +
                   ") = " + to_string(paired) + " but triple" + idx(i, j, k) + " = " +
                   to_string(def.triple_at(i, j, k))});
        }
      }
    }
  }
  if (!is_nonsingular(def.pairing)) {
    report.violations.push_back({Violation::Kind::degenerate_pairing, {}, "divisor-curve pairing is degenerate"});
  }
  return report;
}

ValidationReport validate_geometry(const Geometry& g) { return validate_geometry(g.definition()); }

ValidationError::ValidationError(ValidationReport report)
    : Error("geometry validation failed:\n" + report.summary()), report_(std::move(report)) {}

// ---------------------------------------------------------------------------

Geometry::Geometry(GeometryDefinition def) : id_(next_geometry_id()) {
  auto report = validate_geometry(def);
  if (!report.ok()) throw ValidationError(std::move(report));
  def_ = std::make_shared<const GeometryDefinition>(std::move(def));
}

DivisorClass Geometry::divisor(std::vector<Rational> coords) const {
  if (coords.size() != picard_rank()) {
    throw InputError("divisor needs " + std::to_string(picard_rank()) + " coordinates in geometry '" + name() +
                     "', got " + std::to_string(coords.size()));
  }
  return DivisorClass(std::move(coords), id_);
}

DivisorClass Geometry::basis_divisor(std::size_t i) const {
  auto v = zero_vector(picard_rank());
  v.at(i) = 1;
  return DivisorClass(std::move(v), id_);
}

DivisorClass Geometry::zero_divisor() const { return DivisorClass(zero_vector(picard_rank()), id_); }

CurveClass Geometry::curve(std::vector<Rational> coords) const {
  if (coords.size() != picard_rank()) {
    throw InputError("curve needs " + std::to_string(picard_rank()) + " coordinates in geometry '" + name() +
                     "', got " + std::to_string(coords.size()));
  }
  return CurveClass(std::move(coords), id_);
}

CurveClass Geometry::basis_curve(std::size_t a) const {
  auto v = zero_vector(picard_rank());
  v.at(a) = 1;
  return CurveClass(std::move(v), id_);
}

CurveClass Geometry::zero_curve() const { return CurveClass(zero_vector(picard_rank()), id_); }

void Geometry::require_member(const DivisorClass& d) const {
  if (d.geometry_id() != id_) throw InputError("divisor class does not belong to geometry '" + name() + "'");
}

void Geometry::require_member(const CurveClass& c) const {
  if (c.geometry_id() != id_) throw InputError("curve class does not belong to geometry '" + name() + "'");
}

Rational Geometry::triple_product(const DivisorClass& a, const DivisorClass& b, const DivisorClass& c) const {
  require_member(a);
  require_member(b);
  require_member(c);
  const std::size_t rho = picard_rank();
  Rational sum = 0;
  for (std::size_t i = 0; i < rho; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rho; ++j) {
      if (b[j] == 0) continue;
      const Rational ab = a[i] * b[j];
      for (std::size_t k = 0; k < rho; ++k) {
        if (c[k] == 0) continue;
        sum += ab * c[k] * def_->triple_at(i, j, k);
      }
    }
  }
  return sum;
}

CurveClass Geometry::product_curve(const DivisorClass& a, const DivisorClass& b) const {
  require_member(a);
  require_member(b);
  const std::size_t rho = picard_rank();
  auto out = zero_vector(rho);
  for (std::size_t i = 0; i < rho; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rho; ++j) {
      if (b[j] == 0) continue;
      const Rational ab = a[i] * b[j];
      const auto& t = def_->curve_at(i, j);
      for (std::size_t m = 0; m < rho; ++m) out[m] += ab * t[m];
    }
  }
  return CurveClass(std::move(out), id_);
}

Rational Geometry::pair(const DivisorClass& d, const CurveClass& c) const {
  require_member(d);
  require_member(c);
  const std::size_t rho = picard_rank();
  Rational sum = 0;
  for (std::size_t i = 0; i < rho; ++i) {
    if (d[i] == 0) continue;
    for (std::size_t a = 0; a < rho; ++a) sum += d[i] * def_->pairing[i][a] * c[a];
  }
  return sum;
}

Rational Geometry::c2_dot(const DivisorClass& d) const { return pair(d, c2X()); }

CurveClass Geometry::c2X() const { return CurveClass(def_->c2X, id_); }

std::optional<LinearForm> Geometry::violated_ample_inequality(const DivisorClass& h) const {
  require_member(h);
  for (const auto& form : def_->ample) {
    if (form.evaluate(h.coords()) <= 0) return form;
  }
  return std::nullopt;
}

bool Geometry::is_ample(const DivisorClass& h) const {
  // With no configured cone nothing is certified ample.
  if (def_->ample.empty()) return false;
  return !violated_ample_inequality(h).has_value();
}

// ---------------------------------------------------------------------------

bool DivisorClass::is_zero() const {
  for (const auto& c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

DivisorClass DivisorClass::operator-() const {
  auto v = coords_;
  for (auto& c : v) c = -c;
  return DivisorClass(std::move(v), geometry_id_);
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  check_same(a.geometry_id_, b.geometry_id_);
  auto v = a.coords_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.coords_[i];
  return DivisorClass(std::move(v), a.geometry_id_);
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + (-b); }

DivisorClass operator*(const Rational& s, const DivisorClass& d) {
  auto v = d.coords_;
  for (auto& c : v) c *= s;
  return DivisorClass(std::move(v), d.geometry_id_);
}

bool CurveClass::is_zero() const {
  for (const auto& c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

CurveClass CurveClass::operator-() const {
  auto v = coords_;
  for (auto& c : v) c = -c;
  return CurveClass(std::move(v), geometry_id_);
}

CurveClass operator+(const CurveClass& a, const CurveClass& b) {
  check_same(a.geometry_id_, b.geometry_id_);
  auto v = a.coords_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.coords_[i];
  return CurveClass(std::move(v), a.geometry_id_);
}

CurveClass operator-(const CurveClass& a, const CurveClass& b) { return a + (-b); }

CurveClass operator*(const Rational& s, const CurveClass& c) {
  auto v = c.coords_;
  for (auto& x : v) x *= s;
  return CurveClass(std::move(v), c.geometry_id_);
}

std::string format_class(const std::vector<Rational>& coords, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Rational& c = coords[i];
    if (c == 0) continue;
    const Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + " ";
    out += labels[i];
  }
  return out.empty() ? "0" : out;
}

std::string format_divisor(const Geometry& g, const DivisorClass& d) {
  return format_class(d.coords(), g.definition().divisor_basis);
}

std::string format_curve(const Geometry& g, const CurveClass& c) {
  return format_class(c.coords(), g.definition().curve_basis);
}

}  // namespace cy3
