#pragma once

// Intersection ring of a Calabi-Yau threefold presented by explicit data:
// a divisor basis B_i, a dual curve basis C_a, the triple intersection
// numbers d_ijk = B_i.B_j.B_k, the divisor-pair -> curve map T and the
// divisor-curve pairing P. c1(X) = 0 is implicit throughout.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cy3/errors.hpp"
#include "cy3/rational.hpp"

namespace cy3 {

/// Strict linear inequality sum_i coeffs[i] * x_i > 0 on divisor coordinates.
struct LinearForm {
  std::vector<Rational> coeffs;
  std::string label;

  Rational evaluate(const std::vector<Rational>& coords) const;
  bool operator==(const LinearForm&) const = default;
};

/// Raw, unvalidated geometry data. A Geometry is built from one of these.
struct GeometryDefinition {
  std::string name;
  std::vector<std::string> divisor_basis;
  std::vector<std::string> curve_basis;
  std::vector<Rational> triple;                      // rho^3 entries, index (i*rho + j)*rho + k
  std::vector<std::vector<Rational>> pair_to_curve;  // rho^2 entries, index i*rho + j
  std::vector<std::vector<Rational>> pairing;        // pairing[i][a] = B_i . C_a
  std::vector<Rational> c2X;
  Rational c3X;
  std::vector<LinearForm> ample;
  std::vector<std::vector<Rational>> effective_curves;

  std::size_t picard_rank() const { return divisor_basis.size(); }

  /// Zero-filled definition of the right shape for Picard rank rho.
  static GeometryDefinition zeros(std::size_t rho);

  Rational& triple_at(std::size_t i, std::size_t j, std::size_t k);
  const Rational& triple_at(std::size_t i, std::size_t j, std::size_t k) const;
  std::vector<Rational>& curve_at(std::size_t i, std::size_t j);
  const std::vector<Rational>& curve_at(std::size_t i, std::size_t j) const;

  bool operator==(const GeometryDefinition&) const = default;
};

struct Violation {
  enum class Kind { shape, symmetry, consistency, degenerate_pairing };
  Kind kind;
  std::vector<std::size_t> indices;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Lists every shape, symmetry and consistency problem; never throws.
ValidationReport validate_geometry(const GeometryDefinition& def);

class DivisorClass;
class CurveClass;

/// Immutable, validated intersection data. Copies share the underlying data.
class Geometry {
 public:
  /// Throws ValidationError listing every violation.
  explicit Geometry(GeometryDefinition def);

  const GeometryDefinition& definition() const { return *def_; }
  const std::string& name() const { return def_->name; }
  std::size_t picard_rank() const { return def_->picard_rank(); }
  std::uint64_t id() const { return id_; }

  DivisorClass divisor(std::vector<Rational> coords) const;
  DivisorClass basis_divisor(std::size_t i) const;
  DivisorClass zero_divisor() const;
  CurveClass curve(std::vector<Rational> coords) const;
  CurveClass basis_curve(std::size_t a) const;
  CurveClass zero_curve() const;

  Rational triple_product(const DivisorClass& a, const DivisorClass& b, const DivisorClass& c) const;
  CurveClass product_curve(const DivisorClass& a, const DivisorClass& b) const;
  Rational pair(const DivisorClass& d, const CurveClass& c) const;
  Rational c2_dot(const DivisorClass& d) const;

  bool is_ample(const DivisorClass& h) const;
  /// First configured inequality that fails at h, if any.
  std::optional<LinearForm> violated_ample_inequality(const DivisorClass& h) const;

  CurveClass c2X() const;
  const Rational& c3X() const { return def_->c3X; }

  /// Compares the intersection data; the identity used for class membership
  /// is not part of equality.
  bool operator==(const Geometry& other) const { return definition() == other.definition(); }

 private:
  void require_member(const DivisorClass& d) const;
  void require_member(const CurveClass& c) const;

  std::shared_ptr<const GeometryDefinition> def_;
  std::uint64_t id_;
};

/// Exact rational coordinates in a geometry's divisor basis.
class DivisorClass {
 public:
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }
  std::uint64_t geometry_id() const { return geometry_id_; }
  bool is_zero() const;
  bool is_integral() const { return all_integer(coords_); }

  DivisorClass operator-() const;
  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
  friend DivisorClass operator*(const Rational& s, const DivisorClass& d);

  bool operator==(const DivisorClass&) const = default;

 private:
  friend class Geometry;
  DivisorClass(std::vector<Rational> coords, std::uint64_t geometry_id)
      : coords_(std::move(coords)), geometry_id_(geometry_id) {}

  std::vector<Rational> coords_;
  std::uint64_t geometry_id_;
};

/// Exact rational coordinates in a geometry's curve basis.
class CurveClass {
 public:
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }
  std::uint64_t geometry_id() const { return geometry_id_; }
  bool is_zero() const;

  CurveClass operator-() const;
  friend CurveClass operator+(const CurveClass& a, const CurveClass& b);
  friend CurveClass operator-(const CurveClass& a, const CurveClass& b);
  friend CurveClass operator*(const Rational& s, const CurveClass& c);

  bool operator==(const CurveClass&) const = default;

 private:
  friend class Geometry;
  CurveClass(std::vector<Rational> coords, std::uint64_t geometry_id)
      : coords_(std::move(coords)), geometry_id_(geometry_id) {}

  std::vector<Rational> coords_;
  std::uint64_t geometry_id_;
};

ValidationReport validate_geometry(const Geometry& g);

/// Renders a class as "4 l - 16 h" style text using the basis labels.
std::string format_class(const std::vector<Rational>& coords, const std::vector<std::string>& labels);
std::string format_divisor(const Geometry& g, const DivisorClass& d);
std::string format_curve(const Geometry& g, const CurveClass& c);

/// Raised when a Geometry is constructed from data that fails validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace cy3
