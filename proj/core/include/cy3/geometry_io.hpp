#pragma once

// Geometry definition files, JSON or TOML, with keys
//   name, divisor_basis, curve_basis,
//   triple          [[i, j, k, value], ...]   symmetrized on load
//   pair_to_curve   [[i, j, c_1, ..., c_rho], ...]
//   pairing         rho x rho matrix
//   c2X, c3X
//   ample           list of coefficient vectors or {coeffs, label} tables
//   effective_curves list of curve coordinate vectors
// Numbers are bare integers or "p/q" strings.

#include <filesystem>
#include <string>
#include <string_view>

#include "cy3/intersection_model.hpp"

namespace cy3 {

enum class GeometryFormat { json, toml };

/// TOML for a ".toml" extension, JSON otherwise.
GeometryFormat format_for_path(const std::filesystem::path& path);

/// Parses without validating. Throws ParseError naming the offending key.
GeometryDefinition parse_geometry_definition(std::string_view text, GeometryFormat format);

/// Parses and validates; throws ParseError or ValidationError.
Geometry parse_geometry(std::string_view text, GeometryFormat format);

GeometryDefinition load_geometry_definition(const std::filesystem::path& path);
Geometry load_geometry(const std::filesystem::path& path);

/// Canonical, deterministic text: sorted keys, upper-triangular tensor entries,
/// zero entries omitted.
std::string serialize_geometry(const GeometryDefinition& def, GeometryFormat format);
std::string serialize_geometry(const Geometry& g, GeometryFormat format);

void save_geometry(const Geometry& g, const std::filesystem::path& path);

}  // namespace cy3
