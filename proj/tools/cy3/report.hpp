#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cy3/anomaly_checker.hpp"

namespace cy3::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportEntry {
  std::vector<Rational> divisor;
  std::vector<Rational> polarization;
  std::vector<Rational> primitive;
  int multiple = 1;
  bool perturbed = false;
  CertificateChecks checks;
  bool valid = false;
  Rational orthogonality;
  std::vector<Rational> dh_row;
  Rational negativity;
  Rational chi;
  int rank = 0;
  std::vector<Rational> c2E;
  Rational c3E;
  std::vector<Rational> W;
  bool effective = false;
  std::optional<std::vector<std::pair<std::size_t, Rational>>> decomposition;

  bool operator==(const ReportEntry&) const = default;
};

struct ReportConfig {
  int bound = 0;
  int multiples = 0;
  std::string rank_case;
  std::string e1;
  std::string e2;
  bool perturb = false;
  bool include_failures = false;

  bool operator==(const ReportConfig&) const = default;
};

struct RunReport {
  std::string tool_version = kToolVersion;
  std::string command;
  std::string geometry;
  std::vector<std::string> divisor_basis;
  std::vector<std::string> curve_basis;
  std::vector<Rational> polarization;
  ReportConfig config;
  std::vector<ReportEntry> entries;

  std::size_t valid_count() const;
  std::size_t effective_count() const;
  bool operator==(const RunReport&) const = default;
};

ReportEntry make_entry(const AnomalyEntry& entry);

/// Entries sorted by (D, H) coordinates.
RunReport make_report(std::string command, const Geometry& g, const DivisorClass& h, ReportConfig config,
                      const std::vector<AnomalyEntry>& entries);

nlohmann::json to_json(const RunReport& report);
/// Throws ParseError on malformed input.
RunReport report_from_json(const nlohmann::json& doc);

std::string render_json(const RunReport& report);
std::string render_table(const RunReport& report);

}  // namespace cy3::cli
