#include "report.hpp"

#include <algorithm>
#include <sstream>

namespace cy3::cli {

namespace {

using nlohmann::json;

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Rational rational_at(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_string()) {
    throw ParseError(std::string("report: expected rational string at '") + key + "'");
  }
  return parse_rational(doc.at(key).get<std::string>());
}

std::vector<Rational> rationals_at(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw ParseError(std::string("report: expected list at '") + key + "'");
  }
  std::vector<Rational> out;
  for (const auto& x : doc.at(key)) {
    if (!x.is_string()) throw ParseError(std::string("report: expected rational strings in '") + key + "'");
    out.push_back(parse_rational(x.get<std::string>()));
  }
  return out;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::size_t RunReport::valid_count() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.valid; }));
}

std::size_t RunReport::effective_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.valid && e.effective; }));
}

ReportEntry make_entry(const AnomalyEntry& entry) {
  const auto& c = entry.certificate;
  ReportEntry e;
  e.divisor = c.divisor.coords();
  e.polarization = c.polarization.coords();
  e.primitive = c.primitive.coords();
  e.multiple = c.multiple;
  e.perturbed = c.perturbed;
  e.checks = c.checks;
  e.valid = c.valid();
  e.orthogonality = c.orthogonality;
  e.dh_row = c.dh_row;
  e.negativity = c.negativity;
  e.chi = c.chi;
  e.rank = entry.bundle.rank;
  e.c2E = entry.bundle.c2.coords();
  e.c3E = entry.bundle.c3;
  e.W = entry.verdict.W.coords();
  e.effective = entry.verdict.effective;
  if (entry.verdict.decomposition) {
    e.decomposition = std::vector<std::pair<std::size_t, Rational>>(entry.verdict.decomposition->begin(),
                                                                    entry.verdict.decomposition->end());
  }
  return e;
}

RunReport make_report(std::string command, const Geometry& g, const DivisorClass& h, ReportConfig config,
                      const std::vector<AnomalyEntry>& entries) {
  RunReport r;
  r.command = std::move(command);
  r.geometry = g.name();
  r.divisor_basis = g.definition().divisor_basis;
  r.curve_basis = g.definition().curve_basis;
  r.polarization = h.coords();
  r.config = std::move(config);
  for (const auto& e : entries) r.entries.push_back(make_entry(e));
  std::sort(r.entries.begin(), r.entries.end(), [](const ReportEntry& a, const ReportEntry& b) {
    if (a.divisor != b.divisor) return a.divisor < b.divisor;
    return a.polarization < b.polarization;
  });
  return r;
}

json to_json(const RunReport& r) {
  json doc = json::object();
  doc["tool_version"] = r.tool_version;
  doc["command"] = r.command;
  doc["geometry"] = r.geometry;
  doc["divisor_basis"] = r.divisor_basis;
  doc["curve_basis"] = r.curve_basis;
  doc["H"] = rationals(r.polarization);
  doc["config"] = {{"bound", r.config.bound},         {"multiples", r.config.multiples},
                   {"rank_case", r.config.rank_case}, {"e1", r.config.e1},
                   {"e2", r.config.e2},               {"perturb", r.config.perturb},
                   {"include_failures", r.config.include_failures}};
  doc["summary"] = {{"certificates", r.entries.size()}, {"valid", r.valid_count()}, {"effective", r.effective_count()}};
  json certs = json::array();
  for (const auto& e : r.entries) {
    json c = json::object();
    c["D"] = rationals(e.divisor);
    c["H"] = rationals(e.polarization);
    c["primitive"] = rationals(e.primitive);
    c["multiple"] = e.multiple;
    c["perturbed"] = e.perturbed;
    c["checks"] = {{"orthogonal", e.checks.orthogonal},
                   {"nontrivial", e.checks.nontrivial},
                   {"negative", e.checks.negative},
                   {"nonsplit", e.checks.nonsplit}};
    c["valid"] = e.valid;
    c["orthogonality"] = to_string(e.orthogonality);
    c["dh_row"] = rationals(e.dh_row);
    c["negativity"] = to_string(e.negativity);
    c["chi"] = to_string(e.chi);
    c["bundle"] = {{"rank", e.rank}, {"c2", rationals(e.c2E)}, {"c3", to_string(e.c3E)}};
    json anomaly = {{"W", rationals(e.W)}, {"effective", e.effective}};
    if (e.decomposition) {
      json dec = json::array();
      for (const auto& [index, coeff] : *e.decomposition) dec.push_back(json::array({index, to_string(coeff)}));
      anomaly["decomposition"] = dec;
    } else {
      anomaly["decomposition"] = nullptr;
    }
    c["anomaly"] = anomaly;
    certs.push_back(c);
  }
  doc["certificates"] = certs;
  return doc;
}

RunReport report_from_json(const json& doc) {
  try {
    RunReport r;
    r.tool_version = doc.at("tool_version").get<std::string>();
    r.command = doc.at("command").get<std::string>();
    r.geometry = doc.at("geometry").get<std::string>();
    r.divisor_basis = doc.at("divisor_basis").get<std::vector<std::string>>();
    r.curve_basis = doc.at("curve_basis").get<std::vector<std::string>>();
    r.polarization = rationals_at(doc, "H");
    const json& cfg = doc.at("config");
    r.config.bound = cfg.at("bound").get<int>();
    r.config.multiples = cfg.at("multiples").get<int>();
    r.config.rank_case = cfg.at("rank_case").get<std::string>();
    r.config.e1 = cfg.at("e1").get<std::string>();
    r.config.e2 = cfg.at("e2").get<std::string>();
    r.config.perturb = cfg.at("perturb").get<bool>();
    r.config.include_failures = cfg.at("include_failures").get<bool>();
    for (const auto& c : doc.at("certificates")) {
      ReportEntry e;
      e.divisor = rationals_at(c, "D");
      e.polarization = rationals_at(c, "H");
      e.primitive = rationals_at(c, "primitive");
      e.multiple = c.at("multiple").get<int>();
      e.perturbed = c.at("perturbed").get<bool>();
      const json& checks = c.at("checks");
      e.checks.orthogonal = checks.at("orthogonal").get<bool>();
      e.checks.nontrivial = checks.at("nontrivial").get<bool>();
      e.checks.negative = checks.at("negative").get<bool>();
      e.checks.nonsplit = checks.at("nonsplit").get<bool>();
      e.valid = c.at("valid").get<bool>();
      e.orthogonality = rational_at(c, "orthogonality");
      e.dh_row = rationals_at(c, "dh_row");
      e.negativity = rational_at(c, "negativity");
      e.chi = rational_at(c, "chi");
      const json& bundle = c.at("bundle");
      e.rank = bundle.at("rank").get<int>();
      e.c2E = rationals_at(bundle, "c2");
      e.c3E = rational_at(bundle, "c3");
      const json& anomaly = c.at("anomaly");
      e.W = rationals_at(anomaly, "W");
      e.effective = anomaly.at("effective").get<bool>();
      if (!anomaly.at("decomposition").is_null()) {
        std::vector<std::pair<std::size_t, Rational>> dec;
        for (const auto& p : anomaly.at("decomposition")) {
          dec.emplace_back(p.at(0).get<std::size_t>(), parse_rational(p.at(1).get<std::string>()));
        }
        e.decomposition = std::move(dec);
      }
      r.entries.push_back(std::move(e));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::string render_json(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

std::string render_table(const RunReport& r) {
  std::ostringstream os;
  os << "geometry " << r.geometry << "  H = " << to_string(r.polarization) << "  " << r.command;
  if (r.config.bound > 0) os << "  bound " << r.config.bound << "  multiples " << r.config.multiples;
  os << "  E1 = " << r.config.e1 << "  E2 = " << r.config.e2 << "\n";

  const std::vector<std::string> header{"D", "D.H^2", "D^2.H", "chi", "valid", "c2(E)", "c3(E)", "W", "effective"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : r.entries) {
    std::string d = to_string(e.divisor);
    if (e.perturbed) d += " @H=" + to_string(e.polarization);
    rows.push_back({d, to_string(e.orthogonality), to_string(e.negativity), to_string(e.chi), e.valid ? "yes" : "no",
                    format_class(e.c2E, r.curve_basis), to_string(e.c3E), format_class(e.W, r.curve_basis),
                    e.effective ? "yes" : "no"});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) line += pad(row[c], width[c] + 2);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  os << r.valid_count() << " valid certificate(s), " << r.effective_count() << " with effective anomaly class\n";
  return os.str();
}

}  // namespace cy3::cli
