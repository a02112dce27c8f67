#include "commands.hpp"

#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cy3/anomaly_checker.hpp"
#include "cy3/geometry_catalog.hpp"
#include "cy3/geometry_io.hpp"
#include "report.hpp"

namespace cy3::cli {

namespace {

struct GeometryArgs {
  std::string name;
  std::string file;
};

Geometry resolve_geometry(const GeometryArgs& args) {
  if (!args.file.empty()) return load_geometry(args.file);
  if (args.name.empty()) throw InputError("give a geometry name or --geometry-file");
  return builtin_geometry(args.name);
}

BundleData preset(const Geometry& g, const std::string& name) {
  if (name == "O" || name == "O_X") return trivial_line(g);
  if (name == "TX") return tangent(g);
  throw InputError("unknown bundle preset '" + name + "' (use O or TX)");
}

struct PipelineArgs {
  GeometryArgs geometry;
  std::string h;
  std::string d;
  int rank = 2;
  std::string e1;
  std::string e2;
  int bound = 3;
  int multiples = 10;
  bool perturb = false;
  bool include_failures = false;
  std::string format = "table";
};

struct Resolved {
  RankCase rank_case;
  BundlePair bundles;
  std::string rank_label;
};

Resolved resolve_bundles(const Geometry& g, const PipelineArgs& a) {
  if (!a.e1.empty() || !a.e2.empty()) {
    BundlePair pair{preset(g, a.e1.empty() ? "O" : a.e1), preset(g, a.e2.empty() ? "O" : a.e2)};
    return {RankCase::custom, pair, "custom"};
  }
  if (a.rank == 2) return {RankCase::r2, bundle_pair(g, RankCase::r2), "2"};
  if (a.rank == 4) return {RankCase::r4, bundle_pair(g, RankCase::r4), "4"};
  throw InputError("--rank must be 2 or 4");
}

ReportConfig echo_config(const PipelineArgs& a, const Resolved& r) {
  return {a.bound, a.multiples, r.rank_label, r.bundles.e1.label, r.bundles.e2.label, a.perturb, a.include_failures};
}

void emit(const RunReport& report, const std::string& format, std::ostream& out) {
  out << (format == "json" ? render_json(report) : render_table(report));
}

int cmd_search(const PipelineArgs& a, std::ostream& out) {
  const Geometry g = resolve_geometry(a.geometry);
  const DivisorClass h = g.divisor(parse_rational_list(a.h));
  const Resolved r = resolve_bundles(g, a);

  SearchConfig config;
  config.coord_bound = a.bound;
  config.multiple_range = a.multiples;
  config.rank_case = r.rank_case;
  config.bundles = r.bundles;
  config.perturbation_enabled = a.perturb;
  config.include_failures = a.include_failures;

  const auto certificates = search(g, h, config);
  const auto scanned = anomaly_scan(g, certificates, r.bundles);
  const RunReport report = make_report("search", g, h, echo_config(a, r), scanned);
  emit(report, a.format, out);
  return report.valid_count() > 0 ? kSuccess : kNoSolution;
}

int cmd_check(const PipelineArgs& a, std::ostream& out) {
  const Geometry g = resolve_geometry(a.geometry);
  const DivisorClass h = g.divisor(parse_rational_list(a.h));
  const DivisorClass d = g.divisor(parse_rational_list(a.d));
  const Resolved r = resolve_bundles(g, a);

  const auto cert = evaluate_candidate(g, d, h, r.bundles);
  const auto scanned = anomaly_scan(g, {cert}, r.bundles);
  ReportConfig config = echo_config(a, r);
  config.bound = 0;
  config.multiples = 0;
  const RunReport report = make_report("check", g, h, config, scanned);

  if (a.format == "json") {
    out << render_json(report);
  } else {
    const auto& e = report.entries.front();
    const auto& labels = g.definition().curve_basis;
    auto mark = [](bool ok) { return ok ? "pass" : "FAIL"; };
    out << "geometry " << g.name() << "  E1 = " << r.bundles.e1.label << "  E2 = " << r.bundles.e2.label << "\n";
    out << "D = " << to_string(e.divisor) << " = " << format_divisor(g, d) << "\n";
    out << "H = " << to_string(e.polarization) << " = " << format_divisor(g, h)
        << (g.is_ample(h) ? "  (ample)" : "  (not ample)") << "\n";
    out << "orthogonal   D.H^2 = " << to_string(e.orthogonality) << "  " << mark(e.checks.orthogonal) << "\n";
    out << "nontrivial   D.H.B_i = " << to_string(e.dh_row) << "  " << mark(e.checks.nontrivial) << "\n";
    out << "negative     D^2.H = " << to_string(e.negativity) << "  " << mark(e.checks.negative) << "\n";
    out << "nonsplit     chi = " << to_string(e.chi) << "  " << mark(e.checks.nonsplit) << "\n";
    out << "c2(E) = " << format_class(e.c2E, labels) << "  c3(E) = " << to_string(e.c3E) << "\n";
    out << "W = " << format_class(e.W, labels) << "  " << (e.effective ? "effective" : "not effective") << "\n";
    out << (e.valid ? "certificate valid" : "certificate not valid") << "\n";
  }
  return report.entries.front().valid ? kSuccess : kNoSolution;
}

std::string monomial(const std::vector<std::string>& labels, std::size_t i, std::size_t j, std::size_t k) {
  std::map<std::size_t, int> powers;
  ++powers[i];
  ++powers[j];
  ++powers[k];
  std::string out;
  for (const auto& [index, power] : powers) {
    if (!out.empty()) out += " ";
    out += labels[index];
    if (power > 1) out += "^" + std::to_string(power);
  }
  return out;
}

void show_geometry(const Geometry& g, std::ostream& out) {
  const auto& def = g.definition();
  const std::size_t rho = g.picard_rank();
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  };
  out << "geometry " << def.name << "\n";
  out << "picard rank " << rho << "\n";
  out << "divisor basis: " << join(def.divisor_basis) << "\n";
  out << "curve basis: " << join(def.curve_basis) << "\n";
  out << "triple intersections:\n";
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = i; j < rho; ++j)
      for (std::size_t k = j; k < rho; ++k)
        out << "  " << monomial(def.divisor_basis, i, j, k) << " = " << to_string(def.triple_at(i, j, k)) << "\n";
  out << "divisor products:\n";
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = i; j < rho; ++j)
      out << "  " << def.divisor_basis[i] << "." << def.divisor_basis[j] << " = "
          << format_class(def.curve_at(i, j), def.curve_basis) << "\n";
  out << "pairing:\n";
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t a = 0; a < rho; ++a)
      out << "  " << def.divisor_basis[i] << "." << def.curve_basis[a] << " = " << to_string(def.pairing[i][a])
          << "\n";
  out << "c2 = " << format_class(def.c2X, def.curve_basis) << "\n";
  out << "c3 = " << to_string(def.c3X) << "\n";
  out << "ample cone:\n";
  for (const auto& f : def.ample) {
    out << "  " << (f.label.empty() ? format_class(f.coeffs, def.divisor_basis) + " > 0" : f.label) << "\n";
  }
  out << "effective curves:\n";
  for (const auto& c : def.effective_curves) out << "  " << format_class(c, def.curve_basis) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact intersection theory and stable extension search on Calabi-Yau threefolds", "cy3"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto* geometry = app.add_subcommand("geometry", "List, show, validate or save geometries");
  geometry->require_subcommand(1);
  auto* list = geometry->add_subcommand("list", "List built-in geometries");
  GeometryArgs show_args;
  auto* show = geometry->add_subcommand("show", "Print the full intersection data");
  show->add_option("name", show_args.name, "Built-in geometry name");
  show->add_option("--geometry-file", show_args.file, "Geometry definition file");
  std::string validate_path;
  auto* validate = geometry->add_subcommand("validate", "Validate a geometry file");
  validate->add_option("path", validate_path, "Geometry file")->required();
  std::string save_name, save_path;
  auto* save = geometry->add_subcommand("save", "Write a built-in geometry to a file (.toml or .json)");
  save->add_option("name", save_name, "Built-in geometry name")->required();
  save->add_option("path", save_path, "Output path")->required();

  PipelineArgs search_args;
  PipelineArgs check_args;
  auto add_common = [](CLI::App* cmd, PipelineArgs& a) {
    cmd->add_option("geometry", a.geometry.name, "Built-in geometry name");
    cmd->add_option("--geometry-file", a.geometry.file, "Geometry definition file");
    cmd->add_option("--H", a.h, "Polarization coordinates, e.g. \"1,5/2\"")->required();
    cmd->add_option("--rank", a.rank, "2 (O by O) or 4 (TX by O)")->check(CLI::IsMember({2, 4}));
    cmd->add_option("--e1", a.e1, "Subbundle preset for a custom pair")->check(CLI::IsMember({"O", "TX"}));
    cmd->add_option("--e2", a.e2, "Quotient preset for a custom pair")->check(CLI::IsMember({"O", "TX"}));
    cmd->add_option("--format", a.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  };
  auto* search_cmd = app.add_subcommand("search", "Search for stability certificates and check the anomaly");
  add_common(search_cmd, search_args);
  search_cmd->add_option("--bound", search_args.bound, "Maximum |coordinate| of D")->check(CLI::PositiveNumber);
  search_cmd->add_option("--multiples", search_args.multiples, "Multiple range M")->check(CLI::PositiveNumber);
  search_cmd->add_flag("--perturb", search_args.perturb, "Enable the H + delta D fallback");
  search_cmd->add_flag("--include-failures", search_args.include_failures, "Report rejected candidates too");

  auto* check_cmd = app.add_subcommand("check", "Evaluate one candidate D end to end");
  add_common(check_cmd, check_args);
  check_cmd->add_option("--D", check_args.d, "Divisor coordinates, e.g. \"1,-1\"")->required();

  std::vector<const char*> argv{"cy3"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : builtin_geometry_names()) {
        out << name << "  (picard rank " << builtin_geometry(name).picard_rank() << ")\n";
      }
      return kSuccess;
    }
    if (show->parsed()) {
      show_geometry(resolve_geometry(show_args), out);
      return kSuccess;
    }
    if (validate->parsed()) {
      const auto def = load_geometry_definition(validate_path);
      const auto report = validate_geometry(def);
      if (!report.ok()) {
        err << report.violations.size() << " violation(s) in " << validate_path << ":\n" << report.summary();
        return kValidationError;
      }
      out << validate_path << ": ok (" << def.name << ", picard rank " << def.picard_rank() << ")\n";
      return kSuccess;
    }
    if (save->parsed()) {
      save_geometry(builtin_geometry(save_name), save_path);
      out << "wrote " << save_path << "\n";
      return kSuccess;
    }
    if (search_cmd->parsed()) return cmd_search(search_args, out);
    if (check_cmd->parsed()) return cmd_check(check_args, out);
  } catch (const ValidationError& e) {
    err << e.what();
    return kValidationError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kValidationError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace cy3::cli
