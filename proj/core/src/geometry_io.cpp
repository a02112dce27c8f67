#include "cy3/geometry_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>
#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "cy3/errors.hpp"

namespace cy3 {

namespace {

using nlohmann::json;

json toml_to_json(const toml::node& node, const std::string& where) {
  if (const auto* t = node.as_table()) {
    json out = json::object();
    for (const auto& [k, v] : *t) out[std::string(k.str())] = toml_to_json(v, where + "." + std::string(k.str()));
    return out;
  }
  if (const auto* a = node.as_array()) {
    json out = json::array();
    for (const auto& v : *a) out.push_back(toml_to_json(v, where));
    return out;
  }
  if (const auto* i = node.as_integer()) return json(i->get());
  if (const auto* s = node.as_string()) return json(s->get());
  if (const auto* b = node.as_boolean()) return json(b->get());
  throw ParseError("unsupported value type at '" + where + "' (use integers or \"p/q\" strings)");
}

Rational read_number(const json& v, const std::string& key) {
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<std::int64_t>()), 10));
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError("key '" + key + "': " + e.what());
    }
  }
  throw ParseError("key '" + key + "': expected an integer or \"p/q\" string");
}

std::vector<Rational> read_vector(const json& v, const std::string& key) {
  if (!v.is_array()) throw ParseError("key '" + key + "': expected a list");
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(read_number(x, key));
  return out;
}

std::vector<std::string> read_labels(const json& v, const std::string& key) {
  if (!v.is_array()) throw ParseError("key '" + key + "': expected a list of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw ParseError("key '" + key + "': expected a list of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

std::size_t read_index(const json& v, std::size_t rho, const std::string& key) {
  if (!v.is_number_integer()) throw ParseError("key '" + key + "': index must be an integer");
  const auto i = v.get<std::int64_t>();
  if (i < 0 || static_cast<std::size_t>(i) >= rho) {
    throw ParseError("key '" + key + "': index " + std::to_string(i) + " out of range");
  }
  return static_cast<std::size_t>(i);
}

GeometryDefinition definition_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("geometry file must be a table/object");
  const json& name = require(doc, "name");
  if (!name.is_string()) throw ParseError("key 'name': expected a string");
  auto divisor_basis = read_labels(require(doc, "divisor_basis"), "divisor_basis");
  const std::size_t rho = divisor_basis.size();
  if (rho == 0) throw ParseError("key 'divisor_basis': must not be empty");

  auto def = GeometryDefinition::zeros(rho);
  def.name = name.get<std::string>();
  def.divisor_basis = std::move(divisor_basis);
  def.curve_basis = read_labels(require(doc, "curve_basis"), "curve_basis");

  // Listed entries win; missing ones are filled from a listed permutation so
  // that conflicting listings surface as symmetry violations.
  std::map<std::array<std::size_t, 3>, Rational> listed;
  const json& triple = require(doc, "triple");
  if (!triple.is_array()) throw ParseError("key 'triple': expected a list of [i, j, k, value]");
  for (const auto& e : triple) {
    if (!e.is_array() || e.size() != 4) throw ParseError("key 'triple': entries must be [i, j, k, value]");
    std::array<std::size_t, 3> ix{read_index(e[0], rho, "triple"), read_index(e[1], rho, "triple"),
                                  read_index(e[2], rho, "triple")};
    listed[ix] = read_number(e[3], "triple");
  }
  for (std::size_t i = 0; i < rho; ++i) {
    for (std::size_t j = 0; j < rho; ++j) {
      for (std::size_t k = 0; k < rho; ++k) {
        std::array<std::size_t, 3> ix{i, j, k};
        if (auto it = listed.find(ix); it != listed.end()) {
          def.triple_at(i, j, k) = it->second;
          continue;
        }
        std::array<std::size_t, 3> p{i, j, k};
        std::sort(p.begin(), p.end());
        do {
          if (auto it = listed.find(p); it != listed.end()) {
            def.triple_at(i, j, k) = it->second;
            break;
          }
        } while (std::next_permutation(p.begin(), p.end()));
      }
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> curves;
  const json& ptc = require(doc, "pair_to_curve");
  if (!ptc.is_array()) throw ParseError("key 'pair_to_curve': expected a list of [i, j, coords...]");
  for (const auto& e : ptc) {
    if (!e.is_array() || e.size() != 2 + rho) {
      throw ParseError("key 'pair_to_curve': entries must be [i, j] followed by " + std::to_string(rho) + " coordinates");
    }
    const std::size_t i = read_index(e[0], rho, "pair_to_curve");
    const std::size_t j = read_index(e[1], rho, "pair_to_curve");
    std::vector<Rational> c;
    for (std::size_t a = 0; a < rho; ++a) c.push_back(read_number(e[2 + a], "pair_to_curve"));
    curves[{i, j}] = std::move(c);
  }
  for (std::size_t i = 0; i < rho; ++i) {
    for (std::size_t j = 0; j < rho; ++j) {
      if (auto it = curves.find({i, j}); it != curves.end()) {
        def.curve_at(i, j) = it->second;
      } else if (auto jt = curves.find({j, i}); jt != curves.end()) {
        def.curve_at(i, j) = jt->second;
      }
    }
  }

  const json& pairing = require(doc, "pairing");
  if (!pairing.is_array()) throw ParseError("key 'pairing': expected a matrix");
  def.pairing.clear();
  for (const auto& row : pairing) def.pairing.push_back(read_vector(row, "pairing"));

  def.c2X = read_vector(require(doc, "c2X"), "c2X");
  def.c3X = read_number(require(doc, "c3X"), "c3X");

  if (auto it = doc.find("ample"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("key 'ample': expected a list of linear forms");
    for (const auto& f : *it) {
      if (f.is_array()) {
        def.ample.push_back({read_vector(f, "ample"), ""});
      } else if (f.is_object()) {
        LinearForm form{read_vector(require(f, "coeffs"), "ample.coeffs"), ""};
        if (auto lt = f.find("label"); lt != f.end() && lt->is_string()) form.label = lt->get<std::string>();
        def.ample.push_back(std::move(form));
      } else {
        throw ParseError("key 'ample': each form is a coefficient list or {coeffs, label}");
      }
    }
  }
  if (auto it = doc.find("effective_curves"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("key 'effective_curves': expected a list of coordinate lists");
    for (const auto& c : *it) def.effective_curves.push_back(read_vector(c, "effective_curves"));
  }
  return def;
}

// Integers that fit stay numbers; everything else is a "p/q" string.
json number_json(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p()) return json(static_cast<std::int64_t>(q.get_num().get_si()));
  return json(to_string(q));
}

json vector_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(number_json(x));
  return out;
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v) {
    if (x != 0) return false;
  }
  return true;
}

json definition_to_json(const GeometryDefinition& def) {
  const std::size_t rho = def.picard_rank();
  json doc = json::object();
  doc["name"] = def.name;
  doc["divisor_basis"] = def.divisor_basis;
  doc["curve_basis"] = def.curve_basis;
  json triple = json::array();
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = i; j < rho; ++j)
      for (std::size_t k = j; k < rho; ++k) {
        if (def.triple_at(i, j, k) == 0) continue;
        triple.push_back(json::array({i, j, k, number_json(def.triple_at(i, j, k))}));
      }
  doc["triple"] = triple;
  json ptc = json::array();
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = i; j < rho; ++j) {
      if (all_zero(def.curve_at(i, j))) continue;
      json e = json::array({i, j});
      for (const auto& c : def.curve_at(i, j)) e.push_back(number_json(c));
      ptc.push_back(e);
    }
  doc["pair_to_curve"] = ptc;
  json pairing = json::array();
  for (const auto& row : def.pairing) pairing.push_back(vector_json(row));
  doc["pairing"] = pairing;
  doc["c2X"] = vector_json(def.c2X);
  doc["c3X"] = number_json(def.c3X);
  json ample = json::array();
  for (const auto& f : def.ample) {
    json form = json::object();
    form["coeffs"] = vector_json(f.coeffs);
    form["label"] = f.label;
    ample.push_back(form);
  }
  doc["ample"] = ample;
  json eff = json::array();
  for (const auto& c : def.effective_curves) eff.push_back(vector_json(c));
  doc["effective_curves"] = eff;
  return doc;
}

toml::array toml_array(const json& arr);

toml::table toml_table(const json& obj) {
  toml::table t;
  for (const auto& [k, v] : obj.items()) {
    if (v.is_object()) {
      t.insert(k, toml_table(v));
    } else if (v.is_array()) {
      t.insert(k, toml_array(v));
    } else if (v.is_number_integer()) {
      t.insert(k, v.get<std::int64_t>());
    } else {
      t.insert(k, v.get<std::string>());
    }
  }
  return t;
}

toml::array toml_array(const json& arr) {
  toml::array a;
  for (const auto& v : arr) {
    if (v.is_object()) {
      a.push_back(toml_table(v));
    } else if (v.is_array()) {
      a.push_back(toml_array(v));
    } else if (v.is_number_integer()) {
      a.push_back(v.get<std::int64_t>());
    } else {
      a.push_back(v.get<std::string>());
    }
  }
  return a;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open geometry file '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

GeometryFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".toml" ? GeometryFormat::toml : GeometryFormat::json;
}

GeometryDefinition parse_geometry_definition(std::string_view text, GeometryFormat format) {
  json doc;
  if (format == GeometryFormat::toml) {
    try {
      const toml::table t = toml::parse(text);
      doc = toml_to_json(t, "");
    } catch (const toml::parse_error& e) {
      std::ostringstream os;
      os << "TOML parse error: " << e.description() << " at line " << e.source().begin.line;
      throw ParseError(os.str());
    }
  } else {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("JSON parse error: ") + e.what());
    }
  }
  try {
    return definition_from_json(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed geometry: ") + e.what());
  }
}

Geometry parse_geometry(std::string_view text, GeometryFormat format) {
  return Geometry(parse_geometry_definition(text, format));
}

GeometryDefinition load_geometry_definition(const std::filesystem::path& path) {
  return parse_geometry_definition(read_file(path), format_for_path(path));
}

Geometry load_geometry(const std::filesystem::path& path) { return Geometry(load_geometry_definition(path)); }

std::string serialize_geometry(const GeometryDefinition& def, GeometryFormat format) {
  const json doc = definition_to_json(def);
  if (format == GeometryFormat::json) return doc.dump(2) + "\n";
  std::ostringstream os;
  os << toml_table(doc) << "\n";
  return os.str();
}

std::string serialize_geometry(const Geometry& g, GeometryFormat format) {
  return serialize_geometry(g.definition(), format);
}

void save_geometry(const Geometry& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write geometry file '" + path.string() + "'");
  out << serialize_geometry(g, format_for_path(path));
}

}  // namespace cy3
