#include "dmu/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace dmu {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error(where + ": " + what);
}

ordered_json parse_object(const std::string& text, const std::string& where) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(where, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(where, "top level must be an object");
  return j;
}

double get_number(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(where, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int get_integer(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail(where, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

// Missing section -> empty array; anything else must be an array of objects.
std::vector<ordered_json> get_section(const ordered_json& j, const char* key,
                                      const std::string& where) {
  if (!j.contains(key)) return {};
  const auto& v = j.at(key);
  if (!v.is_array()) fail(where, std::string("field '") + key + "' must be an array");
  std::vector<ordered_json> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_object())
      fail(where, std::string("entry ") + key + "[" + std::to_string(i) + "] must be an object");
    out.push_back(v[i]);
  }
  return out;
}

}  // namespace

std::string measure_to_json(const AtomicMeasure& mu) {
  ordered_json j;
  j["atoms"] = ordered_json::array();
  for (const auto& a : mu.listed_atoms())
    j["atoms"].push_back({{"theta", a.point.theta}, {"weight", a.weight}});
  j["families"] = ordered_json::array();
  for (const auto& f : mu.families())
    j["families"].push_back({{"theta_star", f.theta_star},
                             {"angle_ratio", f.angle_ratio},
                             {"base_weight", f.base_weight},
                             {"weight_ratio", f.weight_ratio},
                             {"count", f.count}});
  return j.dump(2) + "\n";
}

AtomicMeasure measure_from_json(const std::string& text) {
  const std::string where = "measure";
  const auto j = parse_object(text, where);
  std::vector<Atom> atoms;
  for (const auto& e : get_section(j, "atoms", where)) {
    const std::string at = where + ".atoms[" + std::to_string(atoms.size()) + "]";
    atoms.push_back({UnitCirclePoint(get_number(e, "theta", at)), get_number(e, "weight", at)});
  }
  std::vector<AtomFamily> families;
  for (const auto& e : get_section(j, "families", where)) {
    const std::string at = where + ".families[" + std::to_string(families.size()) + "]";
    families.push_back({get_number(e, "theta_star", at), get_number(e, "angle_ratio", at),
                        get_number(e, "base_weight", at), get_number(e, "weight_ratio", at),
                        get_integer(e, "count", at)});
  }
  return AtomicMeasure(std::move(atoms), std::move(families));
}

std::string function_to_json(const StructuredFunction& f) {
  ordered_json j;
  j["blaschke"] = ordered_json::array();
  for (const auto& b : f.blaschke())
    j["blaschke"].push_back(
        {{"re", b.zero.real()}, {"im", b.zero.imag()}, {"mult", b.mult}});
  j["singular"] = ordered_json::array();
  for (const auto& s : f.singular())
    j["singular"].push_back({{"theta", s.point.theta}, {"mass", s.mass}});
  ordered_json outer;
  outer["log_constant"] = f.outer().log_constant();
  outer["powers"] = ordered_json::array();
  for (const auto& p : f.outer().powers())
    outer["powers"].push_back({{"theta", p.point.theta}, {"alpha", p.alpha}});
  outer["grid"] = f.outer().grid();
  j["outer"] = std::move(outer);
  return j.dump(2) + "\n";
}

StructuredFunction function_from_json(const std::string& text) {
  const std::string where = "function";
  const auto j = parse_object(text, where);

  std::vector<BlaschkeZero> blaschke;
  for (const auto& e : get_section(j, "blaschke", where)) {
    const std::string at = where + ".blaschke[" + std::to_string(blaschke.size()) + "]";
    blaschke.push_back({complex(get_number(e, "re", at), get_number(e, "im", at)),
                        get_integer(e, "mult", at)});
  }
  std::vector<SingularAtom> singular;
  for (const auto& e : get_section(j, "singular", where)) {
    const std::string at = where + ".singular[" + std::to_string(singular.size()) + "]";
    singular.push_back({UnitCirclePoint(get_number(e, "theta", at)), get_number(e, "mass", at)});
  }

  BoundaryModulus outer;
  if (j.contains("outer")) {
    const auto& o = j.at("outer");
    if (!o.is_object()) fail(where, "field 'outer' must be an object");
    const std::string at = where + ".outer";
    const double log_c = o.contains("log_constant") ? get_number(o, "log_constant", at) : 0.0;
    std::vector<PowerFactor> powers;
    for (const auto& e : get_section(o, "powers", at)) {
      const std::string pat = at + ".powers[" + std::to_string(powers.size()) + "]";
      powers.push_back({UnitCirclePoint(get_number(e, "theta", pat)), get_number(e, "alpha", pat)});
    }
    std::vector<double> grid;
    if (o.contains("grid")) {
      const auto& g = o.at("grid");
      if (!g.is_array()) fail(at, "field 'grid' must be an array");
      for (size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_number())
          fail(at, "entry grid[" + std::to_string(i) + "] must be a number");
        grid.push_back(g[i].get<double>());
      }
    }
    outer = BoundaryModulus(log_c, std::move(powers), std::move(grid));
  }
  return StructuredFunction(std::move(blaschke), std::move(singular), std::move(outer));
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open file for writing");
  out << text;
  if (!out) fail(path, "write failed");
}

AtomicMeasure load_measure(const std::string& path) {
  const std::string text = load_text(path);  // file errors already name the path
  try {
    return measure_from_json(text);
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

StructuredFunction load_function(const std::string& path) {
  const std::string text = load_text(path);
  try {
    return function_from_json(text);
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

}  // namespace dmu
