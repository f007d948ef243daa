#include "fgm/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fgm {

using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

// Reads one JSON object and remembers which keys were used, so leftovers
// can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail(where_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  std::string path(const std::string& key) const { return where_ + "." + key; }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number()) fail(path(key), "expected a number");
    out = v.get<double>();
  }

  void integer(const std::string& key, int& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_number_integer()) fail(path(key), "expected an integer");
    out = v.get<int>();
  }

  void boolean(const std::string& key, bool& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_boolean()) fail(path(key), "expected true or false");
    out = v.get<bool>();
  }

  void string(const std::string& key, std::string& out) {
    if (!has(key)) return;
    const json& v = raw(key);
    if (!v.is_string()) fail(path(key), "expected a string");
    out = v.get<std::string>();
  }

  void point(const std::string& key, Vec2& out) {
    if (!has(key)) return;
    out = to_point(raw(key), path(key));
  }

  static Vec2 to_point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      fail(where, "expected [x, y]");
    return Vec2(v[0].get<double>(), v[1].get<double>());
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) fail(path(it.key()), "unknown key");
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

json point_json(const Vec2& p) { return json::array({p.x(), p.y()}); }

TemperatureCoefficients coefficients_from_json(const json& j, const std::string& where) {
  TemperatureCoefficients c;
  ObjectReader r(j, where);
  r.number("P0", c.P0);
  r.number("Pm1", c.Pm1);
  r.number("P1", c.P1);
  r.number("P2", c.P2);
  r.number("P3", c.P3);
  r.finish();
  return c;
}

json coefficients_to_json(const TemperatureCoefficients& c) {
  return {{"P0", c.P0}, {"Pm1", c.Pm1}, {"P1", c.P1}, {"P2", c.P2}, {"P3", c.P3}};
}

ConstituentSpec constituent_from_json(const json& j, const std::string& where) {
  ConstituentSpec c;
  ObjectReader r(j, where);
  if (r.has("E")) c.E = coefficients_from_json(r.raw("E"), r.path("E"));
  if (r.has("alpha")) c.alpha = coefficients_from_json(r.raw("alpha"), r.path("alpha"));
  r.number("rho", c.rho);
  r.number("kappa", c.kappa);
  r.number("nu", c.nu);
  r.finish();
  return c;
}

json constituent_to_json(const ConstituentSpec& c) {
  return {{"E", coefficients_to_json(c.E)},
          {"alpha", coefficients_to_json(c.alpha)},
          {"rho", c.rho},
          {"kappa", c.kappa},
          {"nu", c.nu}};
}

PlateSpec plate_from_json(const json& j) {
  PlateSpec p;
  ObjectReader r(j, "plate");
  r.number("a", p.a);
  r.number("b", p.b);
  r.number("h", p.h);
  r.integer("nx", p.nx);
  r.integer("ny", p.ny);
  std::string bc = to_string(p.bc);
  r.string("bc", bc);
  try {
    p.bc = parse_boundary_condition(bc);
  } catch (const std::invalid_argument& e) {
    fail("plate.bc", e.what());
  }
  r.finish();
  return p;
}

MaterialConfig material_from_json(const json& j) {
  MaterialConfig m;
  ObjectReader r(j, "material");
  r.string("system", m.system);
  if (r.has("ceramic")) m.ceramic = constituent_from_json(r.raw("ceramic"), "material.ceramic");
  if (r.has("metal")) m.metal = constituent_from_json(r.raw("metal"), "material.metal");
  r.number("k", m.k);
  // A missing nu_fixed takes the system's convention; null switches the
  // override off.
  if (m.system == "custom") m.nu_fixed.reset();
  if (r.has("nu_fixed")) {
    const json& v = r.raw("nu_fixed");
    if (v.is_null())
      m.nu_fixed.reset();
    else if (v.is_number())
      m.nu_fixed = v.get<double>();
    else
      fail("material.nu_fixed", "expected a number or null");
  }
  r.number("shear_correction", m.shear_correction);
  r.finish();
  return m;
}

ThermalBC thermal_from_json(const json& j) {
  ThermalBC t;
  ObjectReader r(j, "thermal");
  r.number("Tc", t.Tc);
  r.number("Tm", t.Tm);
  r.number("T0", t.T0);
  r.finish();
  return t;
}

CutoutConfig cutout_from_json(const json& j, const std::string& where) {
  CutoutConfig c;
  ObjectReader r(j, where);
  r.string("type", c.type);
  r.point("center", c.center);
  r.number("radius", c.radius);
  r.number("semi_major", c.semi_major);
  r.number("semi_minor", c.semi_minor);
  r.number("orientation_deg", c.orientation_deg);
  r.finish();
  if (c.type != "circle" && c.type != "ellipse")
    fail(where + ".type", "expected \"circle\" or \"ellipse\"");
  return c;
}

json cutout_to_json(const CutoutConfig& c) {
  json j = {{"type", c.type}, {"center", point_json(c.center)}};
  if (c.type == "circle") {
    j["radius"] = c.radius;
  } else {
    j["semi_major"] = c.semi_major;
    j["semi_minor"] = c.semi_minor;
    j["orientation_deg"] = c.orientation_deg;
  }
  return j;
}

CrackConfig crack_from_json(const json& j, const std::string& where) {
  CrackConfig c;
  ObjectReader r(j, where);
  if (r.has("cutout")) {
    int id = 0;
    r.integer("cutout", id);
    c.cutout = id;
  }
  if (r.has("angle_deg")) {
    double a = 0.0;
    r.number("angle_deg", a);
    c.angle_deg = a;
  }
  if (r.has("point")) {
    Vec2 p;
    r.point("point", p);
    c.point = p;
  }
  if (r.has("direction_deg")) {
    double d = 0.0;
    r.number("direction_deg", d);
    c.direction_deg = d;
  }
  r.number("length", c.length);
  r.finish();
  return c;
}

json crack_to_json(const CrackConfig& c) {
  json j = json::object();
  if (c.cutout) j["cutout"] = *c.cutout;
  if (c.angle_deg) j["angle_deg"] = *c.angle_deg;
  if (c.point) j["point"] = point_json(*c.point);
  if (c.direction_deg) j["direction_deg"] = *c.direction_deg;
  j["length"] = c.length;
  return j;
}

GeometryConfig geometry_from_json(const json& j) {
  GeometryConfig g;
  ObjectReader r(j, "geometry");
  if (r.has("cutouts")) {
    const json& a = r.raw("cutouts");
    if (!a.is_array()) fail("geometry.cutouts", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i)
      g.cutouts.push_back(cutout_from_json(a[i], "geometry.cutouts." + std::to_string(i)));
  }
  if (r.has("cracks")) {
    const json& a = r.raw("cracks");
    if (!a.is_array()) fail("geometry.cracks", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i)
      g.cracks.push_back(crack_from_json(a[i], "geometry.cracks." + std::to_string(i)));
  }
  r.finish();
  return g;
}

SolverConfig solver_from_json(const json& j) {
  SolverConfig s;
  ObjectReader r(j, "solver");
  r.integer("n_modes", s.n_modes);
  std::string style = to_string(s.normalization);
  r.string("normalization", style);
  try {
    s.normalization = parse_normalization(style);
  } catch (const std::invalid_argument& e) {
    fail("solver.normalization", e.what());
  }
  r.number("tolerance", s.tolerance);
  r.finish();
  return s;
}

OutputConfig output_from_json(const json& j) {
  OutputConfig o;
  ObjectReader r(j, "output");
  r.string("directory", o.directory);
  r.string("prefix", o.prefix);
  r.boolean("frequencies", o.frequencies);
  r.boolean("mode_shapes", o.mode_shapes);
  r.boolean("static_field", o.static_field);
  r.boolean("plan_dump", o.plan_dump);
  r.finish();
  return o;
}

// Walks a dotted path ("geometry.cutouts.0.radius") to a numeric leaf.
json* find_leaf(json& root, const std::string& path) {
  json* node = &root;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (node->is_object()) {
      if (!node->contains(part)) return nullptr;
      node = &(*node)[part];
    } else if (node->is_array()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(part, &used);
        if (used != part.size()) return nullptr;
      } catch (const std::exception&) {
        return nullptr;
      }
      if (idx >= node->size()) return nullptr;
      node = &(*node)[idx];
    } else {
      return nullptr;
    }
  }
  return node;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

CaseConfig parse_unchecked(const json& j);

MaterialSystem MaterialConfig::resolve() const {
  MaterialSystem sys;
  if (system == "custom") {
    if (!ceramic || !metal)
      throw std::invalid_argument("material: custom system needs ceramic and metal");
    sys.ceramic = *ceramic;
    sys.metal = *metal;
  } else {
    if (ceramic || metal)
      throw std::invalid_argument("material: constituents are only allowed with system \"custom\"");
    sys = builtin_material_system(system, k);
  }
  sys.k = k;
  sys.nu_fixed = nu_fixed;
  sys.validate();
  return sys;
}

Cutout CutoutConfig::resolve() const {
  Cutout c;
  if (type == "circle")
    c = Circle{center, radius};
  else if (type == "ellipse")
    c = Ellipse{center, semi_major, semi_minor, orientation_deg * kDeg};
  else
    throw std::invalid_argument("cutout type must be circle or ellipse");
  validate_cutout(c);
  return c;
}

Crack CrackConfig::resolve(const std::vector<Cutout>& cutouts) const {
  if (!(length > 0.0)) throw std::invalid_argument("crack length must be positive");
  Crack crack;
  Vec2 mouth;
  double dir = 0.0;
  if (cutout) {
    if (point) throw std::invalid_argument("crack anchor: give either cutout+angle_deg or point");
    if (!angle_deg) throw std::invalid_argument("crack anchored on a cutout needs angle_deg");
    if (*cutout < 0 || *cutout >= static_cast<int>(cutouts.size()))
      throw std::invalid_argument("crack refers to a missing cutout");
    mouth = rim_point(cutouts[*cutout], *angle_deg * kDeg);
    dir = direction_deg.value_or(*angle_deg) * kDeg;
    crack.host_cutout = *cutout;
  } else {
    if (!point) throw std::invalid_argument("crack needs a mouth anchor (cutout or point)");
    if (angle_deg) throw std::invalid_argument("angle_deg is only meaningful with a cutout anchor");
    if (!direction_deg) throw std::invalid_argument("crack from a plate edge needs direction_deg");
    mouth = *point;
    dir = *direction_deg * kDeg;
  }
  crack.path = {mouth, mouth + length * Vec2(std::cos(dir), std::sin(dir))};
  return crack;
}

DiscontinuitySet GeometryConfig::resolve() const {
  DiscontinuitySet set;
  for (const auto& c : cutouts) set.cutouts.push_back(c.resolve());
  for (const auto& c : cracks) set.cracks.push_back(c.resolve(set.cutouts));
  return set;
}

void CaseConfig::validate() const {
  plate.validate();
  material.resolve();
  if (!(material.shear_correction > 0.0 && material.shear_correction <= 1.0))
    throw std::invalid_argument("material.shear_correction must lie in (0, 1]");
  thermal.validate();
  validate_discontinuities(geometry.resolve(), plate.a, plate.b);
  if (solver.n_modes < 1) throw std::invalid_argument("solver.n_modes must be at least 1");
  if (!(solver.tolerance > 0.0 && solver.tolerance < 1.0))
    throw std::invalid_argument("solver.tolerance must lie in (0, 1)");
  if (output.prefix.empty()) throw std::invalid_argument("output.prefix must not be empty");
}

CaseConfig parse_unchecked(const json& j) {
  CaseConfig c;
  ObjectReader r(j, "case");
  if (r.has("plate")) c.plate = plate_from_json(r.raw("plate"));
  if (r.has("material")) c.material = material_from_json(r.raw("material"));
  if (r.has("thermal")) c.thermal = thermal_from_json(r.raw("thermal"));
  if (r.has("geometry")) c.geometry = geometry_from_json(r.raw("geometry"));
  if (r.has("solver")) c.solver = solver_from_json(r.raw("solver"));
  if (r.has("output")) c.output = output_from_json(r.raw("output"));
  r.finish();
  return c;
}

CaseConfig case_from_json(const json& j) {
  CaseConfig c = parse_unchecked(j);
  c.validate();
  return c;
}

json case_to_json(const CaseConfig& c) {
  json material = {{"system", c.material.system}, {"k", c.material.k},
                   {"shear_correction", c.material.shear_correction}};
  material["nu_fixed"] = c.material.nu_fixed ? json(*c.material.nu_fixed) : json(nullptr);
  if (c.material.ceramic) material["ceramic"] = constituent_to_json(*c.material.ceramic);
  if (c.material.metal) material["metal"] = constituent_to_json(*c.material.metal);

  json cutouts = json::array();
  for (const auto& x : c.geometry.cutouts) cutouts.push_back(cutout_to_json(x));
  json cracks = json::array();
  for (const auto& x : c.geometry.cracks) cracks.push_back(crack_to_json(x));

  return {
      {"plate",
       {{"a", c.plate.a},
        {"b", c.plate.b},
        {"h", c.plate.h},
        {"nx", c.plate.nx},
        {"ny", c.plate.ny},
        {"bc", to_string(c.plate.bc)}}},
      {"material", material},
      {"thermal", {{"Tc", c.thermal.Tc}, {"Tm", c.thermal.Tm}, {"T0", c.thermal.T0}}},
      {"geometry", {{"cutouts", cutouts}, {"cracks", cracks}}},
      {"solver",
       {{"n_modes", c.solver.n_modes},
        {"normalization", to_string(c.solver.normalization)},
        {"tolerance", c.solver.tolerance}}},
      {"output",
       {{"directory", c.output.directory},
        {"prefix", c.output.prefix},
        {"frequencies", c.output.frequencies},
        {"mode_shapes", c.output.mode_shapes},
        {"static_field", c.output.static_field},
        {"plan_dump", c.output.plan_dump}}},
  };
}

CaseConfig parse_case(const std::string& text) { return case_from_json(parse_text(text)); }

std::string dump_case(const CaseConfig& c) { return case_to_json(c).dump(2); }

CaseConfig load_case(const std::string& path) { return parse_case(read_file(path)); }

namespace {

// Range checks are left to the caller so that a sweep can report an
// out-of-range row instead of rejecting the whole table.
CaseConfig substitute(const CaseConfig& c, const std::string& path, double value) {
  json j = case_to_json(c);
  json* leaf = find_leaf(j, path);
  if (leaf == nullptr) throw std::invalid_argument("sweep parameter '" + path + "' does not exist in the case");
  if (leaf->is_number_integer()) {
    if (value != std::round(value))
      throw std::invalid_argument("sweep parameter '" + path + "' takes integer values");
    *leaf = static_cast<long long>(value);
  } else if (leaf->is_number()) {
    *leaf = value;
  } else {
    throw std::invalid_argument("sweep parameter '" + path + "' is not numeric");
  }
  return parse_unchecked(j);
}

}  // namespace

CaseConfig with_parameter(const CaseConfig& c, const std::string& path, double value) {
  CaseConfig out = substitute(c, path, value);
  out.validate();
  return out;
}

std::vector<CaseConfig> SweepSpec::expand() const {
  if (axes.empty() || axes.size() > 2)
    throw std::invalid_argument("a sweep takes one or two parameters");
  // Paths are checked against the base even when a value list is empty.
  for (const auto& axis : axes) {
    json j = case_to_json(base);
    if (find_leaf(j, axis.parameter) == nullptr)
      throw std::invalid_argument("sweep parameter '" + axis.parameter + "' does not exist in the case");
  }
  std::vector<CaseConfig> out;
  if (axes.size() == 1) {
    for (double v : axes[0].values) out.push_back(substitute(base, axes[0].parameter, v));
  } else {
    for (double v0 : axes[0].values) {
      const CaseConfig outer = substitute(base, axes[0].parameter, v0);
      for (double v1 : axes[1].values) out.push_back(substitute(outer, axes[1].parameter, v1));
    }
  }
  return out;
}

SweepSpec sweep_from_json(const json& j) {
  SweepSpec s;
  ObjectReader r(j, "sweep");
  if (!r.has("base")) fail("sweep", "missing \"base\" case");
  s.base = case_from_json(r.raw("base"));
  if (!r.has("parameters")) fail("sweep", "missing \"parameters\"");
  const json& axes = r.raw("parameters");
  if (!axes.is_array()) fail("sweep.parameters", "expected an array");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string where = "sweep.parameters." + std::to_string(i);
    ObjectReader a(axes[i], where);
    SweepAxis axis;
    a.string("name", axis.parameter);
    if (!a.has("values")) fail(where, "missing \"values\"");
    const json& v = a.raw("values");
    if (!v.is_array()) fail(where + ".values", "expected an array");
    for (const auto& x : v) {
      if (!x.is_number()) fail(where + ".values", "expected numbers");
      axis.values.push_back(x.get<double>());
    }
    a.finish();
    s.axes.push_back(std::move(axis));
  }
  r.finish();
  s.expand();  // validates paths and values
  return s;
}

json sweep_to_json(const SweepSpec& s) {
  json axes = json::array();
  for (const auto& a : s.axes) axes.push_back({{"name", a.parameter}, {"values", a.values}});
  return {{"base", case_to_json(s.base)}, {"parameters", axes}};
}

SweepSpec parse_sweep(const std::string& text) { return sweep_from_json(parse_text(text)); }

SweepSpec load_sweep(const std::string& path) { return parse_sweep(read_file(path)); }

}  // namespace fgm
