#pragma once

// Strict JSON experiment configs. Every object rejects unknown keys; schema
// violations raise ConfigError carrying the JSON pointer of the bad field.
// Needs nlohmann/json (vendored as json.hpp).

#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boxmom/core.hpp"
#include "boxmom/geometry.hpp"
#include "boxmom/model.hpp"
#include "boxmom/state.hpp"

namespace boxmom {

struct ConfigError : Error {
  std::string field;
  ConfigError(std::string f, const std::string& what) : Error(f + ": " + what), field(std::move(f)) {}
};

enum class Experiment { spectrum, modes, evolve, ehrenfest, uncertainty, commute };

inline const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::spectrum: return "spectrum";
    case Experiment::modes: return "modes";
    case Experiment::evolve: return "evolve";
    case Experiment::ehrenfest: return "ehrenfest";
    case Experiment::uncertainty: return "uncertainty";
    case Experiment::commute: return "commute";
  }
  return "?";
}

inline std::optional<Experiment> parse_experiment(const std::string& s) {
  for (auto e : {Experiment::spectrum, Experiment::modes, Experiment::evolve, Experiment::ehrenfest,
                 Experiment::uncertainty, Experiment::commute})
    if (s == to_string(e)) return e;
  return std::nullopt;
}

struct StateSpec {
  enum class Kind { gaussian, eigenmode, csv, random };
  Kind kind = Kind::gaussian;
  Vec2 center{};
  double width = 0.1;
  Vec2 momentum{};
  std::array<int, 2> n{1, 1};  // eigenmode: Dirichlet box quantum numbers
  std::string path;            // csv: state file (see write_state_csv)
  int count = 1;               // random: number of states
  RandomStateOptions random{};
  bool wall_compatible = false;  // gaussian on grids: subtract the wall values along x
};

struct Numerics {
  double h = 1.0 / 64;
  double dt = 1e-3;
  int steps = 100;
  int record_every = 1;
  int modes = 64;
  int lines = 64;
  int quadrature_points = 512;
  int boundary_points = 2048;
  std::array<int, 2> n_range{-8, 8};
  double tolerance = 1e-3;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::spectrum;
  Region region = Region::interval(0, 1);
  StateSpec state;
  Numerics numerics;
  Potential potential;
  double mass = 1.0;
  std::uint64_t seed = 0;
  std::string output = "out";
  std::vector<Vec2> directions{{1, 0}};
  Vec2 m{1, 0};  // second direction (uncertainty, commute)
};

namespace detail {

using json = nlohmann::json;

class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
  }

  void allow(std::initializer_list<const char*> keys) {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!ok.count(it.key())) throw ConfigError(path_ + "/" + it.key(), "unknown key");
  }
  bool has(const char* key) const { return j_.contains(key); }
  std::string at(const char* key) const { return path_ + "/" + key; }
  const json& raw(const char* key) const {
    if (!j_.contains(key)) throw ConfigError(at(key), "missing required key");
    return j_.at(key);
  }

  double number(const char* key, std::optional<double> fallback = std::nullopt, bool positive = true) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "missing required key");
    }
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(at(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(at(key), "must be finite");
    if (positive && !(d > 0)) throw ConfigError(at(key), "must be positive");
    return d;
  }
  int integer(const char* key, std::optional<int> fallback = std::nullopt, bool positive = true) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "missing required key");
    }
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
    const auto d = v.get<long long>();
    if (positive && d <= 0) throw ConfigError(at(key), "must be positive");
    if (d > std::numeric_limits<int>::max() || d < std::numeric_limits<int>::min())
      throw ConfigError(at(key), "out of range");
    return static_cast<int>(d);
  }
  std::string string(const char* key, std::optional<std::string> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "missing required key");
    }
    const auto& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    return v.get<std::string>();
  }
  bool boolean(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v.get<bool>();
  }
  Vec2 vec2(const char* key, std::optional<Vec2> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(at(key), "missing required key");
    }
    return to_vec2(j_.at(key), at(key));
  }

  static Vec2 to_vec2(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ConfigError(where, "expected [x, y]");
    const Vec2 out{v[0].get<double>(), v[1].get<double>()};
    if (!std::isfinite(out.x) || !std::isfinite(out.y)) throw ConfigError(where, "must be finite");
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

inline Vec2 unit_direction(const json& v, const std::string& where) {
  const Vec2 d = Reader::to_vec2(v, where);
  const double n = norm(d);
  if (!(n > 0)) throw ConfigError(where, "direction must be nonzero");
  return d / n;
}

// per_segment entries may be the string "dirichlet" (gamma only)
inline BoundaryField parse_field(const json& j, const std::string& where, bool allow_dirichlet) {
  Reader r(j, where);
  r.allow({"constant", "per_segment", "table"});
  const int given = int(r.has("constant")) + int(r.has("per_segment")) + int(r.has("table"));
  if (given != 1) throw ConfigError(where, "give exactly one of constant, per_segment, table");
  const auto value = [&](const json& v, const std::string& at) {
    if (allow_dirichlet && v.is_string() && v.get<std::string>() == "dirichlet")
      return std::numeric_limits<double>::infinity();
    if (!v.is_number()) throw ConfigError(at, allow_dirichlet ? "expected a number or \"dirichlet\"" : "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(at, "must be finite");
    return d;
  };
  if (r.has("constant")) return BoundaryField::constant(value(r.raw("constant"), r.at("constant")));
  if (r.has("per_segment")) {
    const auto& a = r.raw("per_segment");
    if (!a.is_array() || a.empty()) throw ConfigError(r.at("per_segment"), "expected a non-empty array");
    std::vector<double> v;
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(value(a[i], r.at("per_segment") + "/" + std::to_string(i)));
    return BoundaryField::per_segment(std::move(v));
  }
  const auto& a = r.raw("table");
  if (!a.is_array() || a.empty()) throw ConfigError(r.at("table"), "expected a non-empty array of [s, value]");
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string at = r.at("table") + "/" + std::to_string(i);
    if (!a[i].is_array() || a[i].size() != 2 || !a[i][0].is_number()) throw ConfigError(at, "expected [s, value]");
    samples.emplace_back(a[i][0].get<double>(), value(a[i][1], at + "/1"));
  }
  return BoundaryField::table(std::move(samples));
}

inline Region parse_region(const json& j, const std::string& where) {
  Reader r(j, where);
  const std::string kind = r.string("kind");
  Region region = Region::interval(0, 1);
  try {
    if (kind == "interval") {
      r.allow({"kind", "a", "b", "gamma", "lambda"});
      region = Region::interval(r.number("a", std::nullopt, false), r.number("b", std::nullopt, false));
    } else if (kind == "rectangle") {
      r.allow({"kind", "lx", "ly", "origin", "gamma", "lambda"});
      region = Region::rectangle(r.number("lx"), r.number("ly"), r.vec2("origin", Vec2{}));
    } else if (kind == "rounded_rectangle") {
      r.allow({"kind", "lx", "ly", "radius", "origin", "gamma", "lambda"});
      region = Region::rounded_rectangle(r.number("lx"), r.number("ly"), r.number("radius"), r.vec2("origin", Vec2{}));
    } else if (kind == "polygon" || kind == "convex_polygon") {
      r.allow({"kind", "vertices", "gamma", "lambda"});
      const auto& a = r.raw("vertices");
      if (!a.is_array() || a.size() < 3) throw ConfigError(r.at("vertices"), "expected at least 3 vertices");
      std::vector<Vec2> v;
      for (std::size_t i = 0; i < a.size(); ++i) v.push_back(Reader::to_vec2(a[i], r.at("vertices") + "/" + std::to_string(i)));
      region = kind == "polygon" ? Region::polygon(std::move(v)) : Region::convex_polygon(std::move(v));
    } else {
      throw ConfigError(r.at("kind"), "unknown region kind '" + kind + "'");
    }
  } catch (const GeometryError& e) {
    throw ConfigError(where, e.what());
  }
  if (r.has("gamma")) region = region.with_gamma(parse_field(r.raw("gamma"), r.at("gamma"), true));
  if (r.has("lambda")) {
    const auto& a = r.raw("lambda");
    if (!a.is_array()) throw ConfigError(r.at("lambda"), "expected an array of {direction, field}");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string at = r.at("lambda") + "/" + std::to_string(i);
      Reader e(a[i], at);
      e.allow({"direction", "field"});
      region = region.with_lambda(unit_direction(e.raw("direction"), e.at("direction")),
                                  parse_field(e.raw("field"), e.at("field"), false));
    }
  }
  return region;
}

inline StateSpec parse_state(const json& j, const std::string& where) {
  Reader r(j, where);
  StateSpec s;
  const std::string kind = r.string("kind");
  if (kind == "gaussian") {
    r.allow({"kind", "center", "width", "momentum", "wall_compatible"});
    s.kind = StateSpec::Kind::gaussian;
    s.center = r.vec2("center");
    s.width = r.number("width");
    s.momentum = r.vec2("momentum", Vec2{});
    s.wall_compatible = r.boolean("wall_compatible", false);
  } else if (kind == "eigenmode") {
    r.allow({"kind", "n"});
    s.kind = StateSpec::Kind::eigenmode;
    const auto& a = r.raw("n");
    if (a.is_number_integer()) {
      s.n = {a.get<int>(), 1};
    } else if (a.is_array() && a.size() == 2 && a[0].is_number_integer() && a[1].is_number_integer()) {
      s.n = {a[0].get<int>(), a[1].get<int>()};
    } else {
      throw ConfigError(r.at("n"), "expected an integer or [nx, ny]");
    }
    if (s.n[0] < 1 || s.n[1] < 1) throw ConfigError(r.at("n"), "quantum numbers must be positive");
  } else if (kind == "csv") {
    r.allow({"kind", "path"});
    s.kind = StateSpec::Kind::csv;
    s.path = r.string("path");
  } else if (kind == "random") {
    r.allow({"kind", "count", "packets", "width_min", "width_max", "margin", "momentum_max"});
    s.kind = StateSpec::Kind::random;
    s.count = r.integer("count", 1);
    s.random.packets = r.integer("packets", 2);
    s.random.width_min = r.number("width_min", 0.08);
    s.random.width_max = r.number("width_max", 0.15);
    s.random.margin = r.number("margin", 0.0, false);
    s.random.momentum_max = r.number("momentum_max", 3.0, false);
    if (s.random.width_max < s.random.width_min) throw ConfigError(r.at("width_max"), "must be >= width_min");
    if (s.random.margin < 0 || s.random.momentum_max < 0) throw ConfigError(where, "margin and momentum_max must be >= 0");
  } else {
    throw ConfigError(r.at("kind"), "unknown state kind '" + kind + "'");
  }
  return s;
}

inline Potential parse_potential(const json& j, const std::string& where) {
  Reader r(j, where);
  const std::string kind = r.string("kind");
  if (kind == "zero") {
    r.allow({"kind"});
    return Potential::zero();
  }
  if (kind == "harmonic") {
    r.allow({"kind", "omega", "center"});
    return Potential::harmonic(r.number("omega"), r.vec2("center", Vec2{}));
  }
  if (kind == "linear") {
    r.allow({"kind", "tilt"});
    return Potential::linear(r.vec2("tilt"));
  }
  throw ConfigError(r.at("kind"), "unknown potential kind '" + kind + "'");
}

inline Numerics parse_numerics(const json& j, const std::string& where) {
  Reader r(j, where);
  r.allow({"h", "dt", "steps", "record_every", "modes", "lines", "quadrature_points", "boundary_points", "n_range",
           "tolerance"});
  Numerics n;
  n.h = r.number("h", n.h);
  n.dt = r.number("dt", n.dt);
  n.steps = r.integer("steps", n.steps);
  n.record_every = r.integer("record_every", n.record_every);
  n.modes = r.integer("modes", n.modes);
  n.lines = r.integer("lines", n.lines);
  n.quadrature_points = r.integer("quadrature_points", n.quadrature_points);
  n.boundary_points = r.integer("boundary_points", n.boundary_points);
  n.tolerance = r.number("tolerance", n.tolerance);
  if (r.has("n_range")) {
    const auto& a = r.raw("n_range");
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer() ||
        a[0].get<int>() > a[1].get<int>())
      throw ConfigError(r.at("n_range"), "expected [n_min, n_max] with n_min <= n_max");
    n.n_range = {a[0].get<int>(), a[1].get<int>()};
  }
  if (n.boundary_points < 8) throw ConfigError(r.at("boundary_points"), "must be at least 8");
  return n;
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  detail::Reader r(j, "");
  r.allow({"experiment", "region", "state", "numerics", "potential", "mass", "seed", "output", "directions", "m"});
  ExperimentConfig c;
  const std::string name = r.string("experiment");
  const auto e = parse_experiment(name);
  if (!e) throw ConfigError("/experiment", "unknown experiment '" + name + "'");
  c.experiment = *e;
  c.region = detail::parse_region(r.raw("region"), "/region");
  if (r.has("state")) c.state = detail::parse_state(r.raw("state"), "/state");
  if (r.has("numerics")) c.numerics = detail::parse_numerics(r.raw("numerics"), "/numerics");
  if (r.has("potential")) c.potential = detail::parse_potential(r.raw("potential"), "/potential");
  c.mass = r.number("mass", 1.0);
  if (r.has("seed")) {
    const auto& s = r.raw("seed");
    if (!s.is_number_unsigned()) throw ConfigError("/seed", "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  c.output = r.string("output", std::string("out"));
  if (r.has("directions")) {
    const auto& a = r.raw("directions");
    if (!a.is_array() || a.empty()) throw ConfigError("/directions", "expected a non-empty array of [x, y]");
    c.directions.clear();
    for (std::size_t i = 0; i < a.size(); ++i) c.directions.push_back(detail::unit_direction(a[i], "/directions/" + std::to_string(i)));
  }
  if (r.has("m")) c.m = detail::unit_direction(r.raw("m"), "/m");
  if (c.region.dimension() == 1) {
    for (std::size_t i = 0; i < c.directions.size(); ++i)
      if (std::abs(c.directions[i].y) > 1e-12) throw ConfigError("/directions/" + std::to_string(i), "1D regions take [1, 0] only");
  }
  return c;
}

/// Parses config text; syntax errors report line and column.
inline ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line:column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), "JSON syntax error");
  }
  return parse_config(j);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot read config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace boxmom
