#include "datgame/scenario_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "datgame/errors.hpp"
#include "json.hpp"

namespace datgame {

using nlohmann::json;

EngagementScenario builtin_scenario(Position initial) {
  EngagementScenario s;
  s.pursuer = ControllerModel::first_order(0.2);
  s.evader = ControllerModel::first_order(0.1);
  s.t_f = 1.0;
  s.t_c = 0.9;
  s.alpha = 0.05;
  s.beta = 0.3;
  s.ae_max = 100.0;
  s.initial = initial;
  return s;
}

std::vector<Position> builtin_table_positions() {
  return {{100.0, 50.0}, {-100.0, -20.0}};
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ScenarioError("scenario: " + path + ": " + msg);
}

const json& child(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing key");
  return *it;
}

double number(const json& obj, const std::string& path, const char* key) {
  const json& v = child(obj, path, key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double positive(const json& obj, const std::string& path, const char* key) {
  const double v = number(obj, path, key);
  if (!(v > 0.0)) fail(path + "." + key, "must be positive");
  return v;
}

Vector vector_of(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a number");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

Matrix matrix_of(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of rows");
  const auto n = static_cast<Eigen::Index>(v.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const Vector row = vector_of(v[static_cast<std::size_t>(i)], row_path);
    if (row.size() != n) fail(row_path, "matrix must be square");
    out.row(i) = row.transpose();
  }
  return out;
}

ControllerModel player(const json& obj, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  if (obj.contains("first_order_tau")) {
    if (obj.size() != 1) fail(path, "first_order_tau excludes other keys");
    return ControllerModel::first_order(positive(obj, path, "first_order_tau"));
  }
  ControllerModel m;
  m.sys = matrix_of(child(obj, path, "A"), path + ".A");
  m.inp = vector_of(child(obj, path, "b"), path + ".b");
  m.out = vector_of(child(obj, path, "c"), path + ".c");
  m.feed = number(obj, path, "d");
  if (m.inp.size() != m.order()) fail(path + ".b", "length must match A");
  if (m.out.size() != m.order()) fail(path + ".c", "length must match A");
  return m;
}

Position position(const json& obj, const std::string& path) {
  return {number(obj, path, "z0"), number(obj, path, "w0")};
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario: syntax error: ") + e.what());
  }
  ScenarioFile out;
  EngagementScenario& s = out.scenario;

  const json& players = child(doc, "$", "players");
  s.pursuer = player(child(players, "players", "pursuer"), "players.pursuer");
  s.evader = player(child(players, "players", "evader"), "players.evader");

  const json& horizon = child(doc, "$", "horizon");
  s.t_f = positive(horizon, "horizon", "t_f");
  const bool has_tc = horizon.contains("t_c");
  const bool has_nu = horizon.contains("nu");
  if (has_tc == has_nu) fail("horizon", "exactly one of t_c and nu is required");
  if (has_tc) {
    s.t_c = number(horizon, "horizon", "t_c");
    if (!(s.t_c >= 0.0)) fail("horizon.t_c", "must be nonnegative");
  } else {
    const double nu = number(horizon, "horizon", "nu");
    if (!(nu >= 0.0)) fail("horizon.nu", "must be nonnegative");
    s.t_c = EngagementScenario::t_c_from_ratio(s.t_f, nu);
  }

  const json& weights = child(doc, "$", "weights");
  s.alpha = positive(weights, "weights", "alpha");
  s.beta = positive(weights, "weights", "beta");
  s.ae_max = positive(child(doc, "$", "evader_bound"), "evader_bound", "ae_max");

  const json& init = child(doc, "$", "initial");
  if (!init.is_object()) fail("initial", "expected an object");
  const bool direct = init.contains("z0") || init.contains("w0");
  const bool geom = init.contains("Vp") || init.contains("Ve") ||
                    init.contains("phi_p0") || init.contains("phi_e0");
  if (direct == geom)
    fail("initial", "give either {z0, w0} or {Vp, Ve, phi_p0, phi_e0}");
  if (direct) {
    s.initial = position(init, "initial");
  } else {
    EngagementGeometry g;
    g.Vp = positive(init, "initial", "Vp");
    g.Ve = positive(init, "initial", "Ve");
    g.phi_p0 = number(init, "initial", "phi_p0");
    g.phi_e0 = number(init, "initial", "phi_e0");
    s.geometry = g;
    s.initial = initial_zem(g, s.t_f, s.t_c);
  }

  if (doc.contains("positions")) {
    const json& list = doc["positions"];
    if (!list.is_array()) fail("positions", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      out.positions.push_back(position(list[i], "positions[" + std::to_string(i) + "]"));
  }

  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  return out;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void write_trajectory_csv(std::ostream& os, const Playout& p) {
  os << "t,u_p,u_e,z,w\n";
  char buf[160];
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", p.grid[i],
                  p.u_p[i], p.u_e[i], p.z[i], p.w[i]);
    os << buf;
  }
}

void ResultTable::add(std::string name, double value, std::string source) {
  ResultRow row{std::move(name), value, std::move(source)};
  rows_.push_back(row);
  lines_.push_back({true, std::move(row), {}});
}

void ResultTable::add_text(std::string name, std::string text) {
  lines_.push_back({false, {std::move(name), 0.0, {}}, std::move(text)});
}

void ResultTable::print(std::ostream& os) const {
  std::size_t width = 0;
  for (const auto& l : lines_) width = std::max(width, l.row.name.size());
  char buf[64];
  for (const auto& l : lines_) {
    os << std::left << std::setw(static_cast<int>(width) + 2) << l.row.name;
    if (l.numeric) {
      std::snprintf(buf, sizeof buf, "%16.10g", l.row.value);
      os << buf << "  [" << l.row.source << "]\n";
    } else {
      os << l.text << "\n";
    }
  }
}

}  // namespace datgame
