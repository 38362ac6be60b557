// datgame: classify, solve, sweep and reproduce the constrained
// pursuit-evasion game from JSON scenario files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "datgame/errors.hpp"
#include "datgame/reduction.hpp"
#include "datgame/reproduction.hpp"
#include "datgame/scenario_io.hpp"
#include "datgame/simulate.hpp"
#include "datgame/solver.hpp"

namespace {

using namespace datgame;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolvability = 2;
constexpr int kExitRepro = 3;
constexpr int kExitInternal = 4;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void add_law(ResultTable& t, const std::string& who, const ControlLaw& law) {
  const auto* k = law.get_if<KernelCombo>();
  if (!k) return;
  if (who == "u_p") {
    t.add("u_p coefficient on h_p", k->hp, "u_p = c h_p");
  } else {
    t.add("u_e coefficient on h_e", k->he, "u_e = c1 h_e + c2 g_e");
    t.add("u_e coefficient on g_e", k->ge, "u_e = c1 h_e + c2 g_e");
  }
}

void write_csv_file(const std::string& path, const Playout& p) {
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot write " + path);
  write_trajectory_csv(out, p);
}

int cmd_classify(const std::string& file) {
  const ScenarioFile sf = load_scenario(file);
  const ReducedGame game(sf.scenario);
  const auto& c = game.coeffs();
  const Region r = classify(c, game.initial());
  ResultTable t;
  t.add_text("region", to_string(r.label));
  t.add("a", c.a, "a = G2/G1");
  t.add("mu_e * ae_max", c.bound, "reachability bound");
  t.add("w0 + a z0", r.offset, "unconstrained terminal w");
  t.add("margin", r.margin, "distance to nearest region boundary");
  if (c.degenerate_bound) t.add_text("note", "t_c = 0: constraint is w(t_f) = 0");
  t.print(std::cout);
  return kExitOk;
}

int cmd_solve(const std::string& file, std::size_t grid, const std::string& csv,
              const std::string& branch) {
  const ScenarioFile sf = load_scenario(file);
  const ReducedGame game(sf.scenario, grid);
  const auto& c = game.coeffs();
  const Position p = game.initial();
  const Region r = classify(c, p);

  ResultTable t;
  t.add_text("region", to_string(r.label));
  t.add("beta*", c.beta_star, "solvability threshold int h_e^2");
  t.add("s", c.s, "1 + nu_p - nu_e");
  t.add("mu_e * ae_max", c.bound, "reachability bound");
  t.add("w0 + a z0", r.offset, "unconstrained terminal w");

  ControlLaw u_p;
  ControlLaw u_e;
  if (branch == "auto") {
    const SaddleSolution s = solve_rg(game, p);
    u_p = s.u_p;
    u_e = s.u_e;
    t.add_text("solution", s.branch ? std::string("ERG") + to_string(s.branch->sign)
                                    : std::string("URG"));
    t.add("value", s.value, s.branch ? "branch quadratic form" : "cost of URG controls");
    t.add("z_f", s.z_f, s.branch ? "z_f of G omega = b" : "z0 / s");
    t.add("w_f", s.w_f, s.branch ? "+-bound" : "w0 + a z0");
  } else {
    const BranchSign sign = branch == "plus" ? BranchSign::Plus : BranchSign::Minus;
    const BranchSolution b = solve_erg_branch(c, p, sign);
    u_p = b.u_p;
    u_e = b.u_e;
    t.add_text("solution", std::string("ERG") + to_string(sign) + " (forced)");
    t.add("value", b.value, "branch quadratic form omega^T G_tilde omega");
    t.add("z_f", b.omega_f(0), "z_f of G omega = b");
    t.add("v_f", b.omega_f(1), "v_f of G omega = b");
    t.add("w_f", sign_value(sign) * c.bound, "+-bound");
  }
  add_law(t, "u_p", u_p);
  add_law(t, "u_e", u_e);

  const Playout pl = playout_reduced(game, p, u_p, u_e);
  const CostBreakdown cost = cost_of(pl, c.alpha, c.beta);
  t.add("playout z_f", pl.z_f, "RK4 playout");
  t.add("playout w_f", pl.w_f, "RK4 playout");
  t.add("playout cost", cost.total, "z_f^2 + alpha int u_p^2 - beta int u_e^2");
  const TerminalCheck tc = check_terminal(pl.w_f, c);
  t.add_text("terminal constraint", tc.satisfied ? "satisfied" : "violated");
  t.print(std::cout);
  if (!csv.empty()) write_csv_file(csv, pl);
  return kExitOk;
}

int cmd_sweep(const std::string& file, const std::string& sign_text, double eps_from,
              double eps_to, int steps, const std::string& csv) {
  if (!(eps_from > 0.0) || !(eps_to > 0.0) || !(eps_from > eps_to) || steps < 2)
    throw CLI::ValidationError("sweep", "need eps-from > eps-to > 0 and eps-steps >= 2");
  const BranchSign sign =
      (sign_text == "+" || sign_text == "plus") ? BranchSign::Plus : BranchSign::Minus;
  const ScenarioFile sf = load_scenario(file);
  const GameCoefficients c = coefficients(sf.scenario);

  std::vector<double> eps;
  const double l0 = std::log10(eps_from);
  const double l1 = std::log10(eps_to);
  for (int i = 0; i < steps; ++i)
    eps.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (steps - 1)));
  const auto recs = penalty_sweep(c, sf.scenario.initial, sign, eps);

  std::ostringstream os;
  os << "eps,z_f_eps,v_f_eps,value,omega_gap\n";
  char buf[160];
  for (const auto& r : recs) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", r.eps, r.omega(0),
                  r.omega(1), r.value, r.distance);
    os << buf;
  }
  if (csv.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(csv);
    if (!out) throw ScenarioError("cannot write " + csv);
    out << os.str();
  }
  return kExitOk;
}

int cmd_table1(const std::string& file) {
  EngagementScenario sc = builtin_scenario();
  std::vector<Position> positions = builtin_table_positions();
  if (!file.empty()) {
    const ScenarioFile sf = load_scenario(file);
    sc = sf.scenario;
    if (sf.positions.size() != 2)
      throw ScenarioError("scenario: positions: table1 needs exactly two positions");
    positions = sf.positions;
  }
  const ReducedGame game(sc);
  bool ordered = true;
  for (const Position& p : positions) {
    const SaddleSolution s = solve_rg(game, p);
    char head[96];
    std::snprintf(head, sizeof head, "(z0, w0) = (%g, %g) in %s", p.z0, p.w0,
                  to_string(s.region.label));
    std::cout << head << "\n";
    if (!s.branch) {
      std::cout << "  unconstrained region: no branch pairing\n";
      continue;
    }
    const BranchSign own = s.branch->sign;
    const BranchSign other = opposite(own);
    const BranchSolution alt = solve_erg_branch(game.coeffs(), p, other);
    const double J = cross_play(game, p, s.u_p, s.u_e).total;
    const double Ja = cross_play(game, p, s.u_p, alt.u_e).total;
    const double Jb = cross_play(game, p, alt.u_p, s.u_e).total;
    char line[96];
    const auto row = [&](BranchSign a, BranchSign b, double v) {
      std::snprintf(line, sizeof line, "  (u_p%s, u_e%s)  %10.1f\n", to_string(a),
                    to_string(b), v);
      std::cout << line;
    };
    row(own, own, J);
    row(own, other, Ja);
    row(other, own, Jb);
    const bool ok = Ja < J && J < Jb;
    ordered = ordered && ok;
    std::cout << "  saddle ordering " << (ok ? "OK" : "VIOLATED") << "\n";
  }
  return ordered ? kExitOk : kExitInternal;
}

int cmd_repro(double tol_scale, std::uint64_t seed, bool details) {
  ReproOptions o;
  o.tol_scale = tol_scale;
  o.seed = seed;
  bool all = true;
  for (int i = 1; i <= kCriterionCount; ++i) {
    const CriterionResult r = run_criterion(i, o);
    print_criterion(std::cout, r, details);
    all = all && r.pass();
  }
  std::cout << (all ? "all criteria pass\n" : "some criteria FAIL\n");
  return all ? kExitOk : kExitRepro;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-loop saddle points of the constrained defender-attacker-target game"};
  app.require_subcommand(1);

  std::string file;
  std::size_t grid = numerics::kDefaultGridNodes;
  std::string csv;
  std::string branch = "auto";
  std::string sign = "+";
  double eps_from = 1.0;
  double eps_to = 1e-6;
  int eps_steps = 7;
  double tol_scale = 1.0;
  std::uint64_t seed = ReproOptions{}.seed;
  bool details = false;

  auto* classify_cmd = app.add_subcommand("classify", "Region of the initial position");
  classify_cmd->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);

  auto* solve_cmd = app.add_subcommand("solve", "Saddle-point solution and playout");
  solve_cmd->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--grid", grid, "Playout grid nodes")->check(CLI::Range(2, 10000000));
  solve_cmd->add_option("--csv", csv, "Write trajectory CSV");
  solve_cmd->add_option("--branch", branch, "auto, plus or minus")
      ->check(CLI::IsMember({"auto", "plus", "minus"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "Penalty-game sweep over eps");
  sweep_cmd->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--sign", sign, "Branch sign")
      ->check(CLI::IsMember({"+", "-", "plus", "minus"}));
  sweep_cmd->add_option("--eps-from", eps_from, "Largest eps");
  sweep_cmd->add_option("--eps-to", eps_to, "Smallest eps");
  sweep_cmd->add_option("--eps-steps", eps_steps, "Number of geometric steps");
  sweep_cmd->add_option("--csv", csv, "Write CSV to this path instead of stdout");

  auto* table_cmd = app.add_subcommand("table1", "Cross-play table of branch controls");
  table_cmd->add_option("file", file, "Scenario file with two positions")
      ->check(CLI::ExistingFile);

  auto* repro_cmd = app.add_subcommand("repro", "First-order study with pass/fail checks");
  repro_cmd->add_option("--tol-scale", tol_scale, "Multiplier on every tolerance")
      ->check(CLI::PositiveNumber);
  repro_cmd->add_option("--seed", seed, "Seed for randomized checks");
  repro_cmd->add_flag("--details", details, "Print every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(file);
    if (*solve_cmd) return cmd_solve(file, grid, csv, branch);
    if (*sweep_cmd) return cmd_sweep(file, sign, eps_from, eps_to, eps_steps, csv);
    if (*table_cmd) return cmd_table1(file);
    if (*repro_cmd) return cmd_repro(tol_scale, seed, details);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolvabilityError& e) {
    std::cerr << "error: " << e.what()
              << " (conjugate point: beta must exceed int_0^tf h_e^2)\n";
    return kExitSolvability;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
