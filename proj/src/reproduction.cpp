#include "datgame/reproduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "datgame/errors.hpp"
#include "datgame/reduction.hpp"
#include "datgame/scenario_io.hpp"
#include "datgame/simulate.hpp"
#include "datgame/solver.hpp"

namespace datgame {

bool CriterionResult::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass || !c.gating; });
}

namespace {

class Collector {
 public:
  Collector(int id, std::string title, double tol_scale)
      : scale_(tol_scale) {
    r_.id = id;
    r_.title = std::move(title);
  }

  void near(std::string name, double value, double expected, double tol) {
    Check c{std::move(name), value, expected, tol * scale_, false, false, true, false};
    c.pass = std::abs(value - expected) <= c.tol;
    r_.checks.push_back(std::move(c));
  }
  void rel(std::string name, double value, double expected, double tol) {
    Check c{std::move(name), value, expected, tol * scale_, true, false, true, false};
    c.pass = std::abs(value - expected) <= c.tol * std::abs(expected);
    r_.checks.push_back(std::move(c));
  }
  // value must not exceed tol.
  void at_most(std::string name, double value, double tol) {
    Check c{std::move(name), value, 0.0, tol * scale_, false, false, true, false};
    c.pass = value <= c.tol;
    r_.checks.push_back(std::move(c));
  }
  void flag(std::string name, bool ok) {
    Check c{std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, false, true, true, ok};
    r_.checks.push_back(std::move(c));
  }
  void info(std::string name, double value) {
    Check c{std::move(name), value, 0.0, 0.0, false, false, false, true};
    r_.checks.push_back(std::move(c));
  }

  CriterionResult take() { return std::move(r_); }

 private:
  double scale_;
  CriterionResult r_;
};

ReducedGame builtin_game() { return ReducedGame(builtin_scenario()); }

constexpr Position kProbePosition{100.0, -100.0};

double rel_gap(double x, double y) {
  return std::abs(x - y) / std::max({1e-300, std::abs(x), std::abs(y)});
}

CriterionResult criterion_1(const ReproOptions& o) {
  Collector c(1, "solvability threshold beta*", o.tol_scale);
  const auto g = builtin_game();
  c.near("beta* = int h_e^2", g.coeffs().beta_star, 0.2438, 1e-4);
  const auto fo = first_order_coefficients(0.2, 0.1, 1.0, 0.9, 0.05, 0.3, 100.0);
  c.near("beta* closed form", fo.beta_star, 0.2438, 1e-4);
  c.flag("beta = 0.3 exceeds beta*", g.coeffs().beta > g.coeffs().beta_star);
  return c.take();
}

CriterionResult criterion_2(const ReproOptions& o) {
  Collector c(2, "constraint bound mu_e and mu_e*ae_max", o.tol_scale);
  const auto g = builtin_game();
  c.near("mu_e", g.coeffs().mu_e, 0.325, 5e-4);
  c.near("mu_e * ae_max", g.coeffs().bound, 32.5, 0.05);
  const double sigma = 9.0;
  const double closed = 0.01 * (1.0 - sigma + 0.5 * sigma * sigma - std::exp(-sigma));
  c.near("mu_e closed form", closed, 0.325, 5e-4);
  return c.take();
}

CriterionResult criterion_3(const ReproOptions& o) {
  Collector c(3, "coefficient matrices G and G_bar", o.tol_scale);
  const auto& k = builtin_game().coeffs();
  const double G_ref[2][2] = {{3.72, 2.04}, {-2.04, 5.91}};
  const double Gb_ref[2][2] = {{0.23, -0.08}, {-0.08, -0.14}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      char n[32];
      std::snprintf(n, sizeof n, "G(%d,%d)", i + 1, j + 1);
      c.near(n, k.G(i, j), G_ref[i][j], 0.01);
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      char n[32];
      std::snprintf(n, sizeof n, "G_bar(%d,%d)", i + 1, j + 1);
      c.near(n, k.G_bar(i, j), Gb_ref[i][j], 0.005);
    }
  return c.take();
}

CriterionResult criterion_4(const ReproOptions& o) {
  Collector c(4, "branch vectors omega_f+- at (100, -100)", o.tol_scale);
  const auto& k = builtin_game().coeffs();
  const auto bp = solve_erg_branch(k, kProbePosition, BranchSign::Plus);
  const auto bm = solve_erg_branch(k, kProbePosition, BranchSign::Minus);
  c.near("z_f+", bp.omega_f(0), 32.92, 0.05);
  c.near("v_f+", bp.omega_f(1), -11.05, 0.05);
  c.near("z_f-", bm.omega_f(0), 27.85, 0.05);
  c.near("v_f-", bm.omega_f(1), -1.80, 0.05);
  return c.take();
}

CriterionResult criterion_5(const ReproOptions& o) {
  Collector c(5, "branch game values at (100, -100)", o.tol_scale);
  const auto g = builtin_game();
  const auto bp = solve_erg_branch(g.coeffs(), kProbePosition, BranchSign::Plus);
  const auto bm = solve_erg_branch(g.coeffs(), kProbePosition, BranchSign::Minus);
  c.rel("(J+)*", bp.value, 1821.6, 0.01);
  c.rel("(J-)*", bm.value, 2659.1, 0.01);
  c.info("(J+)* by cost evaluation", evaluate_cost(g, kProbePosition, bp.u_p, bp.u_e).total);
  c.info("(J-)* by cost evaluation", evaluate_cost(g, kProbePosition, bm.u_p, bm.u_e).total);
  return c.take();
}

CriterionResult criterion_6(const ReproOptions& o) {
  Collector c(6, "branch playout terminals at (100, -100)", o.tol_scale);
  const auto g = builtin_game();
  const auto bp = solve_erg_branch(g.coeffs(), kProbePosition, BranchSign::Plus);
  const auto bm = solve_erg_branch(g.coeffs(), kProbePosition, BranchSign::Minus);
  const Playout pp = playout_reduced(g, kProbePosition, bp.u_p, bp.u_e);
  const Playout pm = playout_reduced(g, kProbePosition, bm.u_p, bm.u_e);
  c.near("ERG+ w(t_f)", pp.w_f, 32.5, 0.01);
  c.near("ERG+ z(t_f)", pp.z_f, 32.92, 0.05);
  c.near("ERG- w(t_f)", pm.w_f, -32.5, 0.01);
  c.near("ERG- z(t_f)", pm.z_f, 27.85, 0.05);
  return c.take();
}

CriterionResult criterion_7(const ReproOptions& o) {
  Collector c(7, "cross checks against the ERG+ solution at (100, -100)", o.tol_scale);
  const auto g = builtin_game();
  const auto& k = g.coeffs();
  const auto bp = solve_erg_branch(k, kProbePosition, BranchSign::Plus);
  // Constant evader command that lands exactly on w(t_f) = +bound.
  const double u_bar = (k.bound - kProbePosition.w0) / k.int_ge;
  c.near("constant evader command u_bar", u_bar, 101.92, 0.05);
  c.rel("J(u_p+, u_bar)",
        evaluate_cost(g, kProbePosition, bp.u_p, Constant{u_bar}).total, 1358.4, 0.01);
  const double tf = g.scenario().t_f;
  c.rel("J(400 (t - t_f), u_e+)",
        evaluate_cost(g, kProbePosition, AffineInTime{400.0, -400.0 * tf}, bp.u_e).total,
        2369.3, 0.01);
  c.info("J(400 (t_f - t), u_e+)",
         evaluate_cost(g, kProbePosition, AffineInTime{-400.0, 400.0 * tf}, bp.u_e).total);
  return c.take();
}

CriterionResult criterion_8(const ReproOptions& o) {
  Collector c(8, "cross-play table at (100, 50) and (-100, -20)", o.tol_scale);
  const auto g = builtin_game();
  const auto& k = g.coeffs();
  struct Column {
    Position p;
    double own, p_own_e_other, p_other_e_own;
  };
  const Column cols[] = {{{100.0, 50.0}, 1939.2, 418.8, 2347.7},
                         {{-100.0, -20.0}, 2488.2, 1463.1, 2836.7}};
  for (const auto& col : cols) {
    const SaddleSolution s = solve_rg(g, col.p);
    const BranchSign own = s.branch->sign;
    const auto other = solve_erg_branch(k, col.p, opposite(own));
    const std::string o_s = to_string(own);
    const std::string x_s = to_string(opposite(own));
    char at[48];
    std::snprintf(at, sizeof at, " at (%g, %g)", col.p.z0, col.p.w0);
    const double J_own = cross_play(g, col.p, s.u_p, s.u_e).total;
    const double J_a = cross_play(g, col.p, s.u_p, other.u_e).total;
    const double J_b = cross_play(g, col.p, other.u_p, s.u_e).total;
    c.flag(std::string("region") + at + " is Omega" + o_s,
           s.region.label == (own == BranchSign::Plus ? RegionLabel::OmegaPlus
                                                      : RegionLabel::OmegaMinus));
    c.rel("J(u_p" + o_s + ", u_e" + o_s + ")" + at, J_own, col.own, 0.01);
    c.rel("J(u_p" + o_s + ", u_e" + x_s + ")" + at, J_a, col.p_own_e_other, 0.01);
    c.rel("J(u_p" + x_s + ", u_e" + o_s + ")" + at, J_b, col.p_other_e_own, 0.01);
    c.flag(std::string("saddle ordering") + at, J_a < J_own && J_own < J_b);
  }
  return c.take();
}

CriterionResult criterion_9(const ReproOptions& o) {
  Collector c(9, "unconstrained playout terminal w(t_f)", o.tol_scale);
  const auto g = builtin_game();
  const Position inside{100.0, -50.0};
  const Position outside{100.0, -100.0};
  const auto ui = solve_urg(g, inside);
  const auto uo = solve_urg(g, outside);
  const double wi = playout_reduced(g, inside, ui.u_p, ui.u_e).w_f;
  const double wo = playout_reduced(g, outside, uo.u_p, uo.u_e).w_f;
  c.rel("w(t_f) at (100, -50)", wi, 4.895, 0.01);
  c.rel("w(t_f) at (100, -100)", wo, -45.105, 0.01);
  c.flag("terminal constraint holds at (100, -50)", check_terminal(wi, g.coeffs()).satisfied);
  c.flag("terminal constraint violated at (100, -100)",
         !check_terminal(wo, g.coeffs()).satisfied);
  c.info("a = G2/G1", g.coeffs().a);
  return c.take();
}

CriterionResult criterion_10(const ReproOptions& o) {
  Collector c(10, "penalty game convergence as eps -> 0", o.tol_scale);
  const auto& k = builtin_game().coeffs();
  const auto eps = default_eps_list();
  for (BranchSign sign : {BranchSign::Plus, BranchSign::Minus}) {
    const std::string tag = std::string("UPG") + to_string(sign);
    const auto recs = penalty_sweep(k, kProbePosition, sign, eps);
    const double J = solve_erg_branch(k, kProbePosition, sign).value;
    bool monotone = true;
    double worst_order_gap = 0.0;
    for (std::size_t i = 1; i < recs.size(); ++i) {
      monotone = monotone && recs[i].distance < recs[i - 1].distance;
      const double order = std::log(recs[i - 1].distance / recs[i].distance) /
                           std::log(recs[i - 1].eps / recs[i].eps);
      worst_order_gap = std::max(worst_order_gap, std::abs(order - 1.0));
    }
    c.flag(tag + " |omega_eps - omega_f| strictly decreasing", monotone);
    c.at_most(tag + " max |order - 1| over successive eps", worst_order_gap, 0.1);
    c.at_most(tag + " relative value gap at eps = 1e-6",
              std::abs(recs.back().value - J) / std::abs(J), 1e-3);
  }
  return c.take();
}

Position random_position(std::mt19937_64& rng, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  const double z = u(rng);
  return {z, u(rng)};
}

// Maximum relative gap between two evader or pursuer laws in kernel form.
double combo_gap(const ControlLaw& x, const ControlLaw& y) {
  const auto* a = x.get_if<KernelCombo>();
  const auto* b = y.get_if<KernelCombo>();
  if (!a || !b) throw InternalError("combo_gap: expected kernel-form laws");
  const double scale = std::max({1.0, std::abs(a->hp), std::abs(a->he), std::abs(a->ge)});
  return std::max({std::abs(a->hp - b->hp), std::abs(a->he - b->he),
                   std::abs(a->ge - b->ge)}) /
         scale;
}

CriterionResult criterion_11(const ReproOptions& o) {
  Collector c(11, "property suite", o.tol_scale);
  const auto g = builtin_game();
  const auto& k = g.coeffs();
  std::mt19937_64 rng(o.seed);

  // (a) region partition
  {
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
      Position p = random_position(rng, 400.0);
      if (i % 100 == 0) p.w0 = (i % 200 == 0 ? 1.0 : -1.0) * k.bound - k.a * p.z0;
      const double m = p.w0 + k.a * p.z0;
      const int hits = (std::abs(m) < k.bound) + (m >= k.bound) + (m <= -k.bound);
      const RegionLabel l = classify(k, p).label;
      const RegionLabel expect = std::abs(m) < k.bound ? RegionLabel::Omega
                                : m > 0.0              ? RegionLabel::OmegaPlus
                                                       : RegionLabel::OmegaMinus;
      ok = hits == 1 && l == expect;
    }
    c.flag("(a) exactly one region label on 1e4 positions", ok);
  }

  // (b), (g) random scenarios
  {
    double worst_terminal = 0.0;
    double worst_identity = 0.0;
    bool d_in_range = true;
    bool det_positive = true;
    for (int i = 0; i < 50; ++i) {
      const ReducedGame rg(random_scenario(rng), 1001);
      const auto& rk = rg.coeffs();
      const Position p = random_position(rng, 200.0);
      for (BranchSign s : {BranchSign::Plus, BranchSign::Minus}) {
        const auto b = solve_erg_branch(rk, p, s);
        const double w_f = playout_reduced(rg, p, b.u_p, b.u_e).w_f;
        worst_terminal =
            std::max(worst_terminal, std::abs(w_f - sign_value(s) * rk.bound) / rk.bound);
      }
      worst_identity =
          std::max(worst_identity, std::abs((rk.G1 - rk.nu_p) - (1.0 - rk.nu_e)));
      d_in_range = d_in_range && rk.d > 0.0 && rk.d < 1.0;
      det_positive = det_positive && rk.det_G > 0.0 && rk.det_F > 0.0;
    }
    c.at_most("(b) max relative | |w_f| - bound | over 50 scenarios", worst_terminal, 1e-6);
    c.at_most("(g) max |(G1 - nu_p) - (1 - nu_e)|", worst_identity, 1e-10);
    c.flag("(g) 0 < d < 1 on every scenario", d_in_range);
    c.flag("(g) det G > 0 and det F > 0 on every scenario", det_positive);
  }

  // (c) homogeneity
  {
    double worst = 0.0;
    const Position probes[] = {{100.0, -50.0}, {100.0, 50.0}, {-100.0, -20.0}};
    for (double kk : {0.5, 3.0, 7.25}) {
      EngagementScenario sc = builtin_scenario();
      sc.ae_max *= kk;
      const ReducedGame scaled(sc);
      for (const Position& p : probes) {
        const SaddleSolution s1 = solve_rg(g, p);
        const SaddleSolution sk = solve_rg(scaled, {kk * p.z0, kk * p.w0});
        worst = std::max(worst, rel_gap(sk.value, kk * kk * s1.value));
        const auto* a = s1.u_e.get_if<KernelCombo>();
        const auto* b = sk.u_e.get_if<KernelCombo>();
        const auto* ap = s1.u_p.get_if<KernelCombo>();
        const auto* bp = sk.u_p.get_if<KernelCombo>();
        worst = std::max({worst, rel_gap(b->he, kk * a->he), rel_gap(bp->hp, kk * ap->hp)});
        if (a->ge != 0.0) worst = std::max(worst, rel_gap(b->ge, kk * a->ge));
      }
    }
    c.at_most("(c) max relative homogeneity defect", worst, 1e-9);
  }

  // (d) boundary continuity
  {
    double worst = 0.0;
    const double eta = 1e-9 * k.bound;
    for (double side : {1.0, -1.0}) {
      for (double z0 : {-150.0, 0.0, 80.0}) {
        const double w_edge = side * k.bound - k.a * z0;
        const SaddleSolution in = solve_rg(g, {z0, w_edge - side * eta});
        const SaddleSolution out = solve_rg(g, {z0, w_edge + side * eta});
        if (in.region.label != RegionLabel::Omega ||
            out.region.label == RegionLabel::Omega)
          worst = INFINITY;
        worst = std::max({worst, combo_gap(in.u_p, out.u_p), combo_gap(in.u_e, out.u_e)});
      }
    }
    c.at_most("(d) max control gap across the Omega boundary", worst, 1e-6);
  }

  // (e) saddle probes
  {
    const Position probes[] = {{100.0, -50.0}, {100.0, 50.0}, {-100.0, -20.0}};
    for (const Position& p : probes) {
      const SaddleSolution s = solve_rg(g, p);
      const std::string name = std::string("(e) saddle probe in ") + to_string(s.region.label);
      try {
        const ProbeReport r = saddle_probe(g, p, s, 100, o.seed);
        c.flag(name, r.trials == 100 && r.evader_accepted == 100);
        c.info(name + ": worst evader margin", r.worst_evader_margin);
        c.info(name + ": worst pursuer margin", r.worst_pursuer_margin);
      } catch (const ProbeFailure& e) {
        c.flag(name + ": " + e.what(), false);
      }
    }
  }

  // (f) closed forms against the generic path
  {
    double worst = 0.0;
    std::vector<EngagementScenario> cases{builtin_scenario()};
    for (int i = 0; i < 10; ++i) cases.push_back(random_first_order_scenario(rng));
    for (const auto& sc : cases) {
      const double tp = sc.pursuer.inp(0) > 0 ? 1.0 / sc.pursuer.inp(0) : 0.0;
      const double te = 1.0 / sc.evader.inp(0);
      const auto kk = Kernels(sc, 0);
      const KernelIntegrals gi = kernel_integrals(kk);
      const KernelIntegrals fi = first_order_integrals(tp, te, sc.t_f, sc.t_c);
      for (auto [x, y] : {std::pair{gi.hp2, fi.hp2}, {gi.he2, fi.he2}, {gi.he_ge, fi.he_ge},
                          {gi.ge2, fi.ge2}, {gi.ge, fi.ge}, {gi.mu_e, fi.mu_e}})
        worst = std::max(worst, rel_gap(x, y));
      const auto gc = coefficients(kk, sc);
      const auto fc = first_order_coefficients(tp, te, sc.t_f, sc.t_c, sc.alpha, sc.beta,
                                               sc.ae_max);
      for (auto [x, y] : {std::pair{gc.s, fc.s}, {gc.G2, fc.G2}, {gc.G3, fc.G3},
                          {gc.a, fc.a}, {gc.d, fc.d}, {gc.det_F, fc.det_F}})
        worst = std::max(worst, rel_gap(x, y));
    }
    c.at_most("(f) max relative gap closed form vs matrix exponential", worst, 1e-8);
  }

  // (h) interior case infeasible outside Omega
  {
    bool infeasible = true;
    bool equivalent = true;
    int outside = 0;
    while (outside < 1000) {
      const Position p = random_position(rng, 400.0);
      const Region r = classify(k, p);
      for (BranchSign s : {BranchSign::Plus, BranchSign::Minus}) {
        const CaseIiiDiagnostic d = case_iii(k, p, s);
        equivalent = equivalent && d.interior_feasible == d.offset_feasible;
      }
      if (r.label == RegionLabel::Omega) continue;
      ++outside;
      try {
        check_case_iii_infeasible(k, p);
      } catch (const InternalError&) {
        infeasible = false;
      }
    }
    c.flag("(h) interior case infeasible on 1e3 positions outside Omega", infeasible);
    c.flag("(h) interior condition matches the interval on w0 + a z0", equivalent);
  }
  return c.take();
}

}  // namespace

CriterionResult run_criterion(int id, const ReproOptions& o) {
  switch (id) {
    case 1: return criterion_1(o);
    case 2: return criterion_2(o);
    case 3: return criterion_3(o);
    case 4: return criterion_4(o);
    case 5: return criterion_5(o);
    case 6: return criterion_6(o);
    case 7: return criterion_7(o);
    case 8: return criterion_8(o);
    case 9: return criterion_9(o);
    case 10: return criterion_10(o);
    case 11: return criterion_11(o);
    default: throw std::out_of_range("run_criterion: no criterion " + std::to_string(id));
  }
}

std::vector<CriterionResult> run_all(const ReproOptions& o) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= kCriterionCount; ++i) out.push_back(run_criterion(i, o));
  return out;
}

void print_criterion(std::ostream& os, const CriterionResult& r, bool details) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "criterion %2d: %s  %s\n", r.id, r.pass() ? "PASS" : "FAIL",
                r.title.c_str());
  os << buf;
  if (!details) return;
  for (const Check& c : r.checks) {
    const char* status = !c.gating ? "info" : c.pass ? "ok" : "FAIL";
    if (c.is_flag) {
      std::snprintf(buf, sizeof buf, "    %-4s  %s\n", status, c.name.c_str());
    } else if (!c.gating) {
      std::snprintf(buf, sizeof buf, "    %-4s  %-52s %.10g\n", status, c.name.c_str(), c.value);
    } else if (c.expected == 0.0 && !c.relative) {
      std::snprintf(buf, sizeof buf, "    %-4s  %-52s %.6g  (limit %.3g)\n", status,
                    c.name.c_str(), c.value, c.tol);
    } else {
      std::snprintf(buf, sizeof buf, "    %-4s  %-52s %.8g  expected %.8g %s %.3g%s\n", status,
                    c.name.c_str(), c.value, c.expected, "+-", c.relative ? c.tol * 100 : c.tol,
                    c.relative ? "%" : "");
    }
    os << buf;
  }
}

ControllerModel random_controller(std::mt19937_64& rng, int order) {
  std::uniform_real_distribution<double> tau(0.05, 0.4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (order == 0) return ControllerModel::zero_order(0.5 + unit(rng));
  ControllerModel m;
  m.sys = Matrix::Zero(order, order);
  m.inp = Vector::Zero(order);
  m.out = Vector::Zero(order);
  for (int i = 0; i < order; ++i) {
    const double t = tau(rng);
    m.sys(i, i) = -1.0 / t;
    if (i > 0) m.sys(i, i - 1) = 1.0 / t;
    else m.inp(0) = 1.0 / t;
  }
  m.out(order - 1) = 1.0;
  if (unit(rng) < 0.25) m.feed = 0.3 * unit(rng);
  return m;
}

namespace {

EngagementScenario finish_random(std::mt19937_64& rng, EngagementScenario s) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  s.t_f = 0.5 + 1.5 * unit(rng);
  s.t_c = 0.1 + 1.4 * unit(rng);
  s.alpha = 0.02 + 0.5 * unit(rng);
  s.ae_max = 20.0 + 130.0 * unit(rng);
  s.beta = 1.0;
  s.beta = solvability_threshold(s) * (1.2 + 1.8 * unit(rng));
  s.initial = random_position(rng, 200.0);
  return s;
}

}  // namespace

EngagementScenario random_scenario(std::mt19937_64& rng, int max_order) {
  std::uniform_int_distribution<int> order(0, max_order);
  EngagementScenario s;
  s.pursuer = random_controller(rng, order(rng));
  s.evader = random_controller(rng, order(rng));
  return finish_random(rng, s);
}

EngagementScenario random_first_order_scenario(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> tau(0.05, 0.5);
  EngagementScenario s;
  s.pursuer = ControllerModel::first_order(tau(rng));
  s.evader = ControllerModel::first_order(tau(rng));
  return finish_random(rng, s);
}

}  // namespace datgame
