#include "datgame/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace datgame {

using numerics::TimeGrid;

Playout playout_reduced(const Kernels& kernels, Position initial,
                        const ControlLaw& u_p, const ControlLaw& u_e,
                        const TimeGrid& grid) {
  const auto rhs = [&](double t, const Vector&) {
    const auto k = kernels.at(t);
    const double up = eval_control(u_p, kernels, t);
    const double ue = eval_control(u_e, kernels, t);
    Vector dx(4);
    dx << k.hp * up + k.he * ue, k.ge * ue, up * up, ue * ue;
    return dx;
  };
  Vector x0(4);
  x0 << initial.z0, initial.w0, 0.0, 0.0;
  const auto traj = numerics::ode_playout(rhs, x0, grid);

  Playout out;
  out.grid = grid;
  out.z.reserve(grid.size());
  out.w.reserve(grid.size());
  out.u_p.reserve(grid.size());
  out.u_e.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.z.push_back(traj[i](0));
    out.w.push_back(traj[i](1));
    out.u_p.push_back(eval_control(u_p, kernels, grid[i]));
    out.u_e.push_back(eval_control(u_e, kernels, grid[i]));
  }
  out.z_f = traj.back()(0);
  out.w_f = traj.back()(1);
  out.int_up2 = traj.back()(2);
  out.int_ue2 = traj.back()(3);
  return out;
}

Playout playout_reduced(const ReducedGame& game, Position initial,
                        const ControlLaw& u_p, const ControlLaw& u_e) {
  return playout_reduced(game.kernels(), initial, u_p, u_e, game.grid());
}

CostBreakdown cost_of(const Playout& p, double alpha, double beta) {
  CostBreakdown c;
  c.terminal = p.z_f * p.z_f;
  c.pursuer_effort = alpha * p.int_up2;
  c.evader_effort = beta * p.int_ue2;
  c.total = c.terminal + c.pursuer_effort - c.evader_effort;
  c.z_f = p.z_f;
  c.w_f = p.w_f;
  return c;
}

CostBreakdown evaluate_cost(const Kernels& kernels, double alpha, double beta,
                            Position initial, const ControlLaw& u_p,
                            const ControlLaw& u_e, const TimeGrid& grid) {
  return cost_of(playout_reduced(kernels, initial, u_p, u_e, grid), alpha, beta);
}

CostBreakdown evaluate_cost(const ReducedGame& game, Position initial,
                            const ControlLaw& u_p, const ControlLaw& u_e) {
  return evaluate_cost(game.kernels(), game.coeffs().alpha, game.coeffs().beta,
                       initial, u_p, u_e, game.grid());
}

TerminalCheck check_terminal(double w_f, const GameCoefficients& coeffs) {
  const double band = 1e-9 * std::max(1.0, coeffs.bound);
  const double excess = std::abs(w_f) - coeffs.bound;
  TerminalCheck r;
  r.satisfied = excess <= band;
  r.margin = r.satisfied ? std::max(0.0, -excess) : excess;
  return r;
}

FullPlayout playout_full(const ReducedGame& game, const ControlLaw& u_p,
                         const ControlLaw& u_e, const TimeGrid& grid) {
  const auto& sc = game.scenario();
  const auto& kernels = game.kernels();
  const StateSpace full = build_full_ss(sc.pursuer, sc.evader);
  const Eigen::Index n1 = sc.pursuer.order() + 2;
  const Eigen::Index np = sc.pursuer.order();
  const Eigen::Index ne = sc.evader.order();
  const Vector& C = *full.C;

  const auto rhs = [&](double t, const Vector& x) {
    return Vector(full.A * x + full.B * eval_control(u_p, kernels, t) +
                  C * eval_control(u_e, kernels, t));
  };

  FullPlayout out;
  out.grid = grid;
  out.x = numerics::ode_playout(rhs, initial_full_state(sc), grid);

  const StateSpace& rel = kernels.relative();
  const StateSpace& ev = kernels.evader();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vector& x = out.x[i];
    Vector x_ep(np + ne + 2);
    x_ep(0) = x(n1) - x(0);
    x_ep(1) = x(n1 + 1) - x(1);
    x_ep.segment(2, np) = x.segment(2, np);
    x_ep.segment(2 + np, ne) = x.segment(n1 + 2, ne);
    const Vector x_e = x.tail(ne + 2);
    const double t = grid[i];
    out.z.push_back(rel.D * numerics::mat_exp(rel.A, sc.t_f - t) * x_ep);
    out.w.push_back(ev.D * numerics::mat_exp(ev.A, sc.t_f + sc.t_c - t) * x_e);
  }
  out.miss = full.D * out.x.back();
  const double zf = out.z.back();
  if (std::abs(zf - out.miss) > 1e-9 * std::max(1.0, std::abs(out.miss)))
    throw InternalError("playout_full: z(t_f) differs from the miss distance");
  return out;
}

CostBreakdown cross_play(const ReducedGame& game, Position initial,
                         const ControlLaw& u_p, const ControlLaw& u_e) {
  return evaluate_cost(game, initial, u_p, u_e);
}

namespace {

constexpr std::size_t kProbeBasis = 8;

double rms(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

// int_0^tf g_e u on the game grid, with the same rule the cost uses.
double ge_moment(const ReducedGame& game, const ControlLaw& u) {
  return playout_reduced(game, {0.0, 0.0}, Constant{0.0}, u).w_f;
}

std::string describe(const char* side, int trial, double lhs, double rhs) {
  std::ostringstream os;
  os.precision(12);
  os << "saddle probe: " << side << " perturbation in trial " << trial
     << " breaks the inequality (" << lhs << " vs " << rhs << ")";
  return os.str();
}

}  // namespace

bool evader_perturbation_admissible(const ReducedGame& game, Position initial,
                                    const SaddleSolution& solution,
                                    const ControlLaw& delta) {
  const auto& c = game.coeffs();
  const double band = 1e-9 * std::max(1.0, c.bound);
  if (solution.region.label == RegionLabel::Omega) {
    const double w_f =
        playout_reduced(game, initial, solution.u_p, solution.u_e + delta).w_f;
    return std::abs(w_f) <= c.bound + band;
  }
  return std::abs(ge_moment(game, delta)) <= band;
}

ProbeReport saddle_probe(const ReducedGame& game, Position initial,
                         const SaddleSolution& sol, int n_trials,
                         std::uint64_t seed) {
  const auto& c = game.coeffs();
  const double t_f = game.scenario().t_f;
  const Playout base = playout_reduced(game, initial, sol.u_p, sol.u_e);
  const double J_star = cost_of(base, c.alpha, c.beta).total;

  ProbeReport report;
  report.value = J_star;
  report.slack = 1e-9 * std::max(1.0, std::abs(J_star));
  report.worst_evader_margin = INFINITY;
  report.worst_pursuer_margin = INFINITY;

  const double rms_p = std::max(rms(base.u_p), 1.0);
  const double rms_e = std::max(rms(base.u_e), 1.0);
  const double ge_sq = ge_moment(game, KernelCombo{0.0, 0.0, 1.0});
  const bool constrained = sol.region.label != RegionLabel::Omega;

  for (int trial = 0; trial < n_trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> log_amp(std::log(0.01), 0.0);

    const auto draw = [&](double target_rms) {
      LegendreSeries l{t_f, std::vector<double>(kProbeBasis)};
      double norm = 0.0;
      for (std::size_t k = 0; k < kProbeBasis; ++k) {
        l.coeffs[k] = normal(rng);
        norm += l.coeffs[k] * l.coeffs[k] / (2.0 * static_cast<double>(k) + 1.0);
      }
      const double scale = std::exp(log_amp(rng)) * target_rms / std::sqrt(norm);
      for (double& x : l.coeffs) x *= scale;
      return l;
    };

    const LegendreSeries dp = draw(rms_p);
    const LegendreSeries de_raw = draw(rms_e);

    ++report.trials;
    const double Jp =
        evaluate_cost(game, initial, sol.u_p + ControlLaw(dp), sol.u_e).total;
    report.worst_pursuer_margin = std::min(report.worst_pursuer_margin, Jp - J_star);
    if (Jp < J_star - report.slack)
      throw ProbeFailure(describe("pursuer", trial, Jp, J_star), dp.coeffs);

    ControlLaw de = de_raw;
    const double moment = ge_moment(game, de);
    if (constrained) {
      de = de + ControlLaw(KernelCombo{0.0, 0.0, -moment / ge_sq});
    } else {
      const double room = c.bound - std::abs(sol.w_f);
      if (std::abs(moment) > 0.5 * room && moment != 0.0) {
        LegendreSeries shrunk = de_raw;
        const double f = 0.5 * room / std::abs(moment);
        for (double& x : shrunk.coeffs) x *= f;
        de = shrunk;
      }
    }
    if (!evader_perturbation_admissible(game, initial, sol, de)) {
      ++report.evader_rejected;
      continue;
    }
    ++report.evader_accepted;
    const double Je = evaluate_cost(game, initial, sol.u_p, sol.u_e + de).total;
    report.worst_evader_margin = std::min(report.worst_evader_margin, J_star - Je);
    if (Je > J_star + report.slack)
      throw ProbeFailure(describe("evader", trial, Je, J_star), de_raw.coeffs);
  }
  return report;
}

}  // namespace datgame
