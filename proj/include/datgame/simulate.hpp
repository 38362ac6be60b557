#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "datgame/control_law.hpp"
#include "datgame/errors.hpp"
#include "datgame/reduction.hpp"
#include "datgame/solution.hpp"

namespace datgame {

struct Playout {
  numerics::TimeGrid grid = numerics::TimeGrid::uniform(0.0, 1.0, 2);
  std::vector<double> z;
  std::vector<double> w;
  std::vector<double> u_p;
  std::vector<double> u_e;
  double z_f = 0.0;
  double w_f = 0.0;
  double int_up2 = 0.0;  // int_0^tf u_p^2
  double int_ue2 = 0.0;  // int_0^tf u_e^2
};

// z' = h_p u_p + h_e u_e, w' = g_e u_e from the given position, with the two
// effort integrals carried as extra states.
Playout playout_reduced(const Kernels& kernels, Position initial,
                        const ControlLaw& u_p, const ControlLaw& u_e,
                        const numerics::TimeGrid& grid);
Playout playout_reduced(const ReducedGame& game, Position initial,
                        const ControlLaw& u_p, const ControlLaw& u_e);

struct CostBreakdown {
  double terminal = 0.0;        // z_f^2
  double pursuer_effort = 0.0;  // alpha int u_p^2
  double evader_effort = 0.0;   // beta int u_e^2
  double total = 0.0;
  double z_f = 0.0;
  double w_f = 0.0;
};

CostBreakdown cost_of(const Playout& playout, double alpha, double beta);

CostBreakdown evaluate_cost(const Kernels& kernels, double alpha, double beta,
                            Position initial, const ControlLaw& u_p,
                            const ControlLaw& u_e,
                            const numerics::TimeGrid& grid);
CostBreakdown evaluate_cost(const ReducedGame& game, Position initial,
                            const ControlLaw& u_p, const ControlLaw& u_e);

struct TerminalCheck {
  bool satisfied = false;
  // bound - |w_f| when satisfied, |w_f| - bound otherwise.
  double margin = 0.0;
};

// |w_f| <= bound with a band of 1e-9 * max(1, bound).
TerminalCheck check_terminal(double w_f, const GameCoefficients& coeffs);

struct FullPlayout {
  numerics::TimeGrid grid = numerics::TimeGrid::uniform(0.0, 1.0, 2);
  std::vector<Vector> x;
  std::vector<double> z;  // D_ep exp(A_ep (t_f - t)) X_ep(t)
  std::vector<double> w;  // D_e exp(A_e (t_f + t_c - t)) X_e(t)
  double miss = 0.0;      // y_e(t_f) - y_p(t_f)
};

// Integrates both players' full kinematics and reconstructs the zero-effort
// misses. Throws InternalError if z(t_f) differs from the miss distance.
FullPlayout playout_full(const ReducedGame& game, const ControlLaw& u_p,
                         const ControlLaw& u_e, const numerics::TimeGrid& grid);

CostBreakdown cross_play(const ReducedGame& game, Position initial,
                         const ControlLaw& u_p, const ControlLaw& u_e);

struct ProbeReport {
  int trials = 0;
  int evader_accepted = 0;
  int evader_rejected = 0;
  double value = 0.0;
  // min over trials of J* - J(u_p*, u_e* + d), and of J(u_p* + d, u_e*) - J*.
  double worst_evader_margin = 0.0;
  double worst_pursuer_margin = 0.0;
  double slack = 0.0;
};

class ProbeFailure : public GameError {
 public:
  ProbeFailure(const std::string& what, std::vector<double> coeffs)
      : GameError(what), coeffs_(std::move(coeffs)) {}
  const std::vector<double>& perturbation() const { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

// Whether an evader perturbation keeps the terminal class of the solution:
// int g_e d = 0 on Omega+-, |w_f| <= bound on Omega.
bool evader_perturbation_admissible(const ReducedGame& game, Position initial,
                                    const SaddleSolution& solution,
                                    const ControlLaw& delta);

// Random Legendre-basis perturbations of each player's law. Throws
// ProbeFailure on the first trial breaking the saddle inequality by more
// than 1e-9 * max(1, |J*|).
ProbeReport saddle_probe(const ReducedGame& game, Position initial,
                         const SaddleSolution& solution, int n_trials,
                         std::uint64_t seed);

}  // namespace datgame
