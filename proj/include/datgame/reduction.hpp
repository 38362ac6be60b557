#pragma once

#include <cstddef>
#include <vector>

#include "datgame/control_law.hpp"
#include "datgame/engagement.hpp"
#include "datgame/numerics.hpp"

namespace datgame {

// Influence functions of the two controls on the zero-effort misses:
//   h_p(t) = D_ep exp(A_ep (t_f - t)) B_ep
//   h_e(t) = D_ep exp(A_ep (t_f - t)) C_ep
//   g_e(t) = D_e  exp(A_e (t_f + t_c - t)) B_e
// Values on a uniform grid over [0, t_f] and its midpoints are tabulated at
// construction; other times evaluate the matrix exponential directly.
class Kernels {
 public:
  struct Values {
    double hp = 0.0;
    double he = 0.0;
    double ge = 0.0;
  };

  explicit Kernels(const EngagementScenario& scenario,
                   std::size_t memo_nodes = numerics::kDefaultGridNodes);

  Values at(double t) const;
  double h_p(double t) const { return at(t).hp; }
  double h_e(double t) const { return at(t).he; }
  double g_e(double t) const { return at(t).ge; }

  // D_e exp(A_e (t_f + t_c - t)) B_e for t in [t_f, t_f + t_c]; the evader's
  // reach kernel after the game ends.
  double g_e_tail(double t) const;

  // Direct evaluation, bypassing the table.
  Values direct(double t) const;

  double t_f() const { return t_f_; }
  double t_c() const { return t_c_; }
  const StateSpace& relative() const { return relative_; }
  const StateSpace& evader() const { return evader_; }

 private:
  StateSpace relative_;
  StateSpace evader_;
  double t_f_;
  double t_c_;
  double memo_step_ = 0.0;
  std::vector<Values> memo_;
};

double eval_control(const ControlLaw& law, const Kernels& kernels, double t);

struct KernelIntegrals {
  double hp2 = 0.0;    // int_0^tf h_p^2
  double he2 = 0.0;    // int_0^tf h_e^2
  double he_ge = 0.0;  // int_0^tf h_e g_e
  double ge2 = 0.0;    // int_0^tf g_e^2
  double ge = 0.0;     // int_0^tf g_e
  double mu_e = 0.0;   // int_tf^(tf+tc) |g_e tail|
};

struct GameCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double ae_max = 0.0;

  double s = 0.0;
  double nu_p = 0.0;
  double nu_e = 0.0;
  double G1 = 0.0;
  double G2 = 0.0;
  double G3 = 0.0;
  double a = 0.0;
  double d = 0.0;
  double mu_e = 0.0;
  double bound = 0.0;  // mu_e * ae_max
  double det_G = 0.0;
  double det_F = 0.0;
  double beta_star = 0.0;
  double int_ge = 0.0;

  Matrix2 G = Matrix2::Zero();
  Matrix2 G_tilde = Matrix2::Zero();
  Matrix2 G_bar = Matrix2::Zero();
  Matrix2 F = Matrix2::Zero();
  Matrix2 F_bar = Matrix2::Zero();

  // t_c == 0: the evader must hit w(t_f) = 0 exactly.
  bool degenerate_bound = false;
};

KernelIntegrals kernel_integrals(const Kernels& kernels,
                                 double tol = numerics::kDefaultQuadTol);

double mu_e(const EngagementScenario& scenario);
double mu_e(const Kernels& kernels, double tol = numerics::kDefaultQuadTol);

// int_0^tf h_e^2; the game is solvable iff beta exceeds it.
double solvability_threshold(const EngagementScenario& scenario);

// Throws SolvabilityError when beta <= int h_e^2.
GameCoefficients assemble_coefficients(const KernelIntegrals& integrals,
                                       double alpha, double beta,
                                       double ae_max, bool degenerate_bound);

GameCoefficients coefficients(const EngagementScenario& scenario);
GameCoefficients coefficients(const Kernels& kernels,
                              const EngagementScenario& scenario);

// Integrals of the first-order-lag kernels from antiderivatives of psi.
KernelIntegrals first_order_integrals(double tau_p, double tau_e, double t_f,
                                      double t_c);

GameCoefficients first_order_coefficients(double tau_p, double tau_e,
                                          double t_f, double t_c, double alpha,
                                          double beta, double ae_max);

// Kernels and coefficients of one scenario, shared by solver and simulator.
// Independent of the initial position.
class ReducedGame {
 public:
  explicit ReducedGame(EngagementScenario scenario,
                       std::size_t grid_nodes = numerics::kDefaultGridNodes);

  const EngagementScenario& scenario() const { return scenario_; }
  const Kernels& kernels() const { return kernels_; }
  const GameCoefficients& coeffs() const { return coeffs_; }
  Position initial() const { return scenario_.initial; }
  const numerics::TimeGrid& grid() const { return grid_; }

 private:
  EngagementScenario scenario_;
  Kernels kernels_;
  GameCoefficients coeffs_;
  numerics::TimeGrid grid_;
};

}  // namespace datgame
