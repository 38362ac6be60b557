#pragma once

#include <optional>

#include "datgame/numerics.hpp"

namespace datgame {

// One player's linear controller:
//   a   = out^T x + feed * u
//   x'  = sys x + inp * u,   x(0) = 0
// The control u is the acceleration command; a is the lateral acceleration.
struct ControllerModel {
  Matrix sys = Matrix(0, 0);
  Vector inp = Vector(0);
  Vector out = Vector(0);
  double feed = 0.0;

  Eigen::Index order() const { return sys.rows(); }

  // Throws std::invalid_argument on inconsistent dimensions or non-finite data.
  void validate() const;

  // Strictly proper first-order lag with time constant tau.
  static ControllerModel first_order(double tau);
  // Acceleration follows the command directly (a = feed * u).
  static ControllerModel zero_order(double feed = 1.0);
};

struct EngagementGeometry {
  double Vp = 0.0;  // |V_p|, m/s
  double Ve = 0.0;  // |V_e|, m/s
  double phi_p0 = 0.0;
  double phi_e0 = 0.0;
};

struct Position {
  double z0 = 0.0;
  double w0 = 0.0;
};

// Zero-effort misses at t = 0 from the small-angle engagement geometry.
Position initial_zem(const EngagementGeometry& geometry, double t_f, double t_c);

struct EngagementScenario {
  ControllerModel pursuer;
  ControllerModel evader;
  double t_f = 1.0;
  double t_c = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  double ae_max = 1.0;
  Position initial;
  std::optional<EngagementGeometry> geometry;

  void validate() const;

  // t_c from the speed ratio nu = |V_p| / |V_e|.
  static double t_c_from_ratio(double t_f, double nu) { return nu * t_f; }

  EngagementScenario with_initial(Position p) const {
    EngagementScenario s = *this;
    s.initial = p;
    s.geometry.reset();
    return s;
  }
};

// Linear system x' = A x + B u (+ C v) with output selector D.
struct StateSpace {
  Matrix A;
  Vector B;
  std::optional<Vector> C;
  RowVector D;
};

// Per-player kinematics [y, y', x_bar] driven by the player's own control.
StateSpace build_player_ss(const ControllerModel& m);

// Relative pursuer/evader kinematics [y_e - y_p, y_e' - y_p', x_p, x_e];
// B is the pursuer input, C the evader input, D selects the relative offset.
StateSpace build_relative_ss(const ControllerModel& p, const ControllerModel& e);

// Evader kinematics alone, with D selecting the evader's offset y_e.
StateSpace build_evader_ss(const ControllerModel& e);

// Block-diagonal system of both players, state [X_p, X_e].
StateSpace build_full_ss(const ControllerModel& p, const ControllerModel& e);

// Initial full state: zero positions and internal controller states, lateral
// velocities from geometry, or chosen to reproduce (z0, w0) otherwise.
Vector initial_full_state(const EngagementScenario& scenario);

}  // namespace datgame
