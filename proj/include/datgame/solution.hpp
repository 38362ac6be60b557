#pragma once

#include <optional>
#include <string>

#include "datgame/control_law.hpp"
#include "datgame/numerics.hpp"

namespace datgame {

enum class BranchSign { Plus, Minus };

inline double sign_value(BranchSign s) { return s == BranchSign::Plus ? 1.0 : -1.0; }
inline BranchSign opposite(BranchSign s) {
  return s == BranchSign::Plus ? BranchSign::Minus : BranchSign::Plus;
}
inline const char* to_string(BranchSign s) { return s == BranchSign::Plus ? "+" : "-"; }

enum class RegionLabel { Omega, OmegaPlus, OmegaMinus };

inline const char* to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::Omega: return "Omega";
    case RegionLabel::OmegaPlus: return "OmegaPlus";
    case RegionLabel::OmegaMinus: return "OmegaMinus";
  }
  return "?";
}

// offset = w0 + a z0. margin is the distance from the nearest boundary line
// of the labelled set, positive inside it (zero on the boundary of Omega+/-).
struct Region {
  RegionLabel label = RegionLabel::Omega;
  double margin = 0.0;
  double offset = 0.0;
};

// One sign of the equality-constraint game, w(t_f) = +-bound.
struct BranchSolution {
  BranchSign sign = BranchSign::Plus;
  Vector2 b_vec = Vector2::Zero();    // (z0, w0 -+ bound)
  Vector2 omega_f = Vector2::Zero();  // (z_f, v_f), G omega_f = b_vec
  ControlLaw u_p;
  ControlLaw u_e;
  double value = 0.0;             // omega_f^T G_tilde omega_f
  double value_quadratic = 0.0;   // same value as a quadratic form in chi0
  Vector2 chi0 = Vector2::Zero();
  Vector2 gamma = Vector2::Zero();
};

struct UrgSolution {
  ControlLaw u_p;
  ControlLaw u_e;
  double z_f = 0.0;
  double w_f = 0.0;
  double value = 0.0;              // by cost evaluation
  double value_closed_form = 0.0;  // z0^2 / s
};

struct UpgSolution {
  BranchSign sign = BranchSign::Plus;
  double eps = 0.0;
  Vector2 omega = Vector2::Zero();
  ControlLaw u_p;
  ControlLaw u_e;
  double value = 0.0;
};

struct PenaltyRecord {
  double eps = 0.0;
  Vector2 omega = Vector2::Zero();
  double value = 0.0;
  double z_f = 0.0;
  double w_f = 0.0;
  double distance = 0.0;  // |omega_eps - omega_f|
};

// The evader maximises against the pursuer's fixed branch law while held to
// the opposite end of the constraint.
struct AuxCrossSolution {
  BranchSign pursuer_sign = BranchSign::Plus;
  Vector2 mu_vec = Vector2::Zero();
  Vector2 xi_vec = Vector2::Zero();
  Vector2 omega1 = Vector2::Zero();  // (z(t_f), multiplier of w)
  ControlLaw u_e_star;
  double J_cross = 0.0;            // mu^T F_bar mu + pursuer effort
  double J_cross_quadratic = 0.0;  // chi0^T G_bar chi0 + 2 chi0^T G_bar gamma + rho
  double rho = 0.0;
};

struct CaseIiiDiagnostic {
  BranchSign sign = BranchSign::Plus;
  double z_bar_f = 0.0;
  double interior_value = 0.0;  // w0 + G2 z_bar_f
  double bound = 0.0;
  bool interior_feasible = false;
  // The same condition as an interval on w0 + a z0.
  double offset = 0.0;
  double offset_lower = 0.0;
  double offset_upper = 0.0;
  bool offset_feasible = false;
};

struct SaddleSolution {
  Region region;
  ControlLaw u_p;
  ControlLaw u_e;
  double value = 0.0;
  double z_f = 0.0;
  double w_f = 0.0;
  std::optional<BranchSolution> branch;
};

}  // namespace datgame
