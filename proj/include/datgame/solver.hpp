#pragma once

#include <vector>

#include "datgame/reduction.hpp"
#include "datgame/solution.hpp"

namespace datgame {

// Omega is the open strip |w0 + a z0| < bound; its boundary lines belong to
// Omega+ and Omega-.
Region classify(const GameCoefficients& coeffs, Position p);

// u_p = -(z_f/alpha) h_p and u_e = (z_f h_e - v_f g_e)/beta for a terminal
// pair omega = (z_f, v_f).
ControlLaw pursuer_law(const GameCoefficients& coeffs, double z_f);
ControlLaw evader_law(const GameCoefficients& coeffs, double z_f, double v_f);

// Right-hand side (z0, w0 -+ bound) of the branch systems.
Vector2 branch_rhs(const GameCoefficients& coeffs, Position p, BranchSign sign);

// Unconstrained game. The value comes from evaluating the cost of the
// saddle-point controls on the game grid.
UrgSolution solve_urg(const ReducedGame& game, Position p);

// Penalised game with weight 1/eps on (w(t_f) -+ bound)^2.
UpgSolution solve_upg(const GameCoefficients& coeffs, Position p,
                      BranchSign sign, double eps);

// Equality-constraint game with w(t_f) = +-bound. Both value forms are
// computed; InternalError if they disagree beyond 1e-9 relative.
BranchSolution solve_erg_branch(const GameCoefficients& coeffs, Position p,
                                BranchSign sign);

// Picks the branch by the half-plane test and confirms it against the
// auxiliary cross problem. NotInConstrainedRegionError inside Omega.
BranchSolution solve_erg(const GameCoefficients& coeffs, Position p);

// Pursuer fixed on branch `pursuer_sign`, evader forced to the other end of
// the constraint.
AuxCrossSolution aux_cross(const GameCoefficients& coeffs, Position p,
                           BranchSign pursuer_sign);

SaddleSolution solve_rg(const ReducedGame& game, Position p);
SaddleSolution solve_rg(const ReducedGame& game);

std::vector<double> default_eps_list();

// eps_list must be positive and strictly decreasing.
std::vector<PenaltyRecord> penalty_sweep(
    const GameCoefficients& coeffs, Position p, BranchSign sign,
    const std::vector<double>& eps_list = default_eps_list());

// Interior case of the constrained problem on branch `sign`, with the
// evader's multiplier zero. Does not throw.
CaseIiiDiagnostic case_iii(const GameCoefficients& coeffs, Position p,
                           BranchSign sign);

// Requires p outside Omega. Throws InternalError if the interior case comes
// out feasible.
CaseIiiDiagnostic check_case_iii_infeasible(const GameCoefficients& coeffs,
                                            Position p);

}  // namespace datgame
