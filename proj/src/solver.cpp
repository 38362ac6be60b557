#include "datgame/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "datgame/errors.hpp"
#include "datgame/simulate.hpp"

namespace datgame {

using numerics::solve2;

namespace {

Vector2 chi0_of(Position p) { return {p.z0, p.w0}; }

// gamma+ = (0, -bound), gamma- = (0, +bound)
Vector2 gamma_of(const GameCoefficients& c, BranchSign sign) {
  return {0.0, -sign_value(sign) * c.bound};
}

double rel_gap(double x, double y) {
  return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

Region classify(const GameCoefficients& c, Position p) {
  Region r;
  r.offset = p.w0 + c.a * p.z0;
  if (r.offset >= c.bound) {
    r.label = RegionLabel::OmegaPlus;
    r.margin = r.offset - c.bound;
  } else if (r.offset <= -c.bound) {
    r.label = RegionLabel::OmegaMinus;
    r.margin = -c.bound - r.offset;
  } else {
    r.label = RegionLabel::Omega;
    r.margin = c.bound - std::abs(r.offset);
  }
  return r;
}

ControlLaw pursuer_law(const GameCoefficients& c, double z_f) {
  return KernelCombo{-z_f / c.alpha, 0.0, 0.0};
}

ControlLaw evader_law(const GameCoefficients& c, double z_f, double v_f) {
  return KernelCombo{0.0, z_f / c.beta, -v_f / c.beta};
}

Vector2 branch_rhs(const GameCoefficients& c, Position p, BranchSign sign) {
  return chi0_of(p) + gamma_of(c, sign);
}

UrgSolution solve_urg(const ReducedGame& game, Position p) {
  const auto& c = game.coeffs();
  UrgSolution u;
  u.z_f = p.z0 / c.s;
  u.w_f = p.w0 + c.a * p.z0;
  u.u_p = pursuer_law(c, u.z_f);
  u.u_e = evader_law(c, u.z_f, 0.0);
  u.value = evaluate_cost(game, p, u.u_p, u.u_e).total;
  u.value_closed_form = p.z0 * p.z0 / c.s;
  return u;
}

UpgSolution solve_upg(const GameCoefficients& c, Position p, BranchSign sign,
                      double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("solve_upg: eps must be positive");
  Matrix2 Ge = c.G;
  Ge(1, 1) += eps;
  UpgSolution u;
  u.sign = sign;
  u.eps = eps;
  try {
    u.omega = solve2(Ge, branch_rhs(c, p, sign));
  } catch (const NearSingularError& e) {
    throw InternalError(std::string("solve_upg: ") + e.what());
  }
  u.u_p = pursuer_law(c, u.omega(0));
  u.u_e = evader_law(c, u.omega(0), u.omega(1));
  const Matrix2 flip = Vector2(1.0, -1.0).asDiagonal();
  u.value = u.omega.dot(flip * Ge * u.omega);
  return u;
}

BranchSolution solve_erg_branch(const GameCoefficients& c, Position p,
                                BranchSign sign) {
  BranchSolution b;
  b.sign = sign;
  b.chi0 = chi0_of(p);
  b.gamma = gamma_of(c, sign);
  b.b_vec = b.chi0 + b.gamma;
  try {
    b.omega_f = solve2(c.G, b.b_vec);
  } catch (const NearSingularError& e) {
    throw InternalError(std::string("solve_erg_branch: ") + e.what());
  }
  b.u_p = pursuer_law(c, b.omega_f(0));
  b.u_e = evader_law(c, b.omega_f(0), b.omega_f(1));
  b.value = b.omega_f.dot(c.G_tilde * b.omega_f);
  b.value_quadratic = b.chi0.dot(c.G_bar * b.chi0) +
                      2.0 * b.chi0.dot(c.G_bar * b.gamma) +
                      b.gamma.dot(c.G_bar * b.gamma);
  if (rel_gap(b.value, b.value_quadratic) > 1e-9)
    throw InternalError("solve_erg_branch: value forms disagree");
  return b;
}

AuxCrossSolution aux_cross(const GameCoefficients& c, Position p,
                           BranchSign pursuer_sign) {
  AuxCrossSolution a;
  a.pursuer_sign = pursuer_sign;
  const Vector2 chi0 = chi0_of(p);
  const Vector2 own = gamma_of(c, pursuer_sign);
  const Vector2 other = gamma_of(c, opposite(pursuer_sign));
  const Vector2 omega_f = solve2(c.G, chi0 + own);
  a.xi_vec = other - Vector2(c.nu_p * omega_f(0), 0.0);
  a.mu_vec = chi0 + a.xi_vec;
  a.omega1 = solve2(c.F, a.mu_vec);
  a.u_e_star = evader_law(c, a.omega1(0), a.omega1(1));
  a.J_cross = a.mu_vec.dot(c.F_bar * a.mu_vec) + c.nu_p * omega_f(0) * omega_f(0);
  a.rho = c.bound * c.bound *
          (3.0 * c.nu_p * c.G2 * c.G2 - (c.G1 - c.nu_p) * c.det_G) /
          (c.det_G * c.det_F);
  a.J_cross_quadratic =
      chi0.dot(c.G_bar * chi0) + 2.0 * chi0.dot(c.G_bar * other) + a.rho;
  return a;
}

BranchSolution solve_erg(const GameCoefficients& c, Position p) {
  const Region r = classify(c, p);
  if (r.label == RegionLabel::Omega)
    throw NotInConstrainedRegionError(
        "solve_erg: position lies in Omega, where the unconstrained solution is feasible");
  const BranchSign sign =
      r.label == RegionLabel::OmegaPlus ? BranchSign::Plus : BranchSign::Minus;
  BranchSolution b = solve_erg_branch(c, p, sign);

  const AuxCrossSolution aux = aux_cross(c, p, sign);
  const double scale = std::max({1.0, std::abs(b.value), std::abs(aux.J_cross)});
  if (std::abs(aux.J_cross - aux.J_cross_quadratic) > 1e-8 * scale)
    throw InternalError("solve_erg: auxiliary cross value forms disagree");
  if (aux.J_cross > b.value + 1e-8 * scale)
    throw InternalError(
        "solve_erg: half-plane test and auxiliary cross inequality disagree");
  return b;
}

SaddleSolution solve_rg(const ReducedGame& game, Position p) {
  const auto& c = game.coeffs();
  SaddleSolution s;
  s.region = classify(c, p);
  if (s.region.label == RegionLabel::Omega) {
    const UrgSolution u = solve_urg(game, p);
    if (!(std::abs(u.w_f) < c.bound))
      throw InternalError("solve_rg: unconstrained terminal w outside the bound in Omega");
    s.u_p = u.u_p;
    s.u_e = u.u_e;
    s.value = u.value;
    s.z_f = u.z_f;
    s.w_f = u.w_f;
    return s;
  }
  BranchSolution b = solve_erg(c, p);
  s.u_p = b.u_p;
  s.u_e = b.u_e;
  s.value = b.value;
  s.z_f = b.omega_f(0);
  s.w_f = sign_value(b.sign) * c.bound;
  s.branch = std::move(b);
  return s;
}

SaddleSolution solve_rg(const ReducedGame& game) {
  return solve_rg(game, game.initial());
}

std::vector<double> default_eps_list() {
  return {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

std::vector<PenaltyRecord> penalty_sweep(const GameCoefficients& c, Position p,
                                         BranchSign sign,
                                         const std::vector<double>& eps_list) {
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0))
      throw std::invalid_argument("penalty_sweep: eps values must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw std::invalid_argument("penalty_sweep: eps values must be strictly decreasing");
  }
  const Vector2 omega_f = solve_erg_branch(c, p, sign).omega_f;
  std::vector<PenaltyRecord> out;
  out.reserve(eps_list.size());
  for (double eps : eps_list) {
    const UpgSolution u = solve_upg(c, p, sign, eps);
    PenaltyRecord r;
    r.eps = eps;
    r.omega = u.omega;
    r.value = u.value;
    r.z_f = u.omega(0);
    r.w_f = p.w0 + c.G2 * u.omega(0) - c.G3 * u.omega(1);
    r.distance = (u.omega - omega_f).norm();
    out.push_back(r);
  }
  return out;
}

CaseIiiDiagnostic case_iii(const GameCoefficients& c, Position p, BranchSign sign) {
  CaseIiiDiagnostic d;
  d.sign = sign;
  d.bound = c.bound;
  const Vector2 omega_f = solve2(c.G, branch_rhs(c, p, sign));
  d.z_bar_f = (p.z0 - c.nu_p * omega_f(0)) / (1.0 - c.nu_e);
  d.interior_value = p.w0 + c.G2 * d.z_bar_f;
  d.interior_feasible = -c.bound < d.interior_value && d.interior_value < c.bound;
  d.offset = p.w0 + c.a * p.z0;
  if (sign == BranchSign::Plus) {
    d.offset_lower = (2.0 * c.d - 1.0) * c.bound;
    d.offset_upper = c.bound;
  } else {
    d.offset_lower = -c.bound;
    d.offset_upper = (1.0 - 2.0 * c.d) * c.bound;
  }
  d.offset_feasible = d.offset_lower < d.offset && d.offset < d.offset_upper;
  return d;
}

CaseIiiDiagnostic check_case_iii_infeasible(const GameCoefficients& c, Position p) {
  const Region r = classify(c, p);
  if (r.label == RegionLabel::Omega)
    throw NotInConstrainedRegionError("check_case_iii_infeasible: position lies in Omega");
  const BranchSign sign =
      r.label == RegionLabel::OmegaPlus ? BranchSign::Plus : BranchSign::Minus;
  CaseIiiDiagnostic d = case_iii(c, p, sign);
  if (d.interior_feasible)
    throw InternalError("check_case_iii_infeasible: interior case is feasible outside Omega");
  return d;
}

}  // namespace datgame
