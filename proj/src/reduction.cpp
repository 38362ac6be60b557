#include "datgame/reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "datgame/errors.hpp"

namespace datgame {

using numerics::mat_exp;
using numerics::quad_adaptive;

Kernels::Kernels(const EngagementScenario& scenario, std::size_t memo_nodes)
    : relative_(build_relative_ss(scenario.pursuer, scenario.evader)),
      evader_(build_evader_ss(scenario.evader)),
      t_f_(scenario.t_f),
      t_c_(scenario.t_c) {
  if (memo_nodes >= 2) {
    const std::size_t points = 2 * memo_nodes - 1;
    memo_step_ = t_f_ / static_cast<double>(points - 1);
    memo_.reserve(points);
    for (std::size_t k = 0; k < points; ++k)
      memo_.push_back(direct(memo_step_ * static_cast<double>(k)));
  }
}

Kernels::Values Kernels::direct(double t) const {
  const Matrix phi_ep = mat_exp(relative_.A, t_f_ - t);
  const Matrix phi_e = mat_exp(evader_.A, t_f_ + t_c_ - t);
  Values v;
  v.hp = relative_.D * phi_ep * relative_.B;
  v.he = relative_.D * phi_ep * (*relative_.C);
  v.ge = evader_.D * phi_e * evader_.B;
  return v;
}

Kernels::Values Kernels::at(double t) const {
  if (!memo_.empty()) {
    const double x = t / memo_step_;
    const double k = std::round(x);
    if (std::abs(x - k) < 1e-8 && k >= 0.0 &&
        k < static_cast<double>(memo_.size()))
      return memo_[static_cast<std::size_t>(k)];
  }
  return direct(t);
}

double Kernels::g_e_tail(double t) const {
  const Matrix phi_e = mat_exp(evader_.A, t_f_ + t_c_ - t);
  return evader_.D * phi_e * evader_.B;
}

KernelIntegrals kernel_integrals(const Kernels& k, double tol) {
  const double tf = k.t_f();
  KernelIntegrals out;
  out.hp2 = quad_adaptive([&](double t) { const double v = k.h_p(t); return v * v; }, 0.0, tf, tol);
  out.he2 = quad_adaptive([&](double t) { const double v = k.h_e(t); return v * v; }, 0.0, tf, tol);
  out.he_ge = quad_adaptive([&](double t) { const auto v = k.at(t); return v.he * v.ge; }, 0.0, tf, tol);
  out.ge2 = quad_adaptive([&](double t) { const double v = k.g_e(t); return v * v; }, 0.0, tf, tol);
  out.ge = quad_adaptive([&](double t) { return k.g_e(t); }, 0.0, tf, tol);
  out.mu_e = mu_e(k, tol);
  return out;
}

double mu_e(const Kernels& k, double tol) {
  return quad_adaptive([&](double t) { return std::abs(k.g_e_tail(t)); },
                       k.t_f(), k.t_f() + k.t_c(), tol);
}

double mu_e(const EngagementScenario& scenario) {
  scenario.validate();
  return mu_e(Kernels(scenario, 0));
}

double solvability_threshold(const EngagementScenario& scenario) {
  scenario.validate();
  const Kernels k(scenario, 0);
  return quad_adaptive([&](double t) { const double v = k.h_e(t); return v * v; },
                       0.0, k.t_f());
}

GameCoefficients assemble_coefficients(const KernelIntegrals& in, double alpha,
                                       double beta, double ae_max,
                                       bool degenerate_bound) {
  if (!(beta > in.he2)) throw SolvabilityError(beta, in.he2);

  GameCoefficients c;
  c.alpha = alpha;
  c.beta = beta;
  c.ae_max = ae_max;
  c.beta_star = in.he2;
  c.nu_p = in.hp2 / alpha;
  c.nu_e = in.he2 / beta;
  c.s = 1.0 + c.nu_p - c.nu_e;
  c.G1 = c.s;
  c.G2 = in.he_ge / beta;
  c.G3 = in.ge2 / beta;
  c.a = c.G2 / c.G1;
  c.mu_e = in.mu_e;
  c.bound = in.mu_e * ae_max;
  c.int_ge = in.ge;
  c.degenerate_bound = degenerate_bound;

  c.G << c.G1, c.G2, -c.G2, c.G3;
  c.F << 1.0 - c.nu_e, c.G2, -c.G2, c.G3;
  c.det_G = c.G1 * c.G3 + c.G2 * c.G2;
  c.det_F = (c.G1 - c.nu_p) * c.G3 + c.G2 * c.G2;
  c.d = c.nu_p * c.G2 * c.G2 / (c.G1 * c.det_F);

  const Matrix2 flip = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  c.G_tilde = flip * c.G;
  c.G_bar = c.G.inverse().transpose() * flip;
  c.F_bar = c.F.inverse().transpose() * flip;
  return c;
}

GameCoefficients coefficients(const Kernels& kernels,
                              const EngagementScenario& s) {
  return assemble_coefficients(kernel_integrals(kernels), s.alpha, s.beta,
                               s.ae_max, s.t_c == 0.0);
}

GameCoefficients coefficients(const EngagementScenario& scenario) {
  scenario.validate();
  return coefficients(Kernels(scenario, 0), scenario);
}

namespace {

// int_0^x psi
double psi_integral(double x) {
  if (x < 0.1) {
    // x^3/6 - x^4/24 + x^5/120 - ...
    double term = x * x * x / 6.0;
    double sum = term;
    for (int k = 4; k <= 12; ++k) {
      term *= -x / static_cast<double>(k);
      sum += term;
    }
    return sum;
  }
  return 0.5 * x * x - x - std::expm1(-x);
}

constexpr double kClosedFormCutoff = 0.5;

// int_0^x psi^2
double psi_sq_integral(double x) {
  if (x < kClosedFormCutoff) {
    return quad_adaptive([](double u) { const double p = numerics::psi(u); return p * p; },
                         0.0, x, 1e-14);
  }
  const double e1 = std::exp(-x);
  return -0.5 * std::expm1(-2.0 * x) + x * x * x / 3.0 - x * x + x - 2.0 * x * e1;
}

// int_0^x psi(u) psi(u + sigma) du
double psi_cross_integral(double x, double sigma) {
  if (x < kClosedFormCutoff) {
    return quad_adaptive(
        [sigma](double u) { return numerics::psi(u) * numerics::psi(u + sigma); },
        0.0, x, 1e-14);
  }
  const double es = std::exp(-sigma);
  const double ex = std::exp(-x);
  return -0.5 * es * std::expm1(-2.0 * x) - x * ex - sigma * std::expm1(-x) -
         es * x * ex + x * x * x / 3.0 - x * x + x + sigma * (0.5 * x * x - x);
}

}  // namespace

KernelIntegrals first_order_integrals(double tau_p, double tau_e, double t_f,
                                      double t_c) {
  if (!(tau_p > 0.0) || !(tau_e > 0.0))
    throw std::invalid_argument("first_order_integrals: time constants must be positive");
  const double xp = t_f / tau_p;
  const double xe = t_f / tau_e;
  const double sigma = t_c / tau_e;
  const double tp3 = tau_p * tau_p * tau_p;
  const double te2 = tau_e * tau_e;
  const double te3 = te2 * tau_e;

  KernelIntegrals out;
  out.hp2 = tp3 * psi_sq_integral(xp);
  out.he2 = te3 * psi_sq_integral(xe);
  out.he_ge = te3 * psi_cross_integral(xe, sigma);
  // Differencing antiderivatives loses digits once the window is short.
  out.ge2 = xe >= kClosedFormCutoff
                ? te3 * (psi_sq_integral(xe + sigma) - psi_sq_integral(sigma))
                : te3 * quad_adaptive(
                            [sigma](double u) {
                              const double p = numerics::psi(u + sigma);
                              return p * p;
                            },
                            0.0, xe, 1e-14);
  out.ge = te2 * (psi_integral(xe + sigma) - psi_integral(sigma));
  out.mu_e = te2 * psi_integral(sigma);
  return out;
}

GameCoefficients first_order_coefficients(double tau_p, double tau_e,
                                          double t_f, double t_c, double alpha,
                                          double beta, double ae_max) {
  return assemble_coefficients(first_order_integrals(tau_p, tau_e, t_f, t_c),
                               alpha, beta, ae_max, t_c == 0.0);
}

ReducedGame::ReducedGame(EngagementScenario scenario, std::size_t grid_nodes)
    : scenario_((scenario.validate(), std::move(scenario))),
      kernels_(scenario_, grid_nodes),
      coeffs_(coefficients(kernels_, scenario_)),
      grid_(numerics::TimeGrid::uniform(0.0, scenario_.t_f, grid_nodes)) {}

}  // namespace datgame
