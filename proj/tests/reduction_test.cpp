#include "datgame/reduction.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "datgame/errors.hpp"
#include "datgame/reproduction.hpp"
#include "datgame/scenario_io.hpp"

namespace datgame {
namespace {

using numerics::psi;

// Reference values from tests/oracle/first_order_oracle.py.
constexpr double kBetaStar = 0.2438324253337075;
constexpr double kMuE = 0.3249987659019591;
constexpr double kIntHp2 = 0.17679411597368744;
constexpr double kIntHeGe = 0.6123325323835417;
constexpr double kIntGe2 = 1.7733355545045155;
constexpr double kIntGe = 1.3000012340420128;
constexpr double kS = 3.7231075683613906;
constexpr double kG2 = 2.0411084412784724;
constexpr double kG3 = 5.911118515015052;
constexpr double kA = 0.5482270935773157;
constexpr double kNuP = 3.5358823194737488;
constexpr double kNuE = 0.8127747511123583;
constexpr double kDetF = 5.272834304236274;
constexpr double kD = 0.7503782751252137;

class BuiltinGame : public ::testing::Test {
 protected:
  const ReducedGame game{builtin_scenario()};
  const GameCoefficients& c = game.coeffs();
};

TEST_F(BuiltinGame, KernelClosedForms) {
  const Kernels& k = game.kernels();
  for (double t : {0.0, 0.123, 0.5, 0.87, 1.0}) {
    EXPECT_NEAR(k.h_p(t), -0.2 * psi((1.0 - t) / 0.2), 1e-13);
    EXPECT_NEAR(k.h_e(t), 0.1 * psi((1.0 - t) / 0.1), 1e-13);
    EXPECT_NEAR(k.g_e(t), 0.1 * psi((1.9 - t) / 0.1), 1e-13);
  }
  EXPECT_NEAR(k.h_p(0.5), -0.31641699972477977, 1e-13);
  EXPECT_EQ(k.h_e(1.0), 0.0);
  EXPECT_NEAR(k.g_e(1.0), 0.1 * (std::exp(-9.0) + 8.0), 1e-13);
}

TEST_F(BuiltinGame, MemoMatchesDirectEvaluation) {
  const Kernels& k = game.kernels();
  for (double t : {0.0, 0.00025, 0.5, 0.99975, 1.0, 0.3333333}) {
    const auto a = k.at(t);
    const auto b = k.direct(t);
    EXPECT_NEAR(a.hp, b.hp, 1e-15);
    EXPECT_NEAR(a.he, b.he, 1e-15);
    EXPECT_NEAR(a.ge, b.ge, 1e-15);
  }
}

TEST_F(BuiltinGame, CoefficientsMatchOracle) {
  EXPECT_NEAR(c.beta_star, kBetaStar, 1e-12);
  EXPECT_NEAR(c.mu_e, kMuE, 1e-12);
  EXPECT_NEAR(c.bound, 100.0 * kMuE, 1e-10);
  EXPECT_NEAR(c.nu_p, kNuP, 1e-10);
  EXPECT_NEAR(c.nu_e, kNuE, 1e-10);
  EXPECT_NEAR(c.s, kS, 1e-10);
  EXPECT_NEAR(c.G2, kG2, 1e-10);
  EXPECT_NEAR(c.G3, kG3, 1e-10);
  EXPECT_NEAR(c.a, kA, 1e-10);
  EXPECT_NEAR(c.det_F, kDetF, 1e-9);
  EXPECT_NEAR(c.d, kD, 1e-10);
  EXPECT_NEAR(c.int_ge, kIntGe, 1e-10);
  EXPECT_FALSE(c.degenerate_bound);
}

TEST_F(BuiltinGame, CoefficientsNearPrintedValues) {
  EXPECT_NEAR(c.G(0, 0), 3.72, 0.01);
  EXPECT_NEAR(c.G(0, 1), 2.04, 0.01);
  EXPECT_NEAR(c.G(1, 0), -2.04, 0.01);
  EXPECT_NEAR(c.G(1, 1), 5.91, 0.01);
  EXPECT_NEAR(c.beta_star, 0.2438, 1e-4);
  EXPECT_NEAR(c.mu_e, 0.325, 5e-4);
  // Values recomputed from the rounded printed G entries.
  EXPECT_NEAR(c.a, 0.5484, 1e-3);
  EXPECT_NEAR(c.nu_p, 3.533, 5e-3);
  EXPECT_NEAR(c.nu_e, 0.8128, 1e-3);
  EXPECT_NEAR(c.det_F, 5.269, 5e-3);
  EXPECT_NEAR(c.d, 0.750, 1e-3);
}

TEST_F(BuiltinGame, DerivedMatrices) {
  const Matrix2 flip = Vector2(1.0, -1.0).asDiagonal();
  EXPECT_TRUE(c.G_tilde.isApprox(flip * c.G, 1e-15));
  EXPECT_TRUE(c.G_bar.isApprox(c.G.inverse().transpose() * flip, 1e-15));
  EXPECT_TRUE(c.F_bar.isApprox(c.F.inverse().transpose() * flip, 1e-15));
  EXPECT_NEAR(c.G_bar(0, 0), 0.22584058776831992, 1e-10);
  EXPECT_NEAR(c.G_bar(0, 1), -0.07798272508092925, 1e-10);
  EXPECT_NEAR(c.G_bar(1, 1), -0.1422452957807556, 1e-10);
  EXPECT_NEAR(c.G_bar(0, 0), 0.23, 0.005);
  EXPECT_NEAR(c.G_bar(1, 0), -0.08, 0.005);
  EXPECT_NEAR(c.G_bar(1, 1), -0.14, 0.005);
  EXPECT_EQ(c.a, c.G2 / c.G1);
  EXPECT_NEAR(c.G1 - c.nu_p, 1.0 - c.nu_e, 1e-12);
  EXPECT_NEAR(c.det_G, c.G.determinant(), 1e-12);
  EXPECT_NEAR(c.det_F, c.F.determinant(), 1e-12);
}

TEST(MuE, ClosedFormAndDegenerateTail) {
  const double sigma = 9.0;
  const double closed = 0.01 * (1.0 - sigma + 0.5 * sigma * sigma - std::exp(-sigma));
  EXPECT_NEAR(mu_e(builtin_scenario()), closed, 1e-8);
  EngagementScenario s = builtin_scenario();
  s.t_c = 0.0;
  EXPECT_EQ(mu_e(s), 0.0);
  const GameCoefficients c = coefficients(s);
  EXPECT_TRUE(c.degenerate_bound);
  EXPECT_EQ(c.bound, 0.0);
}

TEST(Solvability, ThresholdAndError) {
  EXPECT_NEAR(solvability_threshold(builtin_scenario()), kBetaStar, 1e-12);
  EngagementScenario s = builtin_scenario();
  s.beta = 0.2438;
  try {
    coefficients(s);
    FAIL() << "expected SolvabilityError";
  } catch (const SolvabilityError& e) {
    EXPECT_EQ(e.beta(), 0.2438);
    EXPECT_NEAR(e.threshold(), kBetaStar, 1e-12);
  }
  s.beta = 0.2439;
  EXPECT_NO_THROW(coefficients(s));
}

TEST(FirstOrder, ClosedFormsMatchOracle) {
  const KernelIntegrals fi = first_order_integrals(0.2, 0.1, 1.0, 0.9);
  EXPECT_NEAR(fi.hp2, kIntHp2, 1e-13);
  EXPECT_NEAR(fi.he2, kBetaStar, 1e-13);
  EXPECT_NEAR(fi.he_ge, kIntHeGe, 1e-13);
  EXPECT_NEAR(fi.ge2, kIntGe2, 1e-12);
  EXPECT_NEAR(fi.ge, kIntGe, 1e-13);
  EXPECT_NEAR(fi.mu_e, kMuE, 1e-13);
  const auto c = first_order_coefficients(0.2, 0.1, 1.0, 0.9, 0.05, 0.3, 100.0);
  EXPECT_NEAR(c.beta_star, 0.2438, 1e-4);
  EXPECT_NEAR(c.mu_e, 0.325, 5e-4);
}

TEST(FirstOrder, MatchesGenericPathOnRandomScenarios) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 15; ++i) {
    const EngagementScenario s = random_first_order_scenario(rng);
    const double tp = 1.0 / s.pursuer.inp(0);
    const double te = 1.0 / s.evader.inp(0);
    const GameCoefficients g = coefficients(s);
    const GameCoefficients f =
        first_order_coefficients(tp, te, s.t_f, s.t_c, s.alpha, s.beta, s.ae_max);
    for (auto [x, y] : {std::pair{g.s, f.s}, {g.G2, f.G2}, {g.G3, f.G3}, {g.mu_e, f.mu_e},
                        {g.beta_star, f.beta_star}, {g.int_ge, f.int_ge}, {g.d, f.d}})
      EXPECT_NEAR(x, y, 1e-8 * std::abs(y));
  }
}

TEST(FirstOrder, ShortHorizonsUseStableBranch) {
  // t_f / tau well below the cancellation threshold.
  EngagementScenario s = builtin_scenario();
  s.t_f = 0.01;
  s.t_c = 0.005;
  s.beta = 1e-6;
  const KernelIntegrals g = kernel_integrals(Kernels(s, 0));
  const KernelIntegrals f = first_order_integrals(0.2, 0.1, 0.01, 0.005);
  EXPECT_NEAR(f.hp2, g.hp2, 1e-8 * g.hp2);
  EXPECT_NEAR(f.he2, g.he2, 1e-8 * g.he2);
  EXPECT_NEAR(f.he_ge, g.he_ge, 1e-8 * g.he_ge);
  EXPECT_NEAR(f.ge2, g.ge2, 1e-8 * g.ge2);
  EXPECT_NEAR(f.ge, g.ge, 1e-8 * g.ge);
  EXPECT_NEAR(f.mu_e, g.mu_e, 1e-8 * g.mu_e);
  EXPECT_THROW(first_order_integrals(0.0, 0.1, 1.0, 0.9), std::invalid_argument);
}

TEST(Coefficients, PropositionInequalitiesOnRandomScenarios) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 40; ++i) {
    const GameCoefficients c = coefficients(random_scenario(rng));
    EXPECT_GT(c.s, 0.0);
    EXPECT_GT(1.0 - c.nu_e, 0.0);
    EXPECT_GT(c.det_G, 0.0);
    EXPECT_GT(c.det_F, 0.0);
    EXPECT_GT(c.d, 0.0);
    EXPECT_LT(c.d, 1.0);
    EXPECT_NEAR(c.G1 - c.nu_p, 1.0 - c.nu_e, 1e-10);
  }
}

TEST(ZeroOrder, KernelsAreRamps) {
  EngagementScenario s = builtin_scenario();
  s.pursuer = ControllerModel::zero_order(1.0);
  s.evader = ControllerModel::zero_order(1.0);
  s.beta = 1.0;
  const Kernels k(s, 11);
  for (double t : {0.0, 0.4, 1.0}) {
    EXPECT_NEAR(k.h_p(t), -(1.0 - t), 1e-14);
    EXPECT_NEAR(k.h_e(t), 1.0 - t, 1e-14);
    EXPECT_NEAR(k.g_e(t), 1.9 - t, 1e-14);
  }
  EXPECT_NEAR(mu_e(k), 0.5 * 0.81, 1e-12);
}

TEST(ControlLaw, Evaluation) {
  const ReducedGame game(builtin_scenario(), 11);
  const Kernels& k = game.kernels();
  EXPECT_EQ(eval_control(Constant{101.92}, k, 0.37), 101.92);
  EXPECT_EQ(eval_control(KernelCombo{}, k, 0.5), 0.0);
  EXPECT_EQ(eval_control(AffineInTime{400.0, -400.0}, k, 1.0), 0.0);
  EXPECT_NEAR(eval_control(KernelCombo{2.0, 0.0, 0.0}, k, 0.5), 2.0 * k.h_p(0.5), 1e-15);
  EXPECT_NEAR(eval_control(KernelCombo{0.0, 1.5, -0.5}, k, 0.5),
              1.5 * k.h_e(0.5) - 0.5 * k.g_e(0.5), 1e-15);
  EXPECT_THROW(eval_control(Constant{1.0}, k, 1.1), std::out_of_range);
  EXPECT_THROW(eval_control(Constant{1.0}, k, -0.01), std::out_of_range);
}

TEST(ControlLaw, SampledInterpolatesLinearly) {
  const ReducedGame game(builtin_scenario(), 11);
  const auto grid = numerics::TimeGrid::uniform(0.0, 1.0, 3);
  const ControlLaw law = Sampled{grid, {0.0, 2.0, -2.0}};
  EXPECT_NEAR(eval_control(law, game.kernels(), 0.25), 1.0, 1e-15);
  EXPECT_NEAR(eval_control(law, game.kernels(), 0.75), 0.0, 1e-15);
  EXPECT_EQ(eval_control(law, game.kernels(), 1.0), -2.0);
  EXPECT_THROW(ControlLaw(Sampled{grid, {1.0}}), std::invalid_argument);
}

TEST(ControlLaw, LegendreAndSuperposition) {
  const ReducedGame game(builtin_scenario(), 11);
  const auto p = legendre_values(4, 0.3);
  EXPECT_NEAR(p[2], 0.5 * (3 * 0.09 - 1), 1e-15);
  EXPECT_NEAR(p[3], 0.5 * (5 * 0.027 - 3 * 0.3), 1e-15);
  const ControlLaw l = LegendreSeries{1.0, {1.0, 2.0, 0.5}};
  // x = 2 t - 1 = 0.3 at t = 0.65
  EXPECT_NEAR(eval_control(l, game.kernels(), 0.65), 1.0 + 0.6 + 0.5 * p[2], 1e-14);
  const ControlLaw sum = ControlLaw(Constant{1.0}) + ControlLaw(Constant{2.0}) + l;
  ASSERT_NE(sum.get_if<Superposition>(), nullptr);
  EXPECT_EQ(sum.get_if<Superposition>()->terms.size(), 3u);
  EXPECT_NEAR(eval_control(sum, game.kernels(), 0.65), 3.0 + 1.6 + 0.5 * p[2], 1e-14);
}

}  // namespace
}  // namespace datgame
