#include "datgame/scenario_io.hpp"

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "datgame/errors.hpp"
#include "datgame/solver.hpp"

namespace datgame {
namespace {

const std::string kBase = R"({
  "players": {"pursuer": {"first_order_tau": 0.2}, "evader": {"first_order_tau": 0.1}},
  "horizon": {"t_f": 1.0, "t_c": 0.9},
  "weights": {"alpha": 0.05, "beta": 0.3},
  "evader_bound": {"ae_max": 100.0},
  "initial": {"z0": 100.0, "w0": 50.0}
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  if (pos == std::string::npos) throw std::logic_error("pattern not found: " + from);
  return s.replace(pos, from.size(), to);
}

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

TEST(ScenarioFile, ParsesFirstOrderScenario) {
  const ScenarioFile f = parse_scenario(kBase);
  const EngagementScenario& s = f.scenario;
  EXPECT_EQ(s.t_f, 1.0);
  EXPECT_EQ(s.t_c, 0.9);
  EXPECT_EQ(s.alpha, 0.05);
  EXPECT_EQ(s.beta, 0.3);
  EXPECT_EQ(s.ae_max, 100.0);
  EXPECT_EQ(s.initial.z0, 100.0);
  EXPECT_EQ(s.pursuer.order(), 1);
  EXPECT_DOUBLE_EQ(s.pursuer.sys(0, 0), -5.0);
  EXPECT_TRUE(f.positions.empty());
  const ReducedGame g(s);
  EXPECT_EQ(classify(g.coeffs(), s.initial).label, RegionLabel::OmegaPlus);
}

TEST(ScenarioFile, GenericMatricesMatchFirstOrderShortcut) {
  const std::string generic = replace(
      kBase, R"({"first_order_tau": 0.2})", R"({"A": [[-5.0]], "b": [5.0], "c": [1.0], "d": 0.0})");
  const GameCoefficients a = coefficients(parse_scenario(kBase).scenario);
  const GameCoefficients b = coefficients(parse_scenario(generic).scenario);
  EXPECT_NEAR(a.s, b.s, 1e-12);
  EXPECT_NEAR(a.G2, b.G2, 1e-12);
}

TEST(ScenarioFile, ZeroOrderPlayer) {
  const std::string text =
      replace(kBase, R"({"first_order_tau": 0.2})", R"({"A": [], "b": [], "c": [], "d": 1.0})");
  const ScenarioFile f = parse_scenario(text);
  EXPECT_EQ(f.scenario.pursuer.order(), 0);
  EXPECT_EQ(f.scenario.pursuer.feed, 1.0);
}

TEST(ScenarioFile, SpeedRatioAndGeometry) {
  std::string text = replace(kBase, R"("t_c": 0.9)", R"("nu": 0.9)");
  text = replace(text, R"({"z0": 100.0, "w0": 50.0})",
                 R"({"Vp": 300.0, "Ve": 200.0, "phi_p0": 0.0, "phi_e0": 0.2631578947368421})");
  const ScenarioFile f = parse_scenario(text);
  EXPECT_DOUBLE_EQ(f.scenario.t_c, 0.9);
  ASSERT_TRUE(f.scenario.geometry.has_value());
  EXPECT_NEAR(f.scenario.initial.z0, 52.631578947368, 1e-9);
  EXPECT_NEAR(f.scenario.initial.w0, 100.0, 1e-9);
}

TEST(ScenarioFile, Positions) {
  const std::string text = replace(
      kBase, R"("initial")", R"("positions": [{"z0": 1, "w0": 2}, {"z0": -3, "w0": 4}], "initial")");
  const ScenarioFile f = parse_scenario(text);
  ASSERT_EQ(f.positions.size(), 2u);
  EXPECT_EQ(f.positions[1].z0, -3.0);
}

TEST(ScenarioFile, ErrorsNameTheKey) {
  EXPECT_NE(error_of(replace(kBase, R"(, "beta": 0.3)", "")).find("weights.beta: missing key"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kBase, R"("alpha": 0.05)", R"("alpha": "x")")).find("weights.alpha"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kBase, R"("alpha": 0.05)", R"("alpha": -1)")).find("must be positive"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kBase, R"("t_c": 0.9)", R"("t_c": 0.9, "nu": 1)")).find("horizon"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kBase, R"("w0": 50.0)", R"("w0": 50.0, "Vp": 3)")).find("initial"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kBase, R"({"first_order_tau": 0.2})",
                             R"({"A": [[-5.0]], "b": [5.0, 1.0], "c": [1.0], "d": 0.0})"))
                .find("players.pursuer.b"),
            std::string::npos);
  EXPECT_NE(error_of("{ not json").find("syntax error"), std::string::npos);
  EXPECT_THROW(load_scenario("/nonexistent/file.json"), ScenarioError);
}

TEST(Csv, HeaderAndRows) {
  const ReducedGame g(parse_scenario(kBase).scenario, 5);
  const SaddleSolution s = solve_rg(g);
  const Playout p = playout_reduced(g, g.initial(), s.u_p, s.u_e);
  std::ostringstream a;
  std::ostringstream b;
  write_trajectory_csv(a, p);
  write_trajectory_csv(b, playout_reduced(g, g.initial(), s.u_p, s.u_e));
  EXPECT_EQ(a.str(), b.str());
  std::istringstream in(a.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,u_p,u_e,z,w");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
  EXPECT_NE(a.str().find("\n0,"), std::string::npos);
}

TEST(ResultTable, TagsEveryScalar) {
  ResultTable t;
  t.add("value", 1.5, "quadratic form");
  t.add_text("region", "Omega");
  std::ostringstream os;
  t.print(os);
  EXPECT_NE(os.str().find("[quadratic form]"), std::string::npos);
  EXPECT_EQ(t.rows().size(), 1u);
}

}  // namespace
}  // namespace datgame
