#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "datgame/engagement.hpp"

namespace datgame {

struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool relative = false;
  bool is_flag = false;
  bool gating = true;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  bool pass() const;
};

struct ReproOptions {
  double tol_scale = 1.0;
  std::uint64_t seed = 20240917;
};

inline constexpr int kCriterionCount = 11;

// Runs one acceptance criterion (1..kCriterionCount) on the built-in
// first-order scenario.
CriterionResult run_criterion(int id, const ReproOptions& options = {});
std::vector<CriterionResult> run_all(const ReproOptions& options = {});

void print_criterion(std::ostream& os, const CriterionResult& result,
                     bool details);

// Random controller of the given order: a chain of first-order lags, or a
// pure gain for order 0.
ControllerModel random_controller(std::mt19937_64& rng, int order);

// Random valid scenario with beta drawn above its solvability threshold.
EngagementScenario random_scenario(std::mt19937_64& rng, int max_order = 3);
EngagementScenario random_first_order_scenario(std::mt19937_64& rng);

}  // namespace datgame
