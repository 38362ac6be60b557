// Acceptance suite: one pass/fail line per criterion, with the individual
// checks underneath. `--criterion N` runs a single criterion.

#include <iostream>

#include "CLI11.hpp"
#include "datgame/reproduction.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for the first-order study"};
  int only = 0;
  datgame::ReproOptions options;
  app.add_option("--criterion", only, "Run only this criterion")
      ->check(CLI::Range(1, datgame::kCriterionCount));
  app.add_option("--tol-scale", options.tol_scale, "Multiplier on every tolerance");
  app.add_option("--seed", options.seed, "Seed for randomized checks");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  for (int i = 1; i <= datgame::kCriterionCount; ++i) {
    if (only != 0 && i != only) continue;
    const auto result = datgame::run_criterion(i, options);
    datgame::print_criterion(std::cout, result, true);
    all = all && result.pass();
  }
  return all ? 0 : 1;
}
