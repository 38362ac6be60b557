#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "datgame/engagement.hpp"
#include "datgame/simulate.hpp"

namespace datgame {

struct ScenarioFile {
  EngagementScenario scenario;
  std::vector<Position> positions;  // optional extra initial positions
};

// First-order study scenario: t_f = 1, t_c = 0.9, ae_max = 100, alpha = 0.05,
// beta = 0.3, tau_p = 0.2, tau_e = 0.1.
EngagementScenario builtin_scenario(Position initial = {100.0, -100.0});

// The two positions of the cross-play table.
std::vector<Position> builtin_table_positions();

// JSON scenario document. Throws ScenarioError naming the offending key
// path, or the byte offset for syntax errors.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::string& path);

// Header "t,u_p,u_e,z,w", 12 significant digits.
void write_trajectory_csv(std::ostream& os, const Playout& playout);

struct ResultRow {
  std::string name;
  double value = 0.0;
  std::string source;
};

class ResultTable {
 public:
  void add(std::string name, double value, std::string source);
  void add_text(std::string name, std::string text);
  void print(std::ostream& os) const;
  const std::vector<ResultRow>& rows() const { return rows_; }

 private:
  struct Line {
    bool numeric;
    ResultRow row;
    std::string text;
  };
  std::vector<ResultRow> rows_;
  std::vector<Line> lines_;
};

}  // namespace datgame
