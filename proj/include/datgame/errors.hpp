#pragma once

#include <stdexcept>
#include <string>

namespace datgame {

// Base of every error raised by the library.
class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// beta does not exceed the integral of h_e^2 over [0, t_f]: the Riccati
// solution of the unconstrained game has a conjugate point and no saddle
// point exists in any branch.
class SolvabilityError : public GameError {
 public:
  SolvabilityError(double beta, double threshold)
      : GameError("solvability condition violated: beta = " +
                  std::to_string(beta) +
                  " must exceed the conjugate-point threshold " +
                  std::to_string(threshold)),
        beta_(beta),
        threshold_(threshold) {}

  double beta() const { return beta_; }
  double threshold() const { return threshold_; }

 private:
  double beta_;
  double threshold_;
};

class NearSingularError : public GameError {
 public:
  using GameError::GameError;
};

// Raised by the equality-constraint solvers when the position lies in the
// open strip where the unconstrained solution is already feasible.
class NotInConstrainedRegionError : public GameError {
 public:
  using GameError::GameError;
};

// A numerically computed quantity contradicted an identity that holds for
// every valid input. Always a bug, never a user error.
class InternalError : public GameError {
 public:
  using GameError::GameError;
};

class NumericalError : public GameError {
 public:
  using GameError::GameError;
};

class ScenarioError : public GameError {
 public:
  using GameError::GameError;
};

}  // namespace datgame
