#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace datgame {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using Matrix2 = Eigen::Matrix2d;
using Vector2 = Eigen::Vector2d;

namespace numerics {

inline constexpr std::size_t kDefaultGridNodes = 2001;
inline constexpr double kDefaultQuadTol = 1e-10;

// Strictly increasing sequence of time nodes including both endpoints.
class TimeGrid {
 public:
  static TimeGrid uniform(double t_start, double t_end,
                          std::size_t nodes = kDefaultGridNodes);
  explicit TimeGrid(std::vector<double> nodes);

  double start() const { return nodes_.front(); }
  double end() const { return nodes_.back(); }
  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  const std::vector<double>& nodes() const { return nodes_; }
  bool is_uniform() const { return uniform_; }

  // Grid with twice the number of intervals (every midpoint inserted).
  TimeGrid refined() const;

 private:
  std::vector<double> nodes_;
  bool uniform_ = false;
};

// exp(A t) by scaling and squaring with a diagonal Padé approximant of
// degree 3..13, chosen from the 1-norm of A t.
Matrix mat_exp(const Matrix& A, double t = 1.0);

// Integral of f over [a, b] by globally adaptive bisection of 7-point
// Gauss-Legendre panels. Stops when the summed panel error estimate is
// within tol * (1 + |result|).
double quad_adaptive(const std::function<double(double)>& f, double a,
                     double b, double tol = kDefaultQuadTol);

// Solves M x = b for a 2x2 matrix. Throws NearSingularError when
// |det M| < 1e-12 * max(1, ||M||_F^2).
Vector2 solve2(const Matrix2& M, const Vector2& b);

// psi(t) = exp(-t) + t - 1, evaluated without cancellation near t = 0.
double psi(double t);

using OdeRhs = std::function<Vector(double, const Vector&)>;

// Classical fourth-order Runge-Kutta on the nodes of `grid`. Returns the
// state at every node; result[0] == x0.
std::vector<Vector> ode_playout(const OdeRhs& rhs, const Vector& x0,
                                const TimeGrid& grid);

}  // namespace numerics
}  // namespace datgame
