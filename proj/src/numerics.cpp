#include "datgame/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "datgame/errors.hpp"

namespace datgame::numerics {

TimeGrid TimeGrid::uniform(double t_start, double t_end, std::size_t nodes) {
  if (nodes < 2) throw std::invalid_argument("TimeGrid needs at least 2 nodes");
  if (!(t_end > t_start))
    throw std::invalid_argument("TimeGrid requires t_end > t_start");
  std::vector<double> t(nodes);
  const double h = (t_end - t_start) / static_cast<double>(nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i)
    t[i] = t_start + h * static_cast<double>(i);
  t.back() = t_end;
  TimeGrid grid(std::move(t));
  grid.uniform_ = true;
  return grid;
}

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2)
    throw std::invalid_argument("TimeGrid needs at least 2 nodes");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1]) || !std::isfinite(nodes_[i]))
      throw std::invalid_argument("TimeGrid nodes must be finite and strictly increasing");
  }
}

TimeGrid TimeGrid::refined() const {
  if (uniform_) return uniform(start(), end(), 2 * size() - 1);
  std::vector<double> t;
  t.reserve(2 * size() - 1);
  for (std::size_t i = 0; i + 1 < size(); ++i) {
    t.push_back(nodes_[i]);
    t.push_back(0.5 * (nodes_[i] + nodes_[i + 1]));
  }
  t.push_back(nodes_.back());
  return TimeGrid(std::move(t));
}

namespace {

// Padé numerator/denominator split: exp(A) ~ (V - U)^-1 (V + U).
void pade_terms(const Matrix& A, int degree, Matrix* U, Matrix* V) {
  const Eigen::Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  switch (degree) {
    case 3: {
      constexpr double b[] = {120.0, 60.0, 12.0, 1.0};
      *U = A * (b[3] * A2 + b[1] * I);
      *V = b[2] * A2 + b[0] * I;
      return;
    }
    case 5: {
      constexpr double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
      const Matrix A4 = A2 * A2;
      *U = A * (b[5] * A4 + b[3] * A2 + b[1] * I);
      *V = b[4] * A4 + b[2] * A2 + b[0] * I;
      return;
    }
    case 7: {
      constexpr double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                              25200.0,    1512.0,    56.0,      1.0};
      const Matrix A4 = A2 * A2;
      const Matrix A6 = A4 * A2;
      *U = A * (b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
      *V = b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
      return;
    }
    case 9: {
      constexpr double b[] = {17643225600.0, 8821612800.0, 2075673600.0,
                              302702400.0,   30270240.0,   2162160.0,
                              110880.0,      3960.0,       90.0,
                              1.0};
      const Matrix A4 = A2 * A2;
      const Matrix A6 = A4 * A2;
      const Matrix A8 = A6 * A2;
      *U = A * (b[9] * A8 + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
      *V = b[8] * A8 + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
      return;
    }
    default: {
      constexpr double b[] = {
          64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
          1187353796428800.0,  129060195264000.0,   10559470521600.0,
          670442572800.0,      33522128640.0,       1323241920.0,
          40840800.0,          960960.0,            16380.0,
          182.0,               1.0};
      const Matrix A4 = A2 * A2;
      const Matrix A6 = A4 * A2;
      const Matrix inner_u = b[13] * A6 + b[11] * A4 + b[9] * A2;
      const Matrix inner_v = b[12] * A6 + b[10] * A4 + b[8] * A2;
      *U = A * (A6 * inner_u + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
      *V = A6 * inner_v + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
      return;
    }
  }
}

}  // namespace

Matrix mat_exp(const Matrix& A, double t) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("mat_exp requires a square matrix");
  if (!std::isfinite(t)) throw std::invalid_argument("mat_exp: non-finite time");
  const Eigen::Index n = A.rows();
  if (n == 0) return Matrix(0, 0);
  if (t == 0.0) return Matrix::Identity(n, n);

  Matrix At = A * t;
  if (!At.allFinite()) throw NumericalError("mat_exp: non-finite matrix entries");
  const double norm1 = At.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) return Matrix::Identity(n, n);

  // Backward-error bounds for each degree (double precision).
  constexpr std::array<std::pair<int, double>, 4> kThetas = {{
      {3, 1.495585217958292e-2},
      {5, 2.539398330063230e-1},
      {7, 9.504178996162932e-1},
      {9, 2.097847961257068e0},
  }};
  constexpr double kTheta13 = 5.371920351148152e0;

  Matrix U, V;
  int squarings = 0;
  int degree = 13;
  for (const auto& [m, theta] : kThetas) {
    if (norm1 <= theta) {
      degree = m;
      break;
    }
  }
  if (degree == 13 && norm1 > kTheta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta13))));
    At /= std::ldexp(1.0, squarings);
  }
  pade_terms(At, degree, &U, &V);
  Matrix result = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

namespace {

constexpr std::array<double, 7> kGaussNodes = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
constexpr std::array<double, 7> kGaussWeights = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
    0.1294849661688697};

double gauss7(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    const double v = f(c + r * kGaussNodes[i]);
    if (!std::isfinite(v))
      throw NumericalError("quad_adaptive: integrand is not finite at t = " +
                           std::to_string(c + r * kGaussNodes[i]));
    sum += kGaussWeights[i] * v;
  }
  return r * sum;
}

struct Panel {
  double a, b;
  double left, right;  // 7-point values on the two halves
  double error;
  double value() const { return left + right; }
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b,
                 double whole) {
  const double m = 0.5 * (a + b);
  Panel p{a, b, gauss7(f, a, m), gauss7(f, m, b), 0.0};
  p.error = std::abs(whole - p.value());
  return p;
}

}  // namespace

double quad_adaptive(const std::function<double(double)>& f, double a,
                     double b, double tol) {
  if (!(a <= b)) throw std::invalid_argument("quad_adaptive requires a <= b");
  if (a == b) return 0.0;
  constexpr std::size_t kMaxPanels = 50000;

  std::priority_queue<Panel> panels;
  Panel first = make_panel(f, a, b, gauss7(f, a, b));
  double total = first.value();
  double total_error = first.error;
  panels.push(first);

  while (total_error > tol * (1.0 + std::abs(total))) {
    if (panels.size() >= kMaxPanels)
      throw NumericalError("quad_adaptive: subdivision limit reached");
    Panel worst = panels.top();
    panels.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      // Interval exhausted at machine resolution; accept what we have.
      break;
    }
    Panel lo = make_panel(f, worst.a, m, worst.left);
    Panel hi = make_panel(f, m, worst.b, worst.right);
    total += lo.value() + hi.value() - worst.value();
    total_error += lo.error + hi.error - worst.error;
    panels.push(lo);
    panels.push(hi);
  }
  // Re-sum to shed the drift from incremental updates.
  double sum = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value();
    panels.pop();
  }
  return sum;
}

Vector2 solve2(const Matrix2& M, const Vector2& b) {
  const double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  const double scale = std::max(1.0, M.squaredNorm());
  if (!(std::abs(det) >= 1e-12 * scale))
    throw NearSingularError("solve2: |det| = " + std::to_string(std::abs(det)) +
                            " below singularity threshold");
  Vector2 x;
  x(0) = (M(1, 1) * b(0) - M(0, 1) * b(1)) / det;
  x(1) = (M(0, 0) * b(1) - M(1, 0) * b(0)) / det;
  return x;
}

double psi(double t) {
  if (t < 1e-3) {
    // Alternating Taylor series; seven terms are exact to round-off here.
    double term = t * t / 2.0;
    double sum = term;
    for (int k = 3; k <= 8; ++k) {
      term *= -t / static_cast<double>(k);
      sum += term;
    }
    return sum;
  }
  return std::expm1(-t) + t;
}

std::vector<Vector> ode_playout(const OdeRhs& rhs, const Vector& x0,
                                const TimeGrid& grid) {
  std::vector<Vector> states;
  states.reserve(grid.size());
  states.push_back(x0);
  Vector x = x0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double t = grid[i];
    const double h = grid[i + 1] - t;
    const Vector k1 = rhs(t, x);
    const Vector k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    const Vector k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    const Vector k4 = rhs(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite())
      throw NumericalError("ode_playout: state became non-finite at t = " +
                           std::to_string(grid[i + 1]));
    states.push_back(x);
  }
  return states;
}

}  // namespace datgame::numerics
