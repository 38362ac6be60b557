#pragma once

#include <variant>
#include <vector>

#include "datgame/numerics.hpp"

namespace datgame {

// hp * h_p(t) + he * h_e(t) + ge * g_e(t). Pursuer laws use hp only,
// evader laws use (he, ge).
struct KernelCombo {
  double hp = 0.0;
  double he = 0.0;
  double ge = 0.0;
};

struct Constant {
  double value = 0.0;
};

// slope * t + intercept
struct AffineInTime {
  double slope = 0.0;
  double intercept = 0.0;
};

// Piecewise-linear interpolation of values on grid nodes.
struct Sampled {
  numerics::TimeGrid grid;
  std::vector<double> values;
};

// sum_k coeffs[k] * P_k(2 t / t_f - 1), P_k the Legendre polynomials.
struct LegendreSeries {
  double t_f = 1.0;
  std::vector<double> coeffs;
};

class ControlLaw;

struct Superposition {
  std::vector<ControlLaw> terms;
};

// Open-loop scalar control on [0, t_f].
class ControlLaw {
 public:
  using Variant = std::variant<KernelCombo, Constant, AffineInTime, Sampled,
                               LegendreSeries, Superposition>;

  ControlLaw() : law_(Constant{0.0}) {}
  ControlLaw(KernelCombo k) : law_(k) {}
  ControlLaw(Constant c) : law_(c) {}
  ControlLaw(AffineInTime a) : law_(a) {}
  ControlLaw(Sampled s);
  ControlLaw(LegendreSeries l) : law_(std::move(l)) {}
  ControlLaw(Superposition s) : law_(std::move(s)) {}

  const Variant& variant() const { return law_; }

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&law_);
  }

 private:
  Variant law_;
};

ControlLaw operator+(const ControlLaw& a, const ControlLaw& b);

// Value of P_k(x) for k = 0..n-1 at x in [-1, 1].
std::vector<double> legendre_values(std::size_t n, double x);

}  // namespace datgame
