#include "datgame/control_law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "datgame/reduction.hpp"

namespace datgame {

ControlLaw::ControlLaw(Sampled s) {
  if (s.values.size() != s.grid.size())
    throw std::invalid_argument("Sampled law: values and grid sizes differ");
  law_ = std::move(s);
}

ControlLaw operator+(const ControlLaw& a, const ControlLaw& b) {
  Superposition sum;
  for (const ControlLaw* law : {&a, &b}) {
    if (const auto* s = law->get_if<Superposition>())
      sum.terms.insert(sum.terms.end(), s->terms.begin(), s->terms.end());
    else
      sum.terms.push_back(*law);
  }
  return sum;
}

std::vector<double> legendre_values(std::size_t n, double x) {
  std::vector<double> p(n);
  if (n > 0) p[0] = 1.0;
  if (n > 1) p[1] = x;
  for (std::size_t k = 2; k < n; ++k) {
    const double kk = static_cast<double>(k);
    p[k] = ((2.0 * kk - 1.0) * x * p[k - 1] - (kk - 1.0) * p[k - 2]) / kk;
  }
  return p;
}

namespace {

struct Evaluator {
  const Kernels& kernels;
  double t;

  double operator()(const KernelCombo& k) const {
    if (k.hp == 0.0 && k.he == 0.0 && k.ge == 0.0) return 0.0;
    const auto v = kernels.at(t);
    return k.hp * v.hp + k.he * v.he + k.ge * v.ge;
  }
  double operator()(const Constant& c) const { return c.value; }
  double operator()(const AffineInTime& a) const { return a.slope * t + a.intercept; }
  double operator()(const Sampled& s) const {
    const auto& nodes = s.grid.nodes();
    if (t <= nodes.front()) return s.values.front();
    if (t >= nodes.back()) return s.values.back();
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - nodes.begin()) - 1;
    const double lambda = (t - nodes[i]) / (nodes[i + 1] - nodes[i]);
    return (1.0 - lambda) * s.values[i] + lambda * s.values[i + 1];
  }
  double operator()(const LegendreSeries& l) const {
    const auto p = legendre_values(l.coeffs.size(), 2.0 * t / l.t_f - 1.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) sum += l.coeffs[k] * p[k];
    return sum;
  }
  double operator()(const Superposition& s) const {
    double sum = 0.0;
    for (const auto& term : s.terms) sum += std::visit(*this, term.variant());
    return sum;
  }
};

}  // namespace

double eval_control(const ControlLaw& law, const Kernels& kernels, double t) {
  const double slack = 1e-12 * std::max(1.0, kernels.t_f());
  if (!(t >= -slack && t <= kernels.t_f() + slack))
    throw std::out_of_range("eval_control: t = " + std::to_string(t) +
                            " outside [0, t_f]");
  const double v = std::visit(Evaluator{kernels, t}, law.variant());
  if (!std::isfinite(v)) throw std::domain_error("eval_control: non-finite value");
  return v;
}

}  // namespace datgame
