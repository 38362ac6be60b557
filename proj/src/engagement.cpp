#include "datgame/engagement.hpp"

#include <cmath>
#include <stdexcept>

namespace datgame {

void ControllerModel::validate() const {
  const Eigen::Index n = sys.rows();
  if (sys.cols() != n || inp.size() != n || out.size() != n)
    throw std::invalid_argument("ControllerModel: inconsistent dimensions");
  if (!sys.allFinite() || !inp.allFinite() || !out.allFinite() ||
      !std::isfinite(feed))
    throw std::invalid_argument("ControllerModel: non-finite entries");
}

ControllerModel ControllerModel::first_order(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("first_order: tau must be positive");
  ControllerModel m;
  m.sys = Matrix::Constant(1, 1, -1.0 / tau);
  m.inp = Vector::Constant(1, 1.0 / tau);
  m.out = Vector::Constant(1, 1.0);
  m.feed = 0.0;
  return m;
}

ControllerModel ControllerModel::zero_order(double feed) {
  ControllerModel m;
  m.feed = feed;
  return m;
}

Position initial_zem(const EngagementGeometry& g, double t_f, double t_c) {
  if (!(g.Vp > 0.0) || !(g.Ve > 0.0))
    throw std::invalid_argument("initial_zem: speeds must be positive");
  return {t_f * (g.Ve * g.phi_e0 - g.Vp * g.phi_p0),
          (t_f + t_c) * g.Ve * g.phi_e0};
}

void EngagementScenario::validate() const {
  pursuer.validate();
  evader.validate();
  if (!(t_f > 0.0) || !std::isfinite(t_f))
    throw std::invalid_argument("scenario: t_f must be positive");
  if (!(t_c >= 0.0) || !std::isfinite(t_c))
    throw std::invalid_argument("scenario: t_c must be nonnegative");
  if (!(alpha > 0.0)) throw std::invalid_argument("scenario: alpha must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("scenario: beta must be positive");
  if (!(ae_max > 0.0)) throw std::invalid_argument("scenario: ae_max must be positive");
  if (!std::isfinite(initial.z0) || !std::isfinite(initial.w0))
    throw std::invalid_argument("scenario: initial position must be finite");
}

StateSpace build_player_ss(const ControllerModel& m) {
  m.validate();
  const Eigen::Index n = m.order();
  StateSpace ss;
  ss.A = Matrix::Zero(n + 2, n + 2);
  ss.A(0, 1) = 1.0;
  ss.A.block(1, 2, 1, n) = m.out.transpose();
  ss.A.block(2, 2, n, n) = m.sys;
  ss.B = Vector::Zero(n + 2);
  ss.B(1) = m.feed;
  ss.B.segment(2, n) = m.inp;
  ss.D = RowVector::Zero(n + 2);
  ss.D(0) = 1.0;
  return ss;
}

StateSpace build_relative_ss(const ControllerModel& p, const ControllerModel& e) {
  p.validate();
  e.validate();
  const Eigen::Index np = p.order();
  const Eigen::Index ne = e.order();
  const Eigen::Index n = np + ne + 2;
  StateSpace ss;
  ss.A = Matrix::Zero(n, n);
  ss.A(0, 1) = 1.0;
  ss.A.block(1, 2, 1, np) = -p.out.transpose();
  ss.A.block(1, 2 + np, 1, ne) = e.out.transpose();
  ss.A.block(2, 2, np, np) = p.sys;
  ss.A.block(2 + np, 2 + np, ne, ne) = e.sys;

  ss.B = Vector::Zero(n);
  ss.B(1) = -p.feed;
  ss.B.segment(2, np) = p.inp;

  Vector C = Vector::Zero(n);
  C(1) = e.feed;
  C.segment(2 + np, ne) = e.inp;
  ss.C = C;

  ss.D = RowVector::Zero(n);
  ss.D(0) = 1.0;
  return ss;
}

StateSpace build_evader_ss(const ControllerModel& e) { return build_player_ss(e); }

StateSpace build_full_ss(const ControllerModel& p, const ControllerModel& e) {
  const StateSpace sp = build_player_ss(p);
  const StateSpace se = build_player_ss(e);
  const Eigen::Index n1 = sp.A.rows();
  const Eigen::Index n2 = se.A.rows();
  StateSpace ss;
  ss.A = Matrix::Zero(n1 + n2, n1 + n2);
  ss.A.topLeftCorner(n1, n1) = sp.A;
  ss.A.bottomRightCorner(n2, n2) = se.A;
  ss.B = Vector::Zero(n1 + n2);
  ss.B.head(n1) = sp.B;
  Vector C = Vector::Zero(n1 + n2);
  C.tail(n2) = se.B;
  ss.C = C;
  // Miss distance y_e - y_p.
  ss.D = RowVector::Zero(n1 + n2);
  ss.D(0) = -1.0;
  ss.D(n1) = 1.0;
  return ss;
}

Vector initial_full_state(const EngagementScenario& s) {
  const Eigen::Index n1 = s.pursuer.order() + 2;
  const Eigen::Index n2 = s.evader.order() + 2;
  double vp = 0.0;
  double ve = 0.0;
  if (s.geometry) {
    vp = s.geometry->Vp * s.geometry->phi_p0;
    ve = s.geometry->Ve * s.geometry->phi_e0;
  } else {
    ve = s.initial.w0 / (s.t_f + s.t_c);
    vp = ve - s.initial.z0 / s.t_f;
  }
  Vector x = Vector::Zero(n1 + n2);
  x(1) = vp;
  x(n1 + 1) = ve;
  return x;
}

}  // namespace datgame
