#include "cavent/relkin.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cavent {

MinkowskiEvent to_minkowski(const RindlerEvent& p, double a) {
  if (!(a > 0.0)) {
    throw std::domain_error("to_minkowski: proper acceleration must be positive");
  }
  const double r = std::exp(a * p.xi) / a;
  return {r * std::sinh(a * p.eta), r * std::cosh(a * p.eta)};
}

RindlerEvent to_rindler(const MinkowskiEvent& p, double a) {
  if (!(a > 0.0)) {
    throw std::domain_error("to_rindler: proper acceleration must be positive");
  }
  if (!(p.x > std::abs(p.t))) {
    throw std::domain_error(
        "to_rindler: event (t=" + std::to_string(p.t) + ", x=" + std::to_string(p.x) +
        ") lies on or beyond the Rindler horizon x = |t| (right wedge requires x > |t|)");
  }
  // x^2 - t^2 factored to avoid cancellation near the horizon.
  const double s2 = (p.x - p.t) * (p.x + p.t);
  return {std::atanh(p.t / p.x) / a, 0.5 * std::log(a * a * s2) / a};
}

double rob_mirror_position(double t, double apex) {
  if (!(apex > 0.0)) {
    throw std::domain_error("rob_mirror_position: apex must be positive");
  }
  return std::hypot(t, apex);
}

RindlerEvent atom_trajectory_rindler(double tau, const CavityGeometry& geom) {
  if (geom.inertial) {
    throw std::domain_error("atom_trajectory_rindler: geometry is inertial (a = 0)");
  }
  const double a = geom.a;
  const double aL = a * geom.L;
  const double w = 1.0 + 0.5 * aL;                      // aX
  const double wt = std::sqrt(aL * (1.0 + 0.25 * aL));  // a t_a; w^2 - wt^2 = 1
  const double v = a * tau;                             // a tau
  if (!(std::abs(v) < w)) {
    throw std::domain_error("atom_trajectory_rindler: |tau| >= X, outside the wedge");
  }
  // a^2 (X^2 - tau^2) = (w - v)(w + v) = 1 + (wt - v)(wt + v), the
  // second form being exact at v = +-wt where xi vanishes.
  const double d_minus_1 = (wt - v) * (wt + v);
  const double eta = std::atanh(v / w) / a;
  const double xi = 0.5 * std::log1p(d_minus_1) / a;
  return {eta, xi};
}

CavityGeometry make_geometry(double a, double L) {
  if (!(L > 0.0)) {
    throw std::domain_error("make_geometry: cavity length must be positive");
  }
  if (!(a >= 0.0)) {
    throw std::domain_error("make_geometry: acceleration must be non-negative");
  }
  CavityGeometry g;
  g.a = a;
  g.L = L;
  if (a == 0.0) {
    g.inertial = true;
    g.Lp = L;
    const double inf = std::numeric_limits<double>::infinity();
    g.X1 = g.X2 = g.X = g.t_a = inf;
    return g;
  }
  const double aL = a * L;
  g.X1 = 1.0 / a;
  g.X2 = g.X1 + L;
  g.X = g.X1 + 0.5 * L;
  g.Lp = std::log1p(aL) / a;
  g.t_a = std::sqrt(aL * (1.0 + 0.25 * aL)) / a;  // sqrt(L/a + L^2/4)
  return g;
}

}  // namespace cavent
