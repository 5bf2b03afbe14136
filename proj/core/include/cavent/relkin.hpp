#pragma once

// Relativistic kinematics for a uniformly accelerated cavity: the
// Rindler chart over the right wedge x > |t|, the mirror and atom
// trajectories, and the derived cavity geometry.

namespace cavent {

// Event in inertial coordinates (t, x), natural units c = 1.
struct MinkowskiEvent {
  double t = 0.0;  // seconds
  double x = 0.0;  // light-seconds
};

// Event in Rindler coordinates (eta, xi) adapted to proper
// acceleration a; covers only the right wedge.
struct RindlerEvent {
  double eta = 0.0;  // seconds
  double xi = 0.0;   // light-seconds
};

// Derived kinematic quantities for the protocol at acceleration a and
// cavity length L (both cavities have length L at the t = 0 alignment).
//
// With the inner mirror fixed at xi = 0, the mirror apexes are
// X1 = 1/a and X2 = X1 + L, the atom sits at X = X1 + L/2, the Rindler
// cavity length is L' = ln(1 + aL)/a, and the atom stays aligned with
// the moving cavity for |t| < t_a, t_a = sqrt(L/a + L^2/4).
//
// a = 0 is the inertial degenerate case: Lp = L, and the divergent
// fields (X1, X2, X, t_a) are tagged via `inertial` and must not be
// used in arithmetic.
struct CavityGeometry {
  double a = 0.0;    // proper acceleration, 1/s
  double L = 0.0;    // cavity length at t = 0, light-seconds
  double X1 = 0.0;   // inner-mirror apex, light-seconds
  double X2 = 0.0;   // outer-mirror apex, light-seconds
  double X = 0.0;    // atom position, light-seconds
  double Lp = 0.0;   // Rindler cavity length L', light-seconds
  double t_a = 0.0;  // alignment half-window, seconds
  bool inertial = false;
};

// x = a^{-1} e^{a xi} cosh(a eta), t = a^{-1} e^{a xi} sinh(a eta).
// Throws std::domain_error for a <= 0.
MinkowskiEvent to_minkowski(const RindlerEvent& p, double a);

// Inverse chart: eta = a^{-1} artanh(t/x), xi = a^{-1} ln(a sqrt(x^2 - t^2)).
// Throws std::domain_error for a <= 0 or a point outside the right
// wedge (x <= |t|), i.e. on or beyond the horizon.
RindlerEvent to_rindler(const MinkowskiEvent& p, double a);

// Minkowski trajectory of a mirror stationary at Rindler position with
// apex `apex`: x(t) = sqrt(t^2 + apex^2). Throws for apex <= 0.
double rob_mirror_position(double t, double apex);

// The inertial atom (t, x) = (tau, X) seen from the Rindler chart:
// eta = a^{-1} artanh(tau/X), xi = a^{-1} ln(a sqrt(X^2 - tau^2)).
// Requires |tau| < X and a non-inertial geometry.
RindlerEvent atom_trajectory_rindler(double tau, const CavityGeometry& geom);

// Builds the full geometry. L > 0 required; a = 0 yields the tagged
// inertial geometry. All expressions are evaluated through the
// dimensionless groups aL, aX = 1 + aL/2 so the result is stable from
// aL ~ 1e-16 up to aL ~ 1e16 and beyond.
CavityGeometry make_geometry(double a, double L);

}  // namespace cavent
