#pragma once

#include <complex>
#include <vector>

#include "cavent/quad.hpp"
#include "cavent/relkin.hpp"

// The two-level atom crossing both cavities, modelled as a monopole
// detector with Gaussian switching. First-order perturbation theory
// gives one emission amplitude per cavity mode:
//
//   I_A(n) = -(i eps W / sqrt(n)) sin(n pi / 2)
//            exp(-Delta^2 W^2 / 4 + i Delta t_A),   Delta = n pi / L - Omega
//
// in closed form for the inertial cavity, and for the accelerated one
//
//   I_R(n) = -(i eps / sqrt(n pi)) * Integral over (-t_a, t_a) of
//            sin(n pi xi(tau)/L') exp[-(t_a artanh(tau/t_a))^2 / W^2
//                                     + i n pi eta(tau)/L' - i Omega tau]
//
// evaluated numerically. All integrand groups are computed through the
// dimensionless combinations a*tau, aX = 1 + aL/2, a*t_a and ln(1+aL),
// which keeps them stable from aL ~ 1e-16 to aL ~ 1e16.

namespace cavent {

// Physical inputs, natural units (c = 1).
struct ProtocolParams {
  double a = 0.0;        // proper acceleration, 1/s (0 = inertial)
  double L = 0.0;        // cavity length, light-seconds
  double W = 0.0;        // switching width, seconds
  double Omega = 0.0;    // atom gap, rad/s
  double eps = 1e-3;     // coupling (perturbative scale)
  double t_A = 0.0;      // Alice-cavity transit center, seconds
  int n_max = 16;        // initial mode cutoff (auto-escalated)
  double tol = 1e-8;     // quadrature relative tolerance
};

// Validates the invariants above; throws std::invalid_argument.
void validate(const ProtocolParams& p);

// Convenience: params at Alice resonance (Omega = pi/L, t_A = -3W).
ProtocolParams make_params(double a, double L, double W);

// Detuning of inertial mode n from the atom: Delta = n pi / L - Omega.
double detuning(int n, const ProtocolParams& p);

// Gaussian switching of the inertial cavity, peaked at t_A.
double switching_alice(double tau, const ProtocolParams& p);

// Switching of the accelerated cavity: Gaussian in the stretched time
// t_a artanh(tau/t_a), centred at 0 and vanishing at |tau| >= t_a.
// Reduces to eps exp(-tau^2/W^2) in the inertial limit (and on the
// a = 0 geometry exactly).
double switching_rob(double tau, const CavityGeometry& geom, const ProtocolParams& p);

// Closed-form Alice amplitude; exactly zero for even n.
Complex amplitude_alice(int n, const ProtocolParams& p);

// Rob integrand at proper time tau for mode n (value of the integral
// kernel above, without the -(i eps / sqrt(n pi)) prefactor and
// without the coupling eps). Returns 0 at tau = +-t_a; throws for
// |tau| > t_a.
Complex rob_integrand(double tau, int n, const CavityGeometry& geom, const ProtocolParams& p);

// One Rob amplitude. For a = 0 returns the closed form (I_A with
// t_A = 0); otherwise integrates rob_integrand with integrate_window.
// abs_floor is the absolute accuracy floor forwarded to the
// quadrature, in units of the amplitude (see compute_amplitudes).
// Throws ConvergenceError when the quadrature fails at params.tol.
Complex amplitude_rob(int n, const CavityGeometry& geom, const ProtocolParams& p,
                      double amplitude_floor = 1e-30, QuadResult* diagnostics = nullptr);

// Both amplitude arrays over n = 1..n_modes plus truncation/quadrature
// diagnostics.
struct ModeAmplitudes {
  std::vector<Complex> alice;  // I_A(n), index n-1
  std::vector<Complex> rob;    // I_R(n), index n-1
  ProtocolParams params;
  double truncation_error = 0.0;    // top-decade weight / total weight
  bool truncation_converged = true; // false if the hard cap was hit first
  double max_quad_rel_err = 0.0;    // worst per-mode err / max(|I_R|, floor)
  bool quad_converged = true;
  long evaluations = 0;

  int n_modes() const { return static_cast<int>(alice.size()); }
  // Sum of |I_A|^2 + |I_R|^2 (the raw squared norm, order eps^2).
  double total_weight() const;
};

// Fills I_A(n), I_R(n) for n = 1..n_max, doubling n_max until the top
// decade of retained modes (the ten highest) holds less than 1e-8 of
// the total weight, up to a hard cap of 4096 modes. Per-mode
// quadrature runs with an absolute floor of 1e-10 * eps * W so that
// negligible high modes settle immediately instead of chasing
// relative accuracy on values that are zero to working precision.
ModeAmplitudes compute_amplitudes(const ProtocolParams& p);

}  // namespace cavent
