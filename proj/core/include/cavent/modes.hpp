#pragma once

#include <complex>

// Dirichlet mode functions of the two cavities. Both charts give the
// same conformal form: a standing sine in the spatial coordinate with
// a pure phase in the time coordinate,
//
//   u_n(t, x)    = (n pi)^{-1/2} sin(n pi (x - x1)/L)  e^{-i n pi t / L}
//   v_n(eta, xi) = (n pi)^{-1/2} sin(n pi xi / L')     e^{-i n pi eta / L'}
//
// The (n pi)^{-1/2} prefactor follows the bookkeeping used by the
// amplitude integrals downstream; entropies and probability ratios are
// insensitive to the overall mode normalization convention.

namespace cavent {

using Complex = std::complex<double>;

// Inertial cavity mode u_n at (t, x); mirrors at x1 and x1 + L.
// Throws std::domain_error for n < 1 or x outside [x1, x1 + L].
Complex minkowski_mode(int n, double t, double x, double L, double x1);

// Accelerated cavity mode v_n at (eta, xi); mirrors at xi = 0 and Lp.
Complex rindler_mode(int n, double eta, double xi, double Lp);

// Angular frequency n pi / length of mode n in a cavity of the given
// coordinate length.
double mode_frequency(int n, double length);

}  // namespace cavent
