#include "cavent/interaction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavent {

namespace {

constexpr int kHardModeCap = 4096;
constexpr double kTopDecadeBudget = 1e-8;

// sin(n pi / 2) without trigonometry: 0, +1, 0, -1, ...
double half_pi_sine(int n) {
  switch (n % 4) {
    case 1: return 1.0;
    case 3: return -1.0;
    default: return 0.0;
  }
}

// Precomputed dimensionless groups for the Rob integrand at fixed
// (geometry, mode). With w = aX = 1 + aL/2 and wt = a t_a one has
// w^2 - wt^2 = 1 exactly, which is what makes the endpoint-stable
// factorizations below work.
struct RobKernel {
  double t_a;
  double wt;              // a t_a
  double w;               // aX
  double inv_w_plus_wt;   // 1/(w + wt) = w - wt, exactly
  double c_mode;          // n pi / ln(1 + aL)
  double W;
  double Omega;

  RobKernel(int n, const CavityGeometry& geom) {
    const double aL = geom.a * geom.L;
    t_a = geom.t_a;
    w = 1.0 + 0.5 * aL;
    wt = std::sqrt(aL * (1.0 + 0.25 * aL));
    inv_w_plus_wt = 1.0 / (w + wt);
    c_mode = static_cast<double>(n) * std::numbers::pi / std::log1p(aL);
  }

  Complex operator()(double tau) const {
    const double z = tau / t_a;
    const double zmag = std::abs(z);
    const double dist = 1.0 - zmag;
    if (dist <= 0.0) {
      return {0.0, 0.0};  // switching and mode both vanish at the window edge
    }
    // t_a artanh(tau/t_a), switching envelope exponent.
    const double stretched = 0.5 * std::log1p(2.0 * zmag / dist);
    const double sw_arg = t_a * stretched / W;
    const double sw_exponent = -sw_arg * sw_arg;
    if (sw_exponent < -746.0) {
      return {0.0, 0.0};  // exp underflows
    }

    // n pi xi / L' = c_mode * (1/2) ln(1 + (wt - |v|)(wt + |v|)) with
    // v = a tau; all factors are products, no cancellation.
    const double vmag = wt * zmag;
    const double d_minus_1 = (wt * dist) * (wt + vmag);
    const double mode_arg = c_mode * 0.5 * std::log1p(d_minus_1);

    // n pi eta / L' = c_mode * artanh(v/w); w - |v| via the exact
    // identity w - wt = 1/(w + wt).
    const double w_minus_vmag = wt * dist + inv_w_plus_wt;
    if (w_minus_vmag <= 0.0) {
      return {0.0, 0.0};  // rounding pushed past the wedge edge; true value ~ 0
    }
    const double atanh_ratio = 0.5 * std::log1p(2.0 * vmag / w_minus_vmag);
    const double eta_arg = (z < 0.0) ? -c_mode * atanh_ratio : c_mode * atanh_ratio;

    const double phase = eta_arg - Omega * tau;
    const double amp = std::sin(mode_arg) * std::exp(sw_exponent);
    return {amp * std::cos(phase), amp * std::sin(phase)};
  }
};

Complex alice_closed_form(int n, const ProtocolParams& p, double transit_time) {
  const double s = half_pi_sine(n);
  if (s == 0.0) {
    return {0.0, 0.0};
  }
  const double delta = detuning(n, p);
  const double dw = 0.5 * delta * p.W;
  const double magnitude = p.eps * p.W / std::sqrt(static_cast<double>(n)) * std::exp(-dw * dw);
  const double phi = delta * transit_time;
  // -i s m e^{i phi}
  return {s * magnitude * std::sin(phi), -s * magnitude * std::cos(phi)};
}

}  // namespace

void validate(const ProtocolParams& p) {
  if (!(p.L > 0.0)) throw std::invalid_argument("params: L must be positive");
  if (!(p.W > 0.0)) throw std::invalid_argument("params: W must be positive");
  if (!(p.Omega > 0.0)) throw std::invalid_argument("params: Omega must be positive");
  if (!(p.eps > 0.0)) throw std::invalid_argument("params: eps must be positive");
  if (!(p.a >= 0.0)) throw std::invalid_argument("params: a must be non-negative");
  if (p.n_max < 1) throw std::invalid_argument("params: n_max must be >= 1");
  if (!(p.tol > 0.0 && p.tol < 1e-2)) {
    throw std::invalid_argument("params: tol must be in (0, 1e-2)");
  }
}

ProtocolParams make_params(double a, double L, double W) {
  ProtocolParams p;
  p.a = a;
  p.L = L;
  p.W = W;
  p.Omega = std::numbers::pi / L;
  p.t_A = -3.0 * W;
  validate(p);
  return p;
}

double detuning(int n, const ProtocolParams& p) {
  return static_cast<double>(n) * std::numbers::pi / p.L - p.Omega;
}

double switching_alice(double tau, const ProtocolParams& p) {
  const double u = (tau - p.t_A) / p.W;
  return p.eps * std::exp(-u * u);
}

double switching_rob(double tau, const CavityGeometry& geom, const ProtocolParams& p) {
  if (geom.inertial) {
    const double u = tau / p.W;
    return p.eps * std::exp(-u * u);
  }
  const double zmag = std::abs(tau) / geom.t_a;
  const double dist = 1.0 - zmag;
  if (dist <= 0.0) {
    return 0.0;
  }
  const double stretched = geom.t_a * 0.5 * std::log1p(2.0 * zmag / dist);
  const double u = stretched / p.W;
  return p.eps * std::exp(-u * u);
}

Complex amplitude_alice(int n, const ProtocolParams& p) {
  if (n < 1) throw std::domain_error("amplitude_alice: mode index must be >= 1");
  return alice_closed_form(n, p, p.t_A);
}

Complex rob_integrand(double tau, int n, const CavityGeometry& geom, const ProtocolParams& p) {
  if (n < 1) throw std::domain_error("rob_integrand: mode index must be >= 1");
  if (geom.inertial) {
    throw std::domain_error("rob_integrand: geometry is inertial; use the closed form");
  }
  if (std::abs(tau) > geom.t_a) {
    throw std::domain_error("rob_integrand: |tau| exceeds the alignment window t_a");
  }
  RobKernel kernel(n, geom);
  kernel.W = p.W;
  kernel.Omega = p.Omega;
  return kernel(tau);
}

Complex amplitude_rob(int n, const CavityGeometry& geom, const ProtocolParams& p,
                      double amplitude_floor, QuadResult* diagnostics) {
  if (n < 1) throw std::domain_error("amplitude_rob: mode index must be >= 1");
  const double root_npi = std::sqrt(static_cast<double>(n) * std::numbers::pi);
  if (geom.inertial) {
    if (diagnostics != nullptr) {
      *diagnostics = QuadResult{{0.0, 0.0}, 0.0, 0, true};
    }
    return alice_closed_form(n, p, 0.0);
  }
  RobKernel kernel(n, geom);
  kernel.W = p.W;
  kernel.Omega = p.Omega;
  const double q_floor = std::max(1e-30, amplitude_floor * root_npi / p.eps);
  const QuadResult q = integrate_window(kernel, geom.t_a, p.W, p.tol, q_floor);
  if (diagnostics != nullptr) {
    *diagnostics = q;
  }
  if (!q.converged) {
    throw ConvergenceError(q);
  }
  const double pref = p.eps / root_npi;
  return Complex{0.0, -pref} * q.value;
}

double ModeAmplitudes::total_weight() const {
  double s = 0.0;
  for (const auto& c : alice) s += std::norm(c);
  for (const auto& c : rob) s += std::norm(c);
  return s;
}

ModeAmplitudes compute_amplitudes(const ProtocolParams& p) {
  validate(p);
  const CavityGeometry geom = make_geometry(p.a, p.L);

  ModeAmplitudes out;
  out.params = p;
  const double amp_floor = 1e-10 * p.eps * p.W;
  std::vector<double> rob_err;  // absolute error of each I_R(n)

  int target = std::max(1, p.n_max);
  while (true) {
    for (int n = static_cast<int>(out.alice.size()) + 1; n <= target; ++n) {
      out.alice.push_back(amplitude_alice(n, p));
      QuadResult q;
      Complex ir;
      try {
        ir = amplitude_rob(n, geom, p, amp_floor, &q);
      } catch (const ConvergenceError& e) {
        out.quad_converged = false;
        q = e.result;
        ir = Complex{0.0, -p.eps / std::sqrt(static_cast<double>(n) * std::numbers::pi)} *
             q.value;
      }
      out.rob.push_back(ir);
      rob_err.push_back(q.err_estimate * p.eps /
                        std::sqrt(static_cast<double>(n) * std::numbers::pi));
      out.evaluations += q.evaluations;
    }

    double total = 0.0;
    double top = 0.0;
    const int decade_start = std::max(1, target - 9);  // ten highest retained modes
    for (int n = 1; n <= target; ++n) {
      const double wgt = std::norm(out.alice[n - 1]) + std::norm(out.rob[n - 1]);
      total += wgt;
      if (n >= decade_start) top += wgt;
    }
    out.truncation_error = (total > 0.0) ? top / total : 0.0;
    if (out.truncation_error < kTopDecadeBudget) {
      out.truncation_converged = true;
      break;
    }
    if (target >= kHardModeCap) {
      out.truncation_converged = false;
      break;
    }
    target = std::min(2 * target, kHardModeCap);
  }

  const double scale = std::sqrt(out.total_weight());
  if (scale > 0.0) {
    for (double e : rob_err) {
      out.max_quad_rel_err = std::max(out.max_quad_rel_err, e / scale);
    }
  }
  return out;
}

}  // namespace cavent
