#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

// Quadrature for emission-amplitude integrals over the alignment
// window (-t_a, t_a).
//
// integrate_window substitutes tau = t_a tanh(s); the window maps to
// the whole real s-line, where the intended integrands are smooth and
// carry the explicit damping exp(-(t_a s / W)^2) (the transformed
// switching envelope) times the Jacobian t_a sech^2(s). The s-line is
// truncated where either damping factor alone drops below tol * 1e-3
// (never beyond |s| = 30) and integrated by adaptive bisection with a
// Gauss(7)/Kronrod(15) embedded pair.
//
// oracle_integrate is the independent cross-check: composite Simpson
// directly in tau, no substitution, no adaptivity.

namespace cavent {

using Complex = std::complex<double>;

struct QuadResult {
  Complex value{0.0, 0.0};
  double err_estimate = 0.0;  // absolute error bound
  long evaluations = 0;
  bool converged = false;
};

// Thrown by callers that require convergence; carries what was achieved.
struct ConvergenceError : std::runtime_error {
  QuadResult result;
  explicit ConvergenceError(const QuadResult& r)
      : std::runtime_error("quadrature did not converge: achieved error estimate " +
                           std::to_string(r.err_estimate) + " after " +
                           std::to_string(r.evaluations) + " evaluations"),
        result(r) {}
};

// Simpson oracle output: the full-resolution value plus the value at
// half the panel count, so callers can form a Richardson estimate.
struct OracleResult {
  Complex value{0.0, 0.0};
  Complex value_half{0.0, 0.0};
  double err_estimate = 0.0;  // |value - value_half| / 15
  long evaluations = 0;
  bool converged = true;
};

namespace quad_detail {

// 15-point Kronrod / 7-point Gauss pair (positive half; standard values).
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEstimate {
  Complex value{0.0, 0.0};
  double err = 0.0;
  double resabs = 0.0;
};

template <typename F>
PanelEstimate gauss_kronrod_15(F&& g, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const Complex fc = g(center);
  Complex resk = kWgk[7] * fc;
  Complex resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Complex f1 = g(center - dx);
    const Complex f2 = g(center + dx);
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) {
      resg += kWg[(j - 1) / 2] * (f1 + f2);
    }
  }
  PanelEstimate out;
  out.value = resk * half;
  out.err = std::abs(resk - resg) * half;
  out.resabs = resabs * half;
  return out;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  PanelEstimate est;
};

// Compensated accumulation for the final deterministic sum.
struct KahanAccumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace quad_detail

// Integrates f over the open window (-t_a, t_a). W is the Gaussian
// damping scale the integrand is known to carry in the variable
// t_a artanh(tau/t_a); it controls only where the s-line may be
// truncated. The error target is tol relative to the integral. The
// absolute floor covers integrands whose true value is (near) zero:
// convergence is declared once the global error estimate falls below
//   max(tol * |value|, abs_floor, 50 eps * integral of |f|),
// the last term being the attainable-roundoff limit.
template <typename F>
QuadResult integrate_window(F&& f, double t_a, double W, double tol,
                            double abs_floor = 1e-30, long max_evaluations = 1000000) {
  if (!(t_a > 0.0) || !std::isfinite(t_a)) {
    throw std::invalid_argument("integrate_window: t_a must be positive and finite");
  }
  if (!(W > 0.0)) {
    throw std::invalid_argument("integrate_window: W must be positive");
  }
  if (!(tol > 0.0 && tol < 1.0)) {
    throw std::invalid_argument("integrate_window: tol must be in (0, 1)");
  }

  const double cut = tol * 1e-3;
  const double s_gauss = (W / t_a) * std::sqrt(std::log(1.0 / cut));
  const double s_sech = 0.5 * std::log(4.0 / cut);
  const double s_max = std::min(30.0, std::min(s_gauss, s_sech));

  auto g = [&](double s) -> Complex {
    const double th = std::tanh(s);
    const double jac = t_a * (1.0 - th * th);  // t_a sech^2(s)
    return f(t_a * th) * jac;
  };

  // Max-heap on the local error estimate; ties broken by the left
  // endpoint so the refinement order is fully deterministic.
  auto heap_less = [](const quad_detail::Interval& a, const quad_detail::Interval& b) {
    if (a.est.err != b.est.err) return a.est.err < b.est.err;
    return a.lo > b.lo;
  };

  constexpr int kSeeds = 8;
  std::vector<quad_detail::Interval> active;
  std::vector<quad_detail::Interval> finished;  // too narrow to split further
  active.reserve(256);
  long evals = 0;
  Complex total{0.0, 0.0};
  double total_err = 0.0;
  double total_resabs = 0.0;
  for (int i = 0; i < kSeeds; ++i) {
    quad_detail::Interval iv;
    iv.lo = -s_max + 2.0 * s_max * static_cast<double>(i) / kSeeds;
    iv.hi = -s_max + 2.0 * s_max * static_cast<double>(i + 1) / kSeeds;
    iv.est = quad_detail::gauss_kronrod_15(g, iv.lo, iv.hi);
    evals += 15;
    total += iv.est.value;
    total_err += iv.est.err;
    total_resabs += iv.est.resabs;
    active.push_back(iv);
  }
  std::make_heap(active.begin(), active.end(), heap_less);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double min_width = 16.0 * eps * s_max;
  bool converged = false;

  while (true) {
    const double threshold =
        std::max({tol * std::abs(total), abs_floor, 50.0 * eps * total_resabs});
    if (total_err <= threshold) {
      converged = true;
      break;
    }
    if (active.empty() || evals + 30 > max_evaluations) {
      break;
    }
    std::pop_heap(active.begin(), active.end(), heap_less);
    quad_detail::Interval parent = active.back();
    active.pop_back();
    if (parent.hi - parent.lo < min_width) {
      finished.push_back(parent);
      continue;
    }
    const double mid = 0.5 * (parent.lo + parent.hi);
    quad_detail::Interval left{parent.lo, mid, quad_detail::gauss_kronrod_15(g, parent.lo, mid)};
    quad_detail::Interval right{mid, parent.hi, quad_detail::gauss_kronrod_15(g, mid, parent.hi)};
    evals += 30;
    total += left.est.value + right.est.value - parent.est.value;
    total_err += left.est.err + right.est.err - parent.est.err;
    total_resabs += left.est.resabs + right.est.resabs - parent.est.resabs;
    active.push_back(left);
    std::push_heap(active.begin(), active.end(), heap_less);
    active.push_back(right);
    std::push_heap(active.begin(), active.end(), heap_less);
  }

  // Deterministic final summation in left-to-right order.
  std::vector<quad_detail::Interval> work;
  work.reserve(active.size() + finished.size());
  work.insert(work.end(), active.begin(), active.end());
  work.insert(work.end(), finished.begin(), finished.end());
  std::sort(work.begin(), work.end(),
            [](const quad_detail::Interval& a, const quad_detail::Interval& b) { return a.lo < b.lo; });
  quad_detail::KahanAccumulator re, im, err, resabs;
  for (const auto& iv : work) {
    re.add(iv.est.value.real());
    im.add(iv.est.value.imag());
    err.add(iv.est.err);
    resabs.add(iv.est.resabs);
  }

  QuadResult out;
  out.value = {re.sum, im.sum};
  out.err_estimate = err.sum;
  out.evaluations = evals;
  const double threshold =
      std::max({tol * std::abs(out.value), abs_floor, 50.0 * eps * resabs.sum});
  out.converged = converged || out.err_estimate <= threshold;
  return out;
}

// Composite Simpson rule directly in tau on the closed interval
// [-t_a (1 - 1e-12), t_a (1 - 1e-12)]. `panels` must be a power of two
// >= 2^16. Also evaluates the same rule on every other sample (half
// the panels) so callers can form a Richardson convergence estimate.
template <typename F>
OracleResult oracle_integrate(F&& f, double t_a, long panels) {
  if (panels < (1L << 16) || (panels & (panels - 1)) != 0) {
    throw std::invalid_argument("oracle_integrate: panels must be a power of two >= 65536");
  }
  if (!(t_a > 0.0) || !std::isfinite(t_a)) {
    throw std::invalid_argument("oracle_integrate: t_a must be positive and finite");
  }
  const double b = t_a * (1.0 - 1e-12);
  const double a = -b;
  const double h = (b - a) / static_cast<double>(panels);

  quad_detail::KahanAccumulator odd_re, odd_im;    // k odd
  quad_detail::KahanAccumulator e2_re, e2_im;      // k = 2 mod 4
  quad_detail::KahanAccumulator e0_re, e0_im;      // k = 0 mod 4, interior
  const Complex f_lo = f(a);
  const Complex f_hi = f(b);
  for (long k = 1; k < panels; ++k) {
    const Complex fk = f(a + h * static_cast<double>(k));
    if (k % 2 == 1) {
      odd_re.add(fk.real());
      odd_im.add(fk.imag());
    } else if (k % 4 == 2) {
      e2_re.add(fk.real());
      e2_im.add(fk.imag());
    } else {
      e0_re.add(fk.real());
      e0_im.add(fk.imag());
    }
  }
  const Complex ends = f_lo + f_hi;
  const Complex sum_odd{odd_re.sum, odd_im.sum};
  const Complex sum_e2{e2_re.sum, e2_im.sum};
  const Complex sum_e0{e0_re.sum, e0_im.sum};

  OracleResult out;
  out.value = (h / 3.0) * (ends + 4.0 * sum_odd + 2.0 * (sum_e2 + sum_e0));
  out.value_half = (2.0 * h / 3.0) * (ends + 4.0 * sum_e2 + 2.0 * sum_e0);
  out.err_estimate = std::abs(out.value - out.value_half) / 15.0;
  out.evaluations = panels + 1;
  return out;
}

}  // namespace cavent
