#include "cavent/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cavent {

namespace {

constexpr int kPrescanPoints = 16;
constexpr double kUnimodalSlack = 1e-6;
constexpr double kBisectRelWidth = 1e-6;
constexpr double kBisectGTol = 1e-4;
constexpr double kGoldenRelWidth = 1e-4;

void require_ascending(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) {
    throw std::invalid_argument(std::string(what) + ": grid must be non-empty");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(what) + ": grid must be strictly increasing");
    }
  }
}

struct TunePoint {
  double entropy = 0.0;
  double g = 0.0;  // p_A - 1/2
};

TunePoint evaluate_tune_point(ProtocolParams p, double a, double L) {
  p.a = a;
  p.L = L;
  const PointResult r = evaluate_protocol(p);
  return {r.entropy_bits, r.p_alice - 0.5};
}

}  // namespace

PointResult evaluate_protocol(const ProtocolParams& p) {
  const ModeAmplitudes amps = compute_amplitudes(p);
  const SingleExcitationState state = build_state(amps);
  const SchmidtSplit split = schmidt(state);

  PointResult out;
  out.entropy_bits = entropy(split);
  out.p_alice = split.p_A;
  out.p_rob = split.p_R;
  out.p_success = success_probability(state);
  out.n_modes = amps.n_modes();
  out.quad_err = amps.max_quad_rel_err;
  out.converged = amps.quad_converged && amps.truncation_converged;
  out.perturbative_warning = out.p_success > perturbative_limit;
  return out;
}

SweepResult sweep_acceleration(const ProtocolParams& baseline, const std::vector<double>& a_grid) {
  validate(baseline);
  require_ascending(a_grid, "sweep_acceleration");
  if (!(a_grid.front() >= 0.0)) {
    throw std::invalid_argument("sweep_acceleration: accelerations must be >= 0");
  }
  const double resonance_offset = baseline.Omega * baseline.L / std::numbers::pi - 1.0;
  if (std::abs(resonance_offset) > 1e-12) {
    throw std::invalid_argument(
        "sweep_acceleration: baseline must be at Alice resonance Omega = pi/L");
  }

  SweepResult result;
  result.baseline = baseline;
  result.axis = SweepAxis::acceleration;
  result.rows.reserve(a_grid.size());
  for (double a : a_grid) {
    ProtocolParams p = baseline;
    p.a = a;
    SweepRow row;
    row.param = a;
    row.point = evaluate_protocol(p);
    if (!row.point.converged) result.partial = true;
    result.rows.push_back(row);
  }
  return result;
}

SweepResult sweep_length(const ProtocolParams& baseline, double a_fixed,
                         const std::vector<double>& L_grid) {
  validate(baseline);
  require_ascending(L_grid, "sweep_length");
  if (!(L_grid.front() > 0.0)) {
    throw std::invalid_argument("sweep_length: lengths must be positive");
  }
  if (!(a_fixed >= 0.0)) {
    throw std::invalid_argument("sweep_length: acceleration must be >= 0");
  }

  SweepResult result;
  result.baseline = baseline;
  result.axis = SweepAxis::length;
  result.rows.reserve(L_grid.size());
  for (double L : L_grid) {
    ProtocolParams p = baseline;  // Omega deliberately kept at the baseline value
    p.a = a_fixed;
    p.L = L;
    SweepRow row;
    row.param = L;
    row.point = evaluate_protocol(p);
    if (!row.point.converged) result.partial = true;
    result.rows.push_back(row);
  }
  return result;
}

TuneResult tune_length(const ProtocolParams& baseline, double a_fixed,
                       std::pair<double, double> L_bracket) {
  validate(baseline);
  const auto [L_lo, L_hi] = L_bracket;
  if (!(L_lo > 0.0) || !(L_hi > L_lo)) {
    throw std::invalid_argument("tune_length: need 0 < L_lo < L_hi");
  }
  if (!(a_fixed >= 0.0)) {
    throw std::invalid_argument("tune_length: acceleration must be >= 0");
  }

  TuneResult result;
  result.bracket = L_bracket;

  if (a_fixed == 0.0) {
    // Inertial: both branches carry equal weight at any L, the state
    // is already maximally entangled.
    result.L_star = baseline.L;
    result.entropy_at_L_star = evaluate_tune_point(baseline, 0.0, baseline.L).entropy;
    result.note = "inertial case: entanglement already maximal, baseline L returned";
    return result;
  }

  // Coarse logarithmic pre-scan.
  std::vector<double> Ls(kPrescanPoints);
  std::vector<TunePoint> scan(kPrescanPoints);
  const double log_lo = std::log(L_lo);
  const double log_hi = std::log(L_hi);
  for (int i = 0; i < kPrescanPoints; ++i) {
    Ls[i] = std::exp(log_lo + (log_hi - log_lo) * i / (kPrescanPoints - 1));
    scan[i] = evaluate_tune_point(baseline, a_fixed, Ls[i]);
  }
  result.iterations = kPrescanPoints;

  // Unimodality: non-decreasing up to the scan maximum, non-increasing
  // after, within numerical slack.
  int peak = 0;
  for (int i = 1; i < kPrescanPoints; ++i) {
    if (scan[i].entropy > scan[peak].entropy) peak = i;
  }
  for (int i = 0; i + 1 < kPrescanPoints; ++i) {
    const bool rising_ok = scan[i].entropy <= scan[i + 1].entropy + kUnimodalSlack;
    const bool falling_ok = scan[i + 1].entropy <= scan[i].entropy + kUnimodalSlack;
    if ((i < peak && !rising_ok) || (i >= peak && !falling_ok)) {
      std::vector<std::pair<double, double>> data;
      for (int k = 0; k < kPrescanPoints; ++k) data.emplace_back(Ls[k], scan[k].entropy);
      throw BracketError("tune_length: entropy not unimodal on the bracket (pre-scan attached)",
                         std::move(data));
    }
  }

  double best_L = Ls[peak];
  double best_E = scan[peak].entropy;

  // E = 1 exactly where p_A = 1/2: a sign change of g on the scan is
  // the needle worth refining by bisection.
  int cross = -1;
  for (int i = 0; i + 1 < kPrescanPoints; ++i) {
    if (scan[i].g == 0.0 || scan[i].g * scan[i + 1].g < 0.0) {
      cross = i;
      break;
    }
  }

  if (cross >= 0) {
    double lo = Ls[cross], hi = Ls[cross + 1];
    double g_lo = scan[cross].g;
    for (int it = 0; it < 200; ++it) {
      if ((hi - lo) / lo <= kBisectRelWidth) break;
      const double mid = std::sqrt(lo * hi);
      const TunePoint tp = evaluate_tune_point(baseline, a_fixed, mid);
      ++result.iterations;
      if (tp.entropy > best_E) {
        best_E = tp.entropy;
        best_L = mid;
      }
      if (std::abs(tp.g) <= kBisectGTol) break;
      if ((g_lo > 0.0) == (tp.g > 0.0)) {
        lo = mid;
        g_lo = tp.g;
      } else {
        hi = mid;
      }
    }
    result.L_star = best_L;
    result.entropy_at_L_star = best_E;
    result.note = "refined by bisection on p_A - 1/2";
    return result;
  }

  if (peak == 0 || peak == kPrescanPoints - 1) {
    result.L_star = best_L;
    result.entropy_at_L_star = best_E;
    result.note = "no interior maximum and no p_A - 1/2 crossing; best endpoint returned";
    return result;
  }

  // Golden-section maximization on the peak's neighbourhood, log space.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double xa = std::log(Ls[peak - 1]);
  double xb = std::log(Ls[peak + 1]);
  double xc = xb - invphi * (xb - xa);
  double xd = xa + invphi * (xb - xa);
  TunePoint fc = evaluate_tune_point(baseline, a_fixed, std::exp(xc));
  TunePoint fd = evaluate_tune_point(baseline, a_fixed, std::exp(xd));
  result.iterations += 2;
  while (xb - xa > kGoldenRelWidth) {
    if (fc.entropy > fd.entropy) {
      xb = xd;
      xd = xc;
      fd = fc;
      xc = xb - invphi * (xb - xa);
      fc = evaluate_tune_point(baseline, a_fixed, std::exp(xc));
    } else {
      xa = xc;
      xc = xd;
      fc = fd;
      xd = xa + invphi * (xb - xa);
      fd = evaluate_tune_point(baseline, a_fixed, std::exp(xd));
    }
    ++result.iterations;
  }
  const double L_mid = std::exp(0.5 * (xa + xb));
  const TunePoint tp = evaluate_tune_point(baseline, a_fixed, L_mid);
  ++result.iterations;
  if (tp.entropy > best_E) {
    best_E = tp.entropy;
    best_L = L_mid;
  }
  if (fc.entropy > best_E) {
    best_E = fc.entropy;
    best_L = std::exp(xc);
  }
  if (fd.entropy > best_E) {
    best_E = fd.entropy;
    best_L = std::exp(xd);
  }
  result.L_star = best_L;
  result.entropy_at_L_star = best_E;
  result.note = "golden-section maximum";
  return result;
}

}  // namespace cavent
