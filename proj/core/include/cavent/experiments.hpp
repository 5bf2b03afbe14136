#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cavent/entangle.hpp"

// Parameter sweeps over acceleration and cavity length, and the
// length tuner that restores maximal entanglement at fixed
// acceleration by rebalancing the two emission branches.

namespace cavent {

// One fully evaluated protocol point.
struct PointResult {
  double entropy_bits = 0.0;
  double p_alice = 0.0;
  double p_rob = 0.0;
  double p_success = 0.0;
  int n_modes = 0;
  double quad_err = 0.0;           // worst amplitude error / state norm
  bool converged = true;           // quadrature and mode truncation both met
  bool perturbative_warning = false;
};

PointResult evaluate_protocol(const ProtocolParams& p);

enum class SweepAxis { acceleration, length };

struct SweepRow {
  double param = 0.0;  // swept value, natural units (a in 1/s or L in light-seconds)
  PointResult point;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  ProtocolParams baseline;
  SweepAxis axis = SweepAxis::acceleration;
  bool partial = false;  // true if any row failed to converge
};

struct TuneResult {
  double L_star = 0.0;            // light-seconds
  double entropy_at_L_star = 0.0; // bits
  int iterations = 0;
  std::pair<double, double> bracket{0.0, 0.0};
  std::string note;               // diagnostic for degenerate brackets
};

// Thrown by tune_length when the coarse pre-scan finds the entropy
// non-unimodal on the bracket; carries the scan for inspection.
struct BracketError : std::runtime_error {
  std::vector<std::pair<double, double>> scan;  // (L, entropy)
  BracketError(const std::string& msg, std::vector<std::pair<double, double>> s)
      : std::runtime_error(msg), scan(std::move(s)) {}
};

// One row per acceleration in a_grid (strictly increasing, entries
// >= 0). Requires the baseline at Alice resonance Omega = pi/L.
SweepResult sweep_acceleration(const ProtocolParams& baseline, const std::vector<double>& a_grid);

// One row per length in L_grid (strictly increasing, positive), at
// fixed acceleration. Omega stays at the baseline value: the atom's
// gap does not move with the mirrors.
SweepResult sweep_length(const ProtocolParams& baseline, double a_fixed,
                         const std::vector<double>& L_grid);

// Maximizes entropy(L) over the bracket at fixed acceleration.
// A 16-point logarithmic pre-scan validates unimodality (BracketError
// otherwise). Because E = 1 exactly where p_A = 1/2, a sign change of
// g(L) = p_A - 1/2 on the scan is refined by bisection; otherwise a
// golden-section search runs to relative bracket width 1e-4. With no
// sign change and the peak at a bracket end, the best endpoint is
// returned with a diagnostic note.
TuneResult tune_length(const ProtocolParams& baseline, double a_fixed,
                       std::pair<double, double> L_bracket);

}  // namespace cavent
