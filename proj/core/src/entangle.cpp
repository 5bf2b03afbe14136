#include "cavent/entangle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavent {

SingleExcitationState build_state(const ModeAmplitudes& amps) {
  const double norm_raw = amps.total_weight();
  if (!(norm_raw > 0.0)) {
    throw std::domain_error("build_state: all amplitudes vanish, no excitation to share");
  }
  SingleExcitationState s;
  s.norm_raw = norm_raw;
  const double inv = 1.0 / std::sqrt(norm_raw);
  s.c_A.reserve(amps.alice.size());
  s.c_R.reserve(amps.rob.size());
  for (const auto& c : amps.alice) s.c_A.push_back(c * inv);
  for (const auto& c : amps.rob) s.c_R.push_back(c * inv);
  return s;
}

SchmidtSplit schmidt(const SingleExcitationState& state) {
  SchmidtSplit split;
  for (const auto& c : state.c_A) split.p_A += std::norm(c);
  for (const auto& c : state.c_R) split.p_R += std::norm(c);
  return split;
}

double entropy(const SchmidtSplit& split) {
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(split.p_A) + term(split.p_R);
}

double success_probability(const SingleExcitationState& state) {
  return state.norm_raw;
}

SingleExcitationState evolve_free(const SingleExcitationState& state, double dt_alice,
                                  double deta_rob, double L, double Lp) {
  if (!(L > 0.0) || !(Lp > 0.0)) {
    throw std::domain_error("evolve_free: cavity lengths must be positive");
  }
  SingleExcitationState out = state;
  for (std::size_t i = 0; i < out.c_A.size(); ++i) {
    const double phi = -static_cast<double>(i + 1) * std::numbers::pi * dt_alice / L;
    out.c_A[i] *= Complex{std::cos(phi), std::sin(phi)};
  }
  for (std::size_t i = 0; i < out.c_R.size(); ++i) {
    const double phi = -static_cast<double>(i + 1) * std::numbers::pi * deta_rob / Lp;
    out.c_R[i] *= Complex{std::cos(phi), std::sin(phi)};
  }
  return out;
}

}  // namespace cavent
