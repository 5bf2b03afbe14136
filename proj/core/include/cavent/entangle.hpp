#pragma once

#include <vector>

#include "cavent/interaction.hpp"

// The post-selected state is a single excitation shared between the
// two cavities,
//
//   |Phi> = sum_n ( I_A(n) a_n^dag + I_R(n) b_n^dag ) |0>_A |0>_R,
//
// so either reduced density matrix has exactly two eigenvalues: the
// total Alice weight p_A and the total Rob weight p_R. Entanglement is
// the binary Von Neumann entropy of that split, in bits.

namespace cavent {

struct SingleExcitationState {
  std::vector<Complex> c_A;  // normalized Alice coefficients
  std::vector<Complex> c_R;  // normalized Rob coefficients
  double norm_raw = 0.0;     // squared norm before normalization, order eps^2
};

struct SchmidtSplit {
  double p_A = 0.0;
  double p_R = 0.0;
};

// Normalizes the amplitude arrays into a state. Throws
// std::domain_error if every amplitude is zero.
SingleExcitationState build_state(const ModeAmplitudes& amps);

// The two reduced-density-matrix eigenvalues {p_A, p_R}.
SchmidtSplit schmidt(const SingleExcitationState& state);

// Binary entropy -p_A log2 p_A - p_R log2 p_R, with 0 log 0 = 0.
double entropy(const SchmidtSplit& split);

// First-order probability that the atom is measured in its ground
// state, i.e. that a photon was emitted at all: the raw squared norm.
// Values above 0.1 indicate the perturbative treatment is strained
// (see perturbative_limit).
double success_probability(const SingleExcitationState& state);

inline constexpr double perturbative_limit = 0.1;

// Free evolution: Alice modes advance by Minkowski time dt_alice,
// Rob modes by Rindler time deta_rob. Pure phases; norm and entropy
// are preserved.
SingleExcitationState evolve_free(const SingleExcitationState& state, double dt_alice,
                                  double deta_rob, double L, double Lp);

}  // namespace cavent
