#pragma once

#include <cstdint>

#include "nhvqe/circuit.hpp"
#include "nhvqe/pauli.hpp"

namespace nhvqe {

/// Ancilla measurement probabilities from the two Hadamard-test circuits.
/// shots == 0 marks exact mode (probabilities computed, not sampled).
struct HadamardOutcome {
    double p_real = 0.0;
    double p_imag = 0.0;
    long shots = 0;
};

/// Simulates the (L+1)-qubit ancilla circuits for O sandwiched between the two
/// ansatz preparations:
///   P_r(0) = 1/2 + 1/2 Re <0|U'(theta_l) O U(theta_r)|0>
///   P_i(0) = 1/2 - 1/2 Im <0|U'(theta_l) O U(theta_r)|0>
/// (the imaginary-part circuit inserts the pi/2 phase gate on the ancilla).
/// o must be a single Pauli term with |coefficient| = 1. In shot mode each
/// probability is estimated from `shots` Bernoulli draws of the seeded
/// generator.
HadamardOutcome hadamard_test(const AnsatzParams& u_left, const AnsatzParams& u_right,
                              const PauliSum& o, long shots, std::uint64_t seed = 0);

/// <psi_l|O|psi_r> reconstructed as (2 P_r(0) - 1) + i (1 - 2 P_i(0)).
Complex matrix_element(const AnsatzParams& u_left, const AnsatzParams& u_right,
                       const PauliSum& o, long shots, std::uint64_t seed = 0);

/// |<psi_l|psi_r>| (matrix_element with O = I), clamped into [0, 1].
double fidelity(const AnsatzParams& u_left, const AnsatzParams& u_right, long shots,
                std::uint64_t seed = 0);

/// sum_i a_i <psi_l|O_i|psi_r> / <psi_l|psi_r> via per-term Hadamard tests.
/// Throws DegenerateOverlap when |<psi_l|psi_r>| < 1e-10.
Complex biorthogonal_expectation(const PauliSum& a, const AnsatzParams& u_left,
                                 const AnsatzParams& u_right, long shots,
                                 std::uint64_t seed = 0);

}  // namespace nhvqe
