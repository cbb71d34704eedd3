#include "nhvqe/overlap.hpp"

#include <cmath>

#include "nhvqe/errors.hpp"
#include "nhvqe/rng.hpp"

namespace nhvqe {

namespace {

constexpr double kOverlapFloor = 1e-10;

const PauliTerm& single_unitary_term(const PauliSum& o) {
    if (o.terms().size() != 1) {
        throw ContractViolation("hadamard_test: operator must be a single Pauli term");
    }
    const PauliTerm& term = o.terms().front();
    if (std::abs(std::abs(term.coefficient) - 1.0) > 1e-12) {
        throw ContractViolation("hadamard_test: operator coefficient must have unit modulus");
    }
    return term;
}

void hadamard_on_ancilla(Eigen::VectorXcd& joint, std::size_t dim_sys) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t v = 0; v < dim_sys; ++v) {
        const Complex a = joint[static_cast<Eigen::Index>(v)];
        const Complex b = joint[static_cast<Eigen::Index>(v + dim_sys)];
        joint[static_cast<Eigen::Index>(v)] = inv_sqrt2 * (a + b);
        joint[static_cast<Eigen::Index>(v + dim_sys)] = inv_sqrt2 * (a - b);
    }
}

/// One Fig. 2 circuit: ancilla H (then S for the imaginary part), controlled
/// U(theta_r), controlled O, controlled U'(theta_l), ancilla H; returns P(0).
/// The ancilla is the most significant qubit, so "controlled" is just the
/// upper half of the joint amplitude array.
double run_circuit(const AnsatzParams& u_left, const AnsatzParams& u_right,
                   const PauliTerm& o, bool imaginary_part) {
    const int L = u_right.num_sites;
    const std::size_t dim_sys = std::size_t{1} << L;
    Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(2 * dim_sys));
    joint[0] = Complex(1.0, 0.0);

    hadamard_on_ancilla(joint, dim_sys);
    if (imaginary_part) {
        for (std::size_t v = 0; v < dim_sys; ++v) {
            joint[static_cast<Eigen::Index>(v + dim_sys)] *= Complex(0.0, 1.0);
        }
    }

    Complex* upper = joint.data() + dim_sys;
    for (const GateOp& g : gate_sequence(u_right)) {
        kernels::apply_gate_bits(upper, dim_sys, L, g);
    }
    Eigen::VectorXcd scratch(static_cast<Eigen::Index>(dim_sys));
    kernels::apply_pauli_term(o, upper, scratch.data(), dim_sys, L);
    for (std::size_t v = 0; v < dim_sys; ++v) upper[v] = scratch[static_cast<Eigen::Index>(v)];
    auto reversed = gate_sequence(u_left);
    for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
        GateOp inverse = *it;
        inverse.angle = -inverse.angle;
        kernels::apply_gate_bits(upper, dim_sys, L, inverse);
    }

    hadamard_on_ancilla(joint, dim_sys);
    double p0 = 0.0;
    for (std::size_t v = 0; v < dim_sys; ++v) {
        p0 += std::norm(joint[static_cast<Eigen::Index>(v)]);
    }
    return p0;
}

double sample_probability(double p, long shots, std::uint64_t stream) {
    SplitMix64 gen(stream);
    long hits = 0;
    for (long k = 0; k < shots; ++k) hits += gen.bernoulli(p) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(shots);
}

}  // namespace

HadamardOutcome hadamard_test(const AnsatzParams& u_left, const AnsatzParams& u_right,
                              const PauliSum& o, long shots, std::uint64_t seed) {
    if (u_left.num_sites != u_right.num_sites || o.num_sites() != u_right.num_sites) {
        throw DimensionError("hadamard_test: circuits and operator site counts differ");
    }
    const PauliTerm& term = single_unitary_term(o);
    HadamardOutcome out;
    out.p_real = run_circuit(u_left, u_right, term, false);
    out.p_imag = run_circuit(u_left, u_right, term, true);
    out.shots = shots;
    if (shots > 0) {
        out.p_real = sample_probability(out.p_real, shots, seed_stream(seed, 0));
        out.p_imag = sample_probability(out.p_imag, shots, seed_stream(seed, 1));
    }
    return out;
}

Complex matrix_element(const AnsatzParams& u_left, const AnsatzParams& u_right,
                       const PauliSum& o, long shots, std::uint64_t seed) {
    const HadamardOutcome h = hadamard_test(u_left, u_right, o, shots, seed);
    return {2.0 * h.p_real - 1.0, 1.0 - 2.0 * h.p_imag};
}

double fidelity(const AnsatzParams& u_left, const AnsatzParams& u_right, long shots,
                std::uint64_t seed) {
    const PauliSum id = PauliSum::identity(u_right.num_sites);
    const double f = std::abs(matrix_element(u_left, u_right, id, shots, seed));
    return std::min(f, 1.0);
}

Complex biorthogonal_expectation(const PauliSum& a, const AnsatzParams& u_left,
                                 const AnsatzParams& u_right, long shots,
                                 std::uint64_t seed) {
    if (a.num_sites() != u_right.num_sites) {
        throw DimensionError("biorthogonal_expectation: operator site count differs");
    }
    const PauliSum id = PauliSum::identity(u_right.num_sites);
    const Complex overlap = matrix_element(u_left, u_right, id, shots, seed_stream(seed, 2));
    if (std::abs(overlap) < kOverlapFloor) {
        throw DegenerateOverlap("biorthogonal expectation undefined: |<psi_l|psi_r>| < 1e-10");
    }
    Complex numerator(0.0, 0.0);
    std::uint64_t term_index = 0;
    for (const auto& term : a.terms()) {
        PauliSum unit(a.num_sites());
        unit.add_term({Complex(1.0, 0.0), term.letters});
        numerator += term.coefficient *
                     matrix_element(u_left, u_right, unit, shots,
                                    seed_stream(seed, 16 + term_index));
        ++term_index;
    }
    return numerator / overlap;
}

}  // namespace nhvqe
