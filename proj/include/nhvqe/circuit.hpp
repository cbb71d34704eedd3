#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "nhvqe/pauli.hpp"

namespace nhvqe {

/// Pure-state amplitudes, dim 2^L, site 0 = most significant bit.
struct StateVector {
    Eigen::VectorXcd amplitudes;
    int num_sites = 0;
};

/// One rotation gate e^{-i theta G}. For rxx, `site` is the bond index l and
/// the gate acts on sites (l, l+1 mod L); rz/rx act on `site`.
struct GateOp {
    enum class Kind { rxx, rz, rx };
    Kind kind;
    int site;
    double angle;
};

/// The theta = {alpha, beta, gamma} angle set for P layers on L sites.
/// alpha[j] has num_bonds(L, bc) entries, beta[j] and gamma[j] have L each.
struct AnsatzParams {
    int num_sites = 0;
    int depth = 0;
    BoundaryCondition bc = BoundaryCondition::open;
    std::vector<std::vector<double>> alpha, beta, gamma;

    /// All-zero angles (identity circuit).
    static AnsatzParams zeros(int num_sites, int depth, BoundaryCondition bc);

    /// Near-identity start: every angle uniform in [-0.1, 0.1] from the seeded
    /// generator.
    static AnsatzParams random(int num_sites, int depth, BoundaryCondition bc,
                               std::uint64_t seed);

    int angle_count() const;

    /// Throws DimensionError unless the array shapes match (L, P, bc).
    void validate() const;
};

/// Gradient (or update direction) with the same shape as the angle arrays.
struct AngleGrad {
    std::vector<std::vector<double>> alpha, beta, gamma;

    static AngleGrad zeros_like(const AnsatzParams& p);
};

/// params + scale * grad, shape-checked.
AnsatzParams axpy(const AnsatzParams& params, double scale, const AngleGrad& grad);

/// The canonical gate order consumed by every simulation path: for each layer
/// j = 1..P, all rxx bonds, then all rz, then all rx (the operator product for
/// one layer read right-to-left as applied onto the state).
std::vector<GateOp> gate_sequence(const AnsatzParams& params);

/// |0...0>.
StateVector zero_state(int num_sites);

/// psi transformed by the exact 2x2 or 4x4 unitary of g.
StateVector apply_gate(const StateVector& psi, const GateOp& g);

/// U(theta)|0>.
StateVector apply_ansatz(const AnsatzParams& params);

/// <psi|S|psi>, complex in general.
Complex expectation(const StateVector& psi, const PauliSum& s);

namespace kernels {

// Shared gate kernels operating on raw amplitude arrays addressed by bit
// position (bit b toggles with stride 2^b). The statevector path, the
// Hadamard-test ancilla path and the density-matrix path all run through
// these, so there is a single source of truth for gate conventions.

void apply_rx_bit(Complex* data, std::size_t dim, int bit, double theta);
void apply_rz_bit(Complex* data, std::size_t dim, int bit, double theta);
void apply_rxx_bit(Complex* data, std::size_t dim, int bit_a, int bit_b, double theta);

/// Dispatches g onto an amplitude block whose lowest `num_sites` site indices
/// are the system sites (site s lives at bit num_sites-1-s).
void apply_gate_bits(Complex* data, std::size_t dim, int num_sites, const GateOp& g);

/// In-place out[v ^ flip] = phase(v) * in[v] for a single Pauli term.
void apply_pauli_term(const PauliTerm& term, const Complex* in, Complex* out,
                      std::size_t dim, int num_sites);

}  // namespace kernels

}  // namespace nhvqe
