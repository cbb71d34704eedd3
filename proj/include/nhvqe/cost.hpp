#pragma once

#include <cstdint>
#include <utility>

#include "nhvqe/circuit.hpp"
#include "nhvqe/pauli.hpp"

namespace nhvqe {

/// Trainable complex energy E = e_r + i e_i.
struct EnergyParam {
    double e_r = 0.0;
    double e_i = 0.0;

    Complex value() const { return {e_r, e_i}; }
};

/// right solves M(E) = (H' - E*)(H - E); left solves M'(E) = (H - E)(H' - E*),
/// where H' is the adjoint. Both vanish exactly at the corresponding
/// eigenpair.
enum class EigenSide { right, left };

/// The Hermitianized operator whose expectation is the cost. Expanding gives
/// H'H - E H' - E* H + |E|^2 I for side=right (HH' leading for left).
PauliSum variance_operator(const PauliSum& h, EnergyParam e, EigenSide side);

/// Shared interface for the optimizer: exact statevector, noisy density matrix
/// and Richardson-mitigated backends all evaluate the same quantities.
class CostModel {
public:
    struct Evaluation {
        double cost;
        double grad_e_r;
        double grad_e_i;
    };

    virtual ~CostModel() = default;

    /// Cost plus the closed-form energy partials in one pass.
    virtual Evaluation evaluate(const AnsatzParams& params, EnergyParam e) const = 0;

    /// Exact angle gradient via the parameter-shift rule
    /// df/dtheta = f(theta + pi/4) - f(theta - pi/4).
    virtual AngleGrad grad_theta(const AnsatzParams& params, EnergyParam e) const = 0;

    double cost(const AnsatzParams& params, EnergyParam e) const {
        return evaluate(params, e).cost;
    }
};

/// Exact statevector evaluation. Precomputes H'H (or HH' for the left
/// problem) once, so per-evaluation work is one ansatz application plus two
/// Pauli-sum expectations; the E-dependence is carried in scalars:
///   cost = <H'H> - 2 e_r Re<H> - 2 e_i Im<H> + e_r^2 + e_i^2.
class ExactCostModel : public CostModel {
public:
    ExactCostModel(PauliSum h, EigenSide side);

    Evaluation evaluate(const AnsatzParams& params, EnergyParam e) const override;
    AngleGrad grad_theta(const AnsatzParams& params, EnergyParam e) const override;

    const PauliSum& hamiltonian() const { return h_; }
    const PauliSum& squared() const { return h_sq_; }
    EigenSide side() const { return side_; }

private:
    PauliSum h_;
    PauliSum h_sq_;
    EigenSide side_;
};

/// <psi(theta)|M(E)|psi(theta)>, clamped to 0 when within roundoff below zero.
double cost(const PauliSum& h, const AnsatzParams& params, EnergyParam e, EigenSide side);

/// (dL/dE_r, dL/dE_i) = (2(e_r - Re<H>), 2(e_i - Im<H>)).
std::pair<double, double> grad_energy(const PauliSum& h, const AnsatzParams& params,
                                      EnergyParam e, EigenSide side);

/// Parameter-shift gradient with the same shape as the angle arrays.
AngleGrad grad_theta(const PauliSum& h, const AnsatzParams& params, EnergyParam e,
                     EigenSide side);

/// Optional estimator mode: each Pauli term of M(E) measured alone with
/// `shots` samples of its +-1 outcome (identity terms contribute exactly).
double cost_sampled(const PauliSum& h, const AnsatzParams& params, EnergyParam e,
                    EigenSide side, long shots, std::uint64_t seed);

}  // namespace nhvqe
