#include "nhvqe/cost.hpp"

#include <cmath>
#include <numbers>

#include "nhvqe/errors.hpp"
#include "nhvqe/rng.hpp"

namespace nhvqe {

namespace {

constexpr double kNegativeClamp = -1e-10;

double clamp_roundoff(double value) {
    return (value < 0.0 && value > kNegativeClamp) ? 0.0 : value;
}

constexpr double kShift = std::numbers::pi / 4.0;

/// Runs fn for each angle in params with the angle displaced by +shift and
/// -shift, storing fn(plus) - fn(minus) into the matching AngleGrad slot.
template <typename CostFn>
AngleGrad shift_rule(const AnsatzParams& params, const CostFn& fn) {
    AngleGrad grad = AngleGrad::zeros_like(params);
    AnsatzParams work = params;
    auto shifted = [&](std::vector<std::vector<double>> AnsatzParams::* block,
                       std::vector<std::vector<double>> AngleGrad::* gblock) {
        for (std::size_t j = 0; j < (params.*block).size(); ++j) {
            for (std::size_t l = 0; l < (params.*block)[j].size(); ++l) {
                const double original = (work.*block)[j][l];
                (work.*block)[j][l] = original + kShift;
                const double plus = fn(work);
                (work.*block)[j][l] = original - kShift;
                const double minus = fn(work);
                (work.*block)[j][l] = original;
                (grad.*gblock)[j][l] = plus - minus;
            }
        }
    };
    shifted(&AnsatzParams::alpha, &AngleGrad::alpha);
    shifted(&AnsatzParams::beta, &AngleGrad::beta);
    shifted(&AnsatzParams::gamma, &AngleGrad::gamma);
    return grad;
}

}  // namespace

PauliSum variance_operator(const PauliSum& h, EnergyParam e, EigenSide side) {
    const PauliSum h_minus_e = h - PauliSum::identity(h.num_sites(), e.value());
    const PauliSum adj = adjoint(h_minus_e);
    return side == EigenSide::right ? sum_product(adj, h_minus_e)
                                    : sum_product(h_minus_e, adj);
}

ExactCostModel::ExactCostModel(PauliSum h, EigenSide side)
    : h_(h.simplified()),
      h_sq_(side == EigenSide::right ? sum_product(adjoint(h_), h_)
                                     : sum_product(h_, adjoint(h_))),
      side_(side) {}

CostModel::Evaluation ExactCostModel::evaluate(const AnsatzParams& params,
                                               EnergyParam e) const {
    if (params.num_sites != h_.num_sites()) {
        throw DimensionError("cost: ansatz and Hamiltonian site counts differ");
    }
    const StateVector psi = apply_ansatz(params);
    const double t_sq = expectation(psi, h_sq_).real();
    const Complex t_h = expectation(psi, h_);
    const double value = t_sq - 2.0 * e.e_r * t_h.real() - 2.0 * e.e_i * t_h.imag() +
                         e.e_r * e.e_r + e.e_i * e.e_i;
    return {clamp_roundoff(value), 2.0 * (e.e_r - t_h.real()), 2.0 * (e.e_i - t_h.imag())};
}

AngleGrad ExactCostModel::grad_theta(const AnsatzParams& params, EnergyParam e) const {
    return shift_rule(params, [&](const AnsatzParams& p) { return evaluate(p, e).cost; });
}

double cost(const PauliSum& h, const AnsatzParams& params, EnergyParam e, EigenSide side) {
    return ExactCostModel(h, side).cost(params, e);
}

std::pair<double, double> grad_energy(const PauliSum& h, const AnsatzParams& params,
                                      EnergyParam e, EigenSide side) {
    const auto eval = ExactCostModel(h, side).evaluate(params, e);
    return {eval.grad_e_r, eval.grad_e_i};
}

AngleGrad grad_theta(const PauliSum& h, const AnsatzParams& params, EnergyParam e,
                     EigenSide side) {
    return ExactCostModel(h, side).grad_theta(params, e);
}

double cost_sampled(const PauliSum& h, const AnsatzParams& params, EnergyParam e,
                    EigenSide side, long shots, std::uint64_t seed) {
    if (shots <= 0) return cost(h, params, e, side);
    const PauliSum m = variance_operator(h, e, side);
    const StateVector psi = apply_ansatz(params);
    const std::string id_word(static_cast<std::size_t>(h.num_sites()), 'I');
    double estimate = 0.0;
    std::size_t term_index = 0;
    for (const auto& term : m.terms()) {
        // M(E) is Hermitian, so simplified coefficients are real.
        const double weight = term.coefficient.real();
        if (term.letters == id_word) {
            estimate += weight;
            ++term_index;
            continue;
        }
        PauliSum single(h.num_sites());
        single.add_term({Complex(1.0, 0.0), term.letters});
        const double exact = expectation(psi, single).real();
        const double p_plus = std::min(1.0, std::max(0.0, 0.5 * (1.0 + exact)));
        SplitMix64 gen(seed_stream(seed, term_index));
        long hits = 0;
        for (long k = 0; k < shots; ++k) hits += gen.bernoulli(p_plus) ? 1 : 0;
        estimate += weight * (2.0 * static_cast<double>(hits) / static_cast<double>(shots) - 1.0);
        ++term_index;
    }
    return estimate;
}

}  // namespace nhvqe
