#include "nhvqe/circuit.hpp"

#include <bit>
#include <cmath>

#include "nhvqe/errors.hpp"
#include "nhvqe/rng.hpp"

namespace nhvqe {

namespace kernels {

void apply_rx_bit(Complex* data, std::size_t dim, int bit, double theta) {
    // e^{-i theta X} = [[c, -is], [-is, c]]
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex mis(0.0, -s);
    const std::size_t mask = std::size_t{1} << bit;
    for (std::size_t v = 0; v < dim; ++v) {
        if (v & mask) continue;
        const Complex a0 = data[v], a1 = data[v | mask];
        data[v] = c * a0 + mis * a1;
        data[v | mask] = mis * a0 + c * a1;
    }
}

void apply_rz_bit(Complex* data, std::size_t dim, int bit, double theta) {
    // e^{-i theta Z} = diag(e^{-i theta}, e^{+i theta})
    const Complex lo = std::polar(1.0, -theta), hi = std::polar(1.0, theta);
    const std::size_t mask = std::size_t{1} << bit;
    for (std::size_t v = 0; v < dim; ++v) data[v] *= (v & mask) ? hi : lo;
}

void apply_rxx_bit(Complex* data, std::size_t dim, int bit_a, int bit_b, double theta) {
    // e^{-i theta XX} = cos I - i sin XX; XX flips both bits with no phase.
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex mis(0.0, -s);
    const std::size_t ma = std::size_t{1} << bit_a;
    const std::size_t mask = ma | (std::size_t{1} << bit_b);
    for (std::size_t v = 0; v < dim; ++v) {
        if (v & ma) continue;  // visit each {v, v^mask} pair once
        const Complex a0 = data[v], a1 = data[v ^ mask];
        data[v] = c * a0 + mis * a1;
        data[v ^ mask] = mis * a0 + c * a1;
    }
}

void apply_gate_bits(Complex* data, std::size_t dim, int num_sites, const GateOp& g) {
    switch (g.kind) {
        case GateOp::Kind::rx:
            apply_rx_bit(data, dim, num_sites - 1 - g.site, g.angle);
            break;
        case GateOp::Kind::rz:
            apply_rz_bit(data, dim, num_sites - 1 - g.site, g.angle);
            break;
        case GateOp::Kind::rxx: {
            const int other = (g.site + 1) % num_sites;
            apply_rxx_bit(data, dim, num_sites - 1 - g.site, num_sites - 1 - other, g.angle);
            break;
        }
    }
}

void apply_pauli_term(const PauliTerm& term, const Complex* in, Complex* out,
                      std::size_t dim, int num_sites) {
    std::size_t flip = 0, sign_mask = 0;
    int n_y = 0;
    for (int site = 0; site < num_sites; ++site) {
        const std::size_t bit = std::size_t{1} << (num_sites - 1 - site);
        switch (term.letters[static_cast<std::size_t>(site)]) {
            case 'X': flip |= bit; break;
            case 'Y': flip |= bit; sign_mask |= bit; ++n_y; break;
            case 'Z': sign_mask |= bit; break;
            default: break;
        }
    }
    static const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex base = term.coefficient * kIPowers[n_y % 4];
    for (std::size_t v = 0; v < dim; ++v) {
        const bool negative = std::popcount(v & sign_mask) & 1;
        out[v ^ flip] = (negative ? -base : base) * in[v];
    }
}

}  // namespace kernels

AnsatzParams AnsatzParams::zeros(int num_sites, int depth, BoundaryCondition bc) {
    if (depth < 0) throw DimensionError("ansatz depth must be >= 0");
    const int bonds = num_bonds(num_sites, bc);
    AnsatzParams p;
    p.num_sites = num_sites;
    p.depth = depth;
    p.bc = bc;
    p.alpha.assign(static_cast<std::size_t>(depth),
                   std::vector<double>(static_cast<std::size_t>(bonds), 0.0));
    p.beta.assign(static_cast<std::size_t>(depth),
                  std::vector<double>(static_cast<std::size_t>(num_sites), 0.0));
    p.gamma = p.beta;
    return p;
}

AnsatzParams AnsatzParams::random(int num_sites, int depth, BoundaryCondition bc,
                                  std::uint64_t seed) {
    AnsatzParams p = zeros(num_sites, depth, bc);
    SplitMix64 gen(seed_stream(seed, 0x616e7361747aull));
    for (int j = 0; j < depth; ++j) {
        for (auto& a : p.alpha[static_cast<std::size_t>(j)]) a = gen.uniform(-0.1, 0.1);
        for (auto& b : p.beta[static_cast<std::size_t>(j)]) b = gen.uniform(-0.1, 0.1);
        for (auto& g : p.gamma[static_cast<std::size_t>(j)]) g = gen.uniform(-0.1, 0.1);
    }
    return p;
}

int AnsatzParams::angle_count() const {
    return depth * (num_bonds(num_sites, bc) + 2 * num_sites);
}

void AnsatzParams::validate() const {
    const std::size_t P = static_cast<std::size_t>(depth);
    const std::size_t bonds = static_cast<std::size_t>(num_bonds(num_sites, bc));
    const std::size_t L = static_cast<std::size_t>(num_sites);
    if (alpha.size() != P || beta.size() != P || gamma.size() != P) {
        throw DimensionError("AnsatzParams: layer count does not match depth");
    }
    for (std::size_t j = 0; j < P; ++j) {
        if (alpha[j].size() != bonds || beta[j].size() != L || gamma[j].size() != L) {
            throw DimensionError("AnsatzParams: angle array shape mismatch at layer " +
                                 std::to_string(j));
        }
    }
}

AngleGrad AngleGrad::zeros_like(const AnsatzParams& p) {
    AngleGrad g;
    g.alpha.assign(p.alpha.size(), {});
    g.beta.assign(p.beta.size(), {});
    g.gamma.assign(p.gamma.size(), {});
    for (std::size_t j = 0; j < p.alpha.size(); ++j) {
        g.alpha[j].assign(p.alpha[j].size(), 0.0);
        g.beta[j].assign(p.beta[j].size(), 0.0);
        g.gamma[j].assign(p.gamma[j].size(), 0.0);
    }
    return g;
}

AnsatzParams axpy(const AnsatzParams& params, double scale, const AngleGrad& grad) {
    AnsatzParams out = params;
    if (grad.alpha.size() != params.alpha.size()) {
        throw DimensionError("axpy: gradient shape mismatch");
    }
    for (std::size_t j = 0; j < out.alpha.size(); ++j) {
        for (std::size_t l = 0; l < out.alpha[j].size(); ++l)
            out.alpha[j][l] += scale * grad.alpha[j][l];
        for (std::size_t l = 0; l < out.beta[j].size(); ++l)
            out.beta[j][l] += scale * grad.beta[j][l];
        for (std::size_t l = 0; l < out.gamma[j].size(); ++l)
            out.gamma[j][l] += scale * grad.gamma[j][l];
    }
    return out;
}

std::vector<GateOp> gate_sequence(const AnsatzParams& params) {
    params.validate();
    std::vector<GateOp> gates;
    gates.reserve(static_cast<std::size_t>(params.angle_count()));
    for (int j = 0; j < params.depth; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        for (std::size_t l = 0; l < params.alpha[ju].size(); ++l) {
            gates.push_back({GateOp::Kind::rxx, static_cast<int>(l), params.alpha[ju][l]});
        }
        for (std::size_t l = 0; l < params.beta[ju].size(); ++l) {
            gates.push_back({GateOp::Kind::rz, static_cast<int>(l), params.beta[ju][l]});
        }
        for (std::size_t l = 0; l < params.gamma[ju].size(); ++l) {
            gates.push_back({GateOp::Kind::rx, static_cast<int>(l), params.gamma[ju][l]});
        }
    }
    return gates;
}

StateVector zero_state(int num_sites) {
    if (num_sites < 1) throw DimensionError("zero_state: num_sites must be >= 1");
    StateVector psi;
    psi.num_sites = num_sites;
    psi.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_sites);
    psi.amplitudes[0] = Complex(1.0, 0.0);
    return psi;
}

StateVector apply_gate(const StateVector& psi, const GateOp& g) {
    const int L = psi.num_sites;
    if (g.site < 0 || g.site >= L || (g.kind == GateOp::Kind::rxx && L < 2)) {
        throw DimensionError("apply_gate: site index out of range");
    }
    StateVector out = psi;
    kernels::apply_gate_bits(out.amplitudes.data(),
                             static_cast<std::size_t>(out.amplitudes.size()), L, g);
    return out;
}

StateVector apply_ansatz(const AnsatzParams& params) {
    StateVector psi = zero_state(params.num_sites);
    const std::size_t dim = static_cast<std::size_t>(psi.amplitudes.size());
    for (const GateOp& g : gate_sequence(params)) {
        kernels::apply_gate_bits(psi.amplitudes.data(), dim, params.num_sites, g);
    }
    return psi;
}

Complex expectation(const StateVector& psi, const PauliSum& s) {
    if (psi.num_sites != s.num_sites()) {
        throw DimensionError("expectation: state and operator site counts differ");
    }
    const std::size_t dim = static_cast<std::size_t>(psi.amplitudes.size());
    Eigen::VectorXcd scratch(psi.amplitudes.size());
    Complex acc(0.0, 0.0);
    for (const auto& term : s.terms()) {
        kernels::apply_pauli_term(term, psi.amplitudes.data(), scratch.data(), dim,
                                  psi.num_sites);
        acc += psi.amplitudes.dot(scratch);  // Eigen dot conjugates the left side
    }
    return acc;
}

}  // namespace nhvqe
