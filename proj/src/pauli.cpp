#include "nhvqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "nhvqe/errors.hpp"

namespace nhvqe {

namespace {

int letter_index(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default: throw ValidationError(std::string("invalid Pauli letter '") + c + "'");
    }
}

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

// Single-site products: result letter index and phase as a power of i.
// XY = iZ, YZ = iX, ZX = iY (cyclic), reversed order picks up -i.
struct SiteProduct {
    int letter;
    int i_power;  // phase = i^i_power
};

SiteProduct site_product(int a, int b) {
    if (a == 0) return {b, 0};
    if (b == 0) return {a, 0};
    if (a == b) return {0, 0};
    const int c = 6 - a - b;  // the remaining non-identity letter
    const bool cyclic = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
    return {c, cyclic ? 1 : 3};
}

void validate_term(const PauliTerm& term, int num_sites) {
    if (term.num_sites() != num_sites) {
        throw DimensionError("PauliTerm acts on " + std::to_string(term.num_sites()) +
                             " sites, expected " + std::to_string(num_sites));
    }
    if (!std::isfinite(term.coefficient.real()) || !std::isfinite(term.coefficient.imag())) {
        throw ValidationError("PauliTerm coefficient must be finite");
    }
    for (char c : term.letters) letter_index(c);
}

}  // namespace

int num_bonds(int num_sites, BoundaryCondition bc) {
    if (num_sites < 1) throw DimensionError("num_sites must be >= 1");
    if (bc == BoundaryCondition::periodic) {
        if (num_sites < 2) throw DimensionError("periodic boundary requires L >= 2");
        return num_sites;
    }
    return num_sites - 1;
}

PauliTerm term_product(const PauliTerm& a, const PauliTerm& b) {
    if (a.num_sites() != b.num_sites()) {
        throw DimensionError("term_product: operands act on different site counts");
    }
    std::string letters(a.letters.size(), 'I');
    int i_power = 0;
    for (std::size_t s = 0; s < letters.size(); ++s) {
        const SiteProduct p = site_product(letter_index(a.letters[s]), letter_index(b.letters[s]));
        letters[s] = kLetters[p.letter];
        i_power += p.i_power;
    }
    static const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return {a.coefficient * b.coefficient * kIPowers[i_power % 4], std::move(letters)};
}

PauliSum::PauliSum(int num_sites) : num_sites_(num_sites) {
    if (num_sites < 1) throw DimensionError("PauliSum requires num_sites >= 1");
}

PauliSum::PauliSum(int num_sites, std::vector<PauliTerm> terms) : PauliSum(num_sites) {
    for (auto& t : terms) add_term(std::move(t));
}

void PauliSum::add_term(PauliTerm term) {
    validate_term(term, num_sites_);
    terms_.push_back(std::move(term));
}

PauliSum PauliSum::simplified(double tol) const {
    std::map<std::string, Complex> merged;
    for (const auto& t : terms_) merged[t.letters] += t.coefficient;
    PauliSum out(num_sites_);
    for (auto& [letters, coeff] : merged) {
        if (std::abs(coeff) > tol) out.terms_.push_back({coeff, letters});
    }
    return out;
}

PauliSum PauliSum::identity(int num_sites, Complex c) {
    PauliSum s(num_sites);
    s.add_term({c, std::string(static_cast<std::size_t>(num_sites), 'I')});
    return s;
}

PauliSum& PauliSum::operator*=(Complex scale) {
    for (auto& t : terms_) t.coefficient *= scale;
    return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
    if (other.num_sites_ != num_sites_) {
        throw DimensionError("PauliSum addition: mismatched site counts");
    }
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
    PauliSum negated = other;
    negated *= Complex(-1.0, 0.0);
    return *this += negated;
}

PauliSum adjoint(const PauliSum& s) {
    PauliSum out(s.num_sites());
    for (const auto& t : s.terms()) out.add_term({std::conj(t.coefficient), t.letters});
    return out;
}

PauliSum sum_product(const PauliSum& a, const PauliSum& b) {
    if (a.num_sites() != b.num_sites()) {
        throw DimensionError("sum_product: mismatched site counts");
    }
    PauliSum out(a.num_sites());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) out.add_term(term_product(ta, tb));
    }
    return out.simplified();
}

PauliSum build_ising(int num_sites, double lambda, double kappa, BoundaryCondition bc) {
    const int bonds = num_bonds(num_sites, bc);
    PauliSum h(num_sites);
    const std::size_t n = static_cast<std::size_t>(num_sites);
    for (int j = 0; j < bonds; ++j) {
        std::string letters(n, 'I');
        letters[static_cast<std::size_t>(j)] = 'X';
        letters[static_cast<std::size_t>((j + 1) % num_sites)] = 'X';
        h.add_term({Complex(-0.5 * lambda, 0.0), std::move(letters)});
    }
    for (int j = 0; j < num_sites; ++j) {
        std::string z(n, 'I');
        z[static_cast<std::size_t>(j)] = 'Z';
        h.add_term({Complex(-0.5, 0.0), std::move(z)});
        if (kappa != 0.0) {
            std::string x(n, 'I');
            x[static_cast<std::size_t>(j)] = 'X';
            h.add_term({Complex(0.0, -0.5 * kappa), std::move(x)});
        }
    }
    return h.simplified();
}

Eigen::MatrixXcd to_dense(const PauliSum& s, int max_sites) {
    const int L = s.num_sites();
    if (L > max_sites) {
        throw ResourceError("to_dense: " + std::to_string(L) + " sites exceeds maximum " +
                            std::to_string(max_sites));
    }
    const std::size_t dim = std::size_t{1} << L;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto& t : s.terms()) {
        // P|v> = phase(v) |v ^ flip>; per site, X flips, Z signs, Y does both
        // with an extra factor of i.
        std::size_t flip = 0, sign_mask = 0;
        int n_y = 0;
        for (int site = 0; site < L; ++site) {
            const std::size_t bit = std::size_t{1} << (L - 1 - site);
            switch (t.letters[static_cast<std::size_t>(site)]) {
                case 'X': flip |= bit; break;
                case 'Y': flip |= bit; sign_mask |= bit; ++n_y; break;
                case 'Z': sign_mask |= bit; break;
                default: break;
            }
        }
        static const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const Complex base = t.coefficient * kIPowers[n_y % 4];
        for (std::size_t v = 0; v < dim; ++v) {
            const bool negative = std::popcount(v & sign_mask) & 1;
            m(static_cast<Eigen::Index>(v ^ flip), static_cast<Eigen::Index>(v)) +=
                negative ? -base : base;
        }
    }
    return m;
}

}  // namespace nhvqe
