#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace nhvqe {

using Complex = std::complex<double>;

/// Coefficients with magnitude below this are dropped after simplification
/// (double-precision roundoff floor, far below physics scales).
inline constexpr double kCoeffPruneTol = 1e-14;

/// Largest system size realized as a dense matrix by default.
inline constexpr int kMaxDenseSites = 12;

enum class BoundaryCondition { open, periodic };

/// Number of XX bonds for an L-site chain: L-1 open (0 for a single site),
/// L periodic. Periodic requires L >= 2.
int num_bonds(int num_sites, BoundaryCondition bc);

/// One complex-weighted Pauli string. `letters` holds one of {I,X,Y,Z} per
/// site; site 0 is the leftmost letter and the most significant bit of basis
/// indices (convention fixed repo-wide).
struct PauliTerm {
    Complex coefficient;
    std::string letters;

    int num_sites() const { return static_cast<int>(letters.size()); }
};

/// Returns the single Pauli term equal to the operator product a*b, with the
/// per-site phases (+-1, +-i) folded into the coefficient.
PauliTerm term_product(const PauliTerm& a, const PauliTerm& b);

/// A linear combination of Pauli strings on a fixed number of sites. The
/// in-memory term list is whatever the caller built; simplified() merges like
/// terms, prunes tiny coefficients and sorts letters lexicographically.
class PauliSum {
public:
    explicit PauliSum(int num_sites);
    PauliSum(int num_sites, std::vector<PauliTerm> terms);

    int num_sites() const { return num_sites_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Appends a term after validating letters length and coefficient
    /// finiteness.
    void add_term(PauliTerm term);

    /// Merged, pruned, lexicographically sorted copy. After this no two terms
    /// share the same letters word.
    PauliSum simplified(double tol = kCoeffPruneTol) const;

    /// c * identity on L sites.
    static PauliSum identity(int num_sites, Complex c = Complex(1.0, 0.0));

    PauliSum& operator*=(Complex scale);
    PauliSum& operator+=(const PauliSum& other);
    PauliSum& operator-=(const PauliSum& other);

    friend PauliSum operator*(Complex scale, PauliSum sum) {
        sum *= scale;
        return sum;
    }
    friend PauliSum operator+(PauliSum lhs, const PauliSum& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend PauliSum operator-(PauliSum lhs, const PauliSum& rhs) {
        lhs -= rhs;
        return lhs;
    }

private:
    int num_sites_;
    std::vector<PauliTerm> terms_;
};

/// Conjugates every coefficient; letters are unchanged (Pauli strings are
/// Hermitian, so the adjoint only touches the weights).
PauliSum adjoint(const PauliSum& s);

/// Simplified product of two sums; the dense realization of the result equals
/// the matrix product of the inputs' realizations.
PauliSum sum_product(const PauliSum& a, const PauliSum& b);

/// H = -1/2 sum_j (lambda X_j X_{j+1} + Z_j + i kappa X_j), with the bond sum
/// over L-1 bonds (open) or L bonds (periodic). For L = 1 the coupling term is
/// omitted.
PauliSum build_ising(int num_sites, double lambda, double kappa, BoundaryCondition bc);

/// Exact Kronecker-product realization, row-major with site 0 as the most
/// significant bit.
Eigen::MatrixXcd to_dense(const PauliSum& s, int max_sites = kMaxDenseSites);

}  // namespace nhvqe
