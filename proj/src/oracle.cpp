#include "nhvqe/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "nhvqe/errors.hpp"

namespace nhvqe {

namespace {

constexpr double kPairingTol = 1e-8;
constexpr double kSeparationTol = 1e-6;
constexpr double kRealTieTol = 1e-9;

/// Ascending (real, imag) order. Sorted exactly first, then adjacent entries
/// whose real parts agree within 1e-9 are reordered by imaginary part; a
/// tolerance-aware comparator fed to std::sort would not be a strict weak
/// ordering.
std::vector<int> sorted_order(const std::vector<Complex>& w) {
    std::vector<int> idx(w.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (w[static_cast<std::size_t>(a)].real() != w[static_cast<std::size_t>(b)].real()) {
            return w[static_cast<std::size_t>(a)].real() < w[static_cast<std::size_t>(b)].real();
        }
        return w[static_cast<std::size_t>(a)].imag() < w[static_cast<std::size_t>(b)].imag();
    });
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
            const Complex& a = w[static_cast<std::size_t>(idx[k])];
            const Complex& b = w[static_cast<std::size_t>(idx[k + 1])];
            if (std::abs(a.real() - b.real()) <= kRealTieTol && a.imag() > b.imag()) {
                std::swap(idx[k], idx[k + 1]);
                swapped = true;
            }
        }
    }
    return idx;
}

}  // namespace

Complex EigenDecomposition::biorthogonal_norm(int n) const {
    return left_vectors.col(n).dot(right_vectors.col(n));
}

EigenDecomposition exact_eig(const PauliSum& h) {
    const Eigen::MatrixXcd dense = to_dense(h);
    const Eigen::Index dim = dense.rows();

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> right_solver(dense, true);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> left_solver(dense.adjoint(), true);
    if (right_solver.info() != Eigen::Success || left_solver.info() != Eigen::Success) {
        throw NumericalDivergence("exact_eig: eigendecomposition failed to converge");
    }

    std::vector<Complex> wr(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) wr[static_cast<std::size_t>(i)] =
        right_solver.eigenvalues()(i);
    const std::vector<int> order = sorted_order(wr);

    EigenDecomposition out;
    out.eigenvalues.resize(static_cast<std::size_t>(dim));
    out.right_vectors.resize(dim, dim);
    out.left_vectors.resize(dim, dim);
    out.well_separated.assign(static_cast<std::size_t>(dim), true);

    std::vector<bool> used(static_cast<std::size_t>(dim), false);
    std::vector<Complex> unmatched;
    for (Eigen::Index n = 0; n < dim; ++n) {
        const int src = order[static_cast<std::size_t>(n)];
        const Complex en = wr[static_cast<std::size_t>(src)];
        out.eigenvalues[static_cast<std::size_t>(n)] = en;
        out.right_vectors.col(n) = right_solver.eigenvectors().col(src).normalized();

        // Match against the adjoint spectrum: l_n pairs with E_n*.
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (Eigen::Index m = 0; m < dim; ++m) {
            if (used[static_cast<std::size_t>(m)]) continue;
            const double d = std::abs(left_solver.eigenvalues()(m) - std::conj(en));
            if (d < best_dist) {
                best_dist = d;
                best = static_cast<int>(m);
            }
        }
        if (best < 0 || best_dist > kPairingTol) {
            unmatched.push_back(en);
            continue;
        }
        used[static_cast<std::size_t>(best)] = true;
        out.left_vectors.col(n) = left_solver.eigenvectors().col(best).normalized();
    }
    if (!unmatched.empty()) {
        std::ostringstream msg;
        msg << "exact_eig: left/right eigenvalue pairing failed for";
        for (const Complex& e : unmatched) msg << " (" << e.real() << "," << e.imag() << ")";
        throw PairingAmbiguity(msg.str());
    }

    for (Eigen::Index n = 0; n < dim; ++n) {
        for (Eigen::Index m = 0; m < dim; ++m) {
            if (m == n) continue;
            if (std::abs(out.eigenvalues[static_cast<std::size_t>(n)] -
                         out.eigenvalues[static_cast<std::size_t>(m)]) < kSeparationTol) {
                out.well_separated[static_cast<std::size_t>(n)] = false;
                break;
            }
        }
    }
    return out;
}

std::vector<EpScanRow> exceptional_point_scan(int num_sites, double lambda,
                                              const std::vector<double>& kappa_grid,
                                              BoundaryCondition bc, int lowest) {
    if (kappa_grid.empty()) throw ValidationError("kappa_grid must be nonempty");
    const int dim = 1 << num_sites;
    const int low_count = (lowest <= 0 || lowest >= dim) ? dim : lowest;

    std::vector<EpScanRow> rows;
    rows.reserve(kappa_grid.size());
    for (double kappa : kappa_grid) {
        const EigenDecomposition d = exact_eig(build_ising(num_sites, lambda, kappa, bc));
        EpScanRow row;
        row.kappa = kappa;
        row.min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t n = 0; n < d.eigenvalues.size(); ++n) {
            row.max_imag = std::max(row.max_imag, std::abs(d.eigenvalues[n].imag()));
            if (n < static_cast<std::size_t>(low_count)) {
                row.max_imag_low = std::max(row.max_imag_low,
                                            std::abs(d.eigenvalues[n].imag()));
            }
            for (std::size_t m = n + 1; m < d.eigenvalues.size(); ++m) {
                row.min_gap = std::min(row.min_gap,
                                       std::abs(d.eigenvalues[n] - d.eigenvalues[m]));
            }
        }
        row.all_real = row.max_imag < 1e-8;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace nhvqe
