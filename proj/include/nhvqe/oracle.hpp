#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nhvqe/pauli.hpp"

namespace nhvqe {

/// Exact-diagonalization ground truth. Eigenvalues ascend by real part
/// (ties, within 1e-9, by imaginary part); left columns solve the adjoint
/// problem and are index-matched to the right columns by eigenvalue
/// conjugation. All columns unit-normalized.
struct EigenDecomposition {
    std::vector<Complex> eigenvalues;
    Eigen::MatrixXcd right_vectors;
    Eigen::MatrixXcd left_vectors;
    /// False when the pair sits within 1e-6 of another eigenvalue, where
    /// labeling is inherently ambiguous.
    std::vector<bool> well_separated;

    /// c_n = <l_n|r_n> on the unit-normalized pair.
    Complex biorthogonal_norm(int n) const;
};

/// Full decomposition of the dense realization (L <= 12). Throws
/// PairingAmbiguity when some adjoint eigenvalue cannot be matched within
/// 1e-8 (expected near exceptional points).
EigenDecomposition exact_eig(const PauliSum& h);

struct EpScanRow {
    double kappa = 0.0;
    double max_imag = 0.0;      // over the full spectrum
    double min_gap = 0.0;       // minimal pairwise eigenvalue distance
    double max_imag_low = 0.0;  // over the `lowest` states by real part
    bool all_real = false;      // max_imag < 1e-8
};

/// Per-kappa spectral summary of the Ising model along a kappa grid. The
/// real-to-complex transition is bracketed by the first grid cell where
/// reality fails; `lowest` controls the low-lying subset column (full
/// spectrum when <= 0 or >= 2^L).
std::vector<EpScanRow> exceptional_point_scan(int num_sites, double lambda,
                                              const std::vector<double>& kappa_grid,
                                              BoundaryCondition bc, int lowest = 0);

}  // namespace nhvqe
