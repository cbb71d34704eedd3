#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nhvqe/cost.hpp"

namespace nhvqe {

struct OptimizerConfig {
    double learning_rate = 0.05;
    /// Window tolerance for phase 1: converged when the cost decrease over the
    /// last 10 accepted iterations falls below this.
    double convergence_tol = 1e-9;
    /// Same criterion for phase 2 (and theta-only re-optimizations).
    double convergence_tol_final = 1e-12;
    int max_iters_per_phase = 5000;
    std::uint64_t seed = 0;
    /// Learning-rate halvings allowed per iteration before the phase is
    /// declared at its numerical floor.
    int backoff_limit = 5;
    /// A solution counts as converged only if its best cost is below this.
    double accept_cost = 1e-6;
    /// Adam instead of plain gradient descent. Off in every reference and
    /// acceptance run.
    bool adaptive = false;
};

struct ScanConfig {
    int n = 0;             // excited states sought
    double delta_e = 0.1;  // initial E_r increment
    double step = 0.1;     // increment growth quantum
    double e_r0 = 0.0;
    double e_i0 = 0.0;
    /// |E_r - E_temp| above this means a new level was found (literal float
    /// inequality is always true).
    double energy_match_tol = 1e-4;
    /// |E_i| above this triggers the conjugate-partner capture branch.
    double imag_capture_tol = 1e-6;
    /// Scan budget: bump attempts before giving up with a partial report.
    int max_bumps = 500;
};

enum class PinnedComponent { pin_e_r, pin_e_i };

struct EigenSolution {
    EnergyParam energy;
    AnsatzParams params;
    double final_cost = 0.0;
    EigenSide side = EigenSide::right;
    int iterations_phase1 = 0;
    int iterations_phase2 = 0;
    bool converged = false;
    /// False if any accepted iterate increased the cost by more than 1e-12.
    bool monotone = true;
};

/// Called after every accepted iterate; phase is 1 or 2 (0 for theta-only
/// re-optimizations).
using IterationObserver =
    std::function<void(int phase, int iteration, const AnsatzParams&, EnergyParam, double cost)>;

struct AnsatzShape {
    int num_sites = 0;
    int depth = 0;
    BoundaryCondition bc = BoundaryCondition::open;
};

struct ScanProvenance {
    int bump_index = 0;      // 0 for the ground solve
    double e_r_start = 0.0;  // E_r handed to the optimizer for this solve
    bool conjugate_capture = false;
};

struct SpectrumReport {
    std::vector<EigenSolution> solutions;  // discovery order
    std::vector<ScanProvenance> provenance;
    double e_r0 = 0.0;
    double e_i0 = 0.0;
    std::uint64_t seed = 0;
    int bumps_used = 0;
    bool complete = true;
};

/// Algorithm: phase 1 descends (theta, E_i) with E_r frozen (roles swapped for
/// pin_e_i) until the 10-iteration cost window stalls; phase 2 releases all of
/// (theta, E_r, E_i). Returns the best-seen iterate.
EigenSolution two_step_optimize(const CostModel& model, AnsatzParams init_params,
                                EnergyParam init_e, const OptimizerConfig& cfg,
                                PinnedComponent pinned, EigenSide side,
                                const IterationObserver& observer = {});

/// Convenience overload on the exact statevector backend.
EigenSolution two_step_optimize(const PauliSum& h, AnsatzParams init_params,
                                EnergyParam init_e, const OptimizerConfig& cfg,
                                PinnedComponent pinned, EigenSide side,
                                const IterationObserver& observer = {});

/// Descends theta only with E frozen (the conjugate-partner step of the
/// spectrum scan).
EigenSolution optimize_theta_only(const CostModel& model, AnsatzParams init_params,
                                  EnergyParam e, const OptimizerConfig& cfg, EigenSide side,
                                  const IterationObserver& observer = {});

/// Walks E_r upward from e_r0: solve the ground state, then repeatedly bump
/// E_r by delta_e and re-optimize (warm-starting theta); a converged E_r that
/// moved by more than energy_match_tol is a new level (delta_e resets to
/// step), otherwise delta_e grows by step. Recorded states with |E_i| above
/// imag_capture_tol get their complex-conjugate partner captured by negating
/// E_i and re-optimizing theta only.
SpectrumReport spectrum_scan(const PauliSum& h, const OptimizerConfig& cfg_opt,
                             const ScanConfig& cfg_scan, const AnsatzShape& shape,
                             EigenSide side = EigenSide::right);

}  // namespace nhvqe
