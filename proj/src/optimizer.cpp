#include "nhvqe/optimizer.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "nhvqe/errors.hpp"

namespace nhvqe {

namespace {

constexpr int kWindow = 10;

struct PhaseSpec {
    int phase_id;
    bool theta_free;
    bool e_r_free;
    bool e_i_free;
    double window_tol;
};

struct BestIterate {
    AnsatzParams params;
    EnergyParam energy;
    double cost;
};

bool finite(double x) { return std::isfinite(x); }

bool grad_finite(const AngleGrad& g) {
    for (const auto& block : {&g.alpha, &g.beta, &g.gamma}) {
        for (const auto& layer : *block) {
            for (double v : layer) {
                if (!std::isfinite(v)) return false;
            }
        }
    }
    return true;
}

/// Adam state for the optional adaptive mode; flattened over (theta, e_r,
/// e_i).
struct AdamState {
    AngleGrad m_theta, v_theta;
    double m_er = 0, v_er = 0, m_ei = 0, v_ei = 0;
    int t = 0;
};

class PhaseRunner {
public:
    PhaseRunner(const CostModel& model, const OptimizerConfig& cfg, AnsatzParams& params,
                EnergyParam& e, BestIterate& best, bool& monotone,
                const IterationObserver& observer)
        : model_(model),
          cfg_(cfg),
          params_(params),
          e_(e),
          best_(best),
          monotone_(monotone),
          observer_(observer) {}

    /// Runs one descent phase; returns the number of accepted iterations.
    /// Sets met_criterion when the phase ended by the window test or by
    /// hitting the backoff floor (cost unimprovable at learning_rate/2^limit).
    int run(const PhaseSpec& spec, bool& met_criterion) {
        double alpha = cfg_.learning_rate;
        CostModel::Evaluation eval = model_.evaluate(params_, e_);
        check_finite(eval, 0, spec.phase_id);
        track_best(eval.cost);
        std::deque<double> window{eval.cost};
        AdamState adam;
        if (cfg_.adaptive) {
            adam.m_theta = AngleGrad::zeros_like(params_);
            adam.v_theta = adam.m_theta;
        }
        met_criterion = false;

        int iter = 0;
        while (iter < cfg_.max_iters_per_phase) {
            AngleGrad g_theta = spec.theta_free ? model_.grad_theta(params_, e_)
                                                : AngleGrad::zeros_like(params_);
            if (!grad_finite(g_theta) || !finite(eval.grad_e_r) || !finite(eval.grad_e_i)) {
                throw NumericalDivergence("non-finite gradient at phase " +
                                          std::to_string(spec.phase_id) + " iteration " +
                                          std::to_string(iter));
            }
            const double g_er = spec.e_r_free ? eval.grad_e_r : 0.0;
            const double g_ei = spec.e_i_free ? eval.grad_e_i : 0.0;

            bool accepted = false;
            AnsatzParams trial_params = params_;
            EnergyParam trial_e = e_;
            CostModel::Evaluation trial_eval{};
            if (cfg_.adaptive) {
                adam_step(adam, g_theta, g_er, g_ei, trial_params, trial_e);
                trial_eval = model_.evaluate(trial_params, trial_e);
                check_finite(trial_eval, iter + 1, spec.phase_id);
                if (trial_eval.cost > eval.cost + 1e-12) monotone_ = false;
                accepted = true;
            } else {
                double trial_alpha = alpha;
                for (int attempt = 0; attempt <= cfg_.backoff_limit; ++attempt) {
                    trial_params = axpy(params_, -trial_alpha, g_theta);
                    trial_e = {e_.e_r - trial_alpha * g_er, e_.e_i - trial_alpha * g_ei};
                    trial_eval = model_.evaluate(trial_params, trial_e);
                    check_finite(trial_eval, iter + 1, spec.phase_id);
                    if (trial_eval.cost <= eval.cost) {
                        alpha = trial_alpha;
                        accepted = true;
                        break;
                    }
                    trial_alpha *= 0.5;
                }
            }
            if (!accepted) {
                // Even learning_rate / 2^backoff_limit raises the cost: we are
                // at the numerical floor of this phase.
                met_criterion = true;
                break;
            }

            params_ = std::move(trial_params);
            e_ = trial_e;
            eval = trial_eval;
            ++iter;
            track_best(eval.cost);
            if (observer_) observer_(spec.phase_id, iter, params_, e_, eval.cost);

            window.push_back(eval.cost);
            if (window.size() > kWindow + 1) window.pop_front();
            if (window.size() == kWindow + 1 &&
                std::abs(window.front() - window.back()) < spec.window_tol) {
                met_criterion = true;
                break;
            }
        }
        return iter;
    }

private:
    void check_finite(const CostModel::Evaluation& eval, int iter, int phase) const {
        if (!finite(eval.cost)) {
            throw NumericalDivergence("non-finite cost at phase " + std::to_string(phase) +
                                      " iteration " + std::to_string(iter));
        }
    }

    void track_best(double cost) {
        if (cost < best_.cost) best_ = {params_, e_, cost};
    }

    void adam_step(AdamState& s, const AngleGrad& g_theta, double g_er, double g_ei,
                   AnsatzParams& out_params, EnergyParam& out_e) {
        constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        ++s.t;
        const double c1 = 1.0 - std::pow(b1, s.t), c2 = 1.0 - std::pow(b2, s.t);
        auto update = [&](double& m, double& v, double g) {
            m = b1 * m + (1 - b1) * g;
            v = b2 * v + (1 - b2) * g * g;
            return (m / c1) / (std::sqrt(v / c2) + eps);
        };
        AngleGrad dir = AngleGrad::zeros_like(out_params);
        auto blockwise = [&](std::vector<std::vector<double>> AngleGrad::* blk) {
            for (std::size_t j = 0; j < (g_theta.*blk).size(); ++j) {
                for (std::size_t l = 0; l < (g_theta.*blk)[j].size(); ++l) {
                    (dir.*blk)[j][l] = update((s.m_theta.*blk)[j][l], (s.v_theta.*blk)[j][l],
                                              (g_theta.*blk)[j][l]);
                }
            }
        };
        blockwise(&AngleGrad::alpha);
        blockwise(&AngleGrad::beta);
        blockwise(&AngleGrad::gamma);
        out_params = axpy(out_params, -cfg_.learning_rate, dir);
        out_e.e_r -= cfg_.learning_rate * update(s.m_er, s.v_er, g_er);
        out_e.e_i -= cfg_.learning_rate * update(s.m_ei, s.v_ei, g_ei);
    }

    const CostModel& model_;
    const OptimizerConfig& cfg_;
    AnsatzParams& params_;
    EnergyParam& e_;
    BestIterate& best_;
    bool& monotone_;
    const IterationObserver& observer_;
};

void validate_config(const OptimizerConfig& cfg) {
    if (!(cfg.learning_rate > 0)) throw ValidationError("optimizer.learning_rate must be > 0");
    if (!(cfg.convergence_tol > 0)) throw ValidationError("optimizer.convergence_tol must be > 0");
    if (!(cfg.convergence_tol_final > 0)) {
        throw ValidationError("optimizer.convergence_tol_final must be > 0");
    }
    if (cfg.max_iters_per_phase < 1) {
        throw ValidationError("optimizer.max_iters_per_phase must be >= 1");
    }
}

}  // namespace

EigenSolution two_step_optimize(const CostModel& model, AnsatzParams init_params,
                                EnergyParam init_e, const OptimizerConfig& cfg,
                                PinnedComponent pinned, EigenSide side,
                                const IterationObserver& observer) {
    validate_config(cfg);
    init_params.validate();
    if (!finite(init_e.e_r) || !finite(init_e.e_i)) {
        throw ValidationError("initial energy must be finite");
    }

    AnsatzParams params = std::move(init_params);
    EnergyParam e = init_e;
    BestIterate best{params, e, model.cost(params, e)};
    bool monotone = true;
    PhaseRunner runner(model, cfg, params, e, best, monotone, observer);

    const bool pin_r = (pinned == PinnedComponent::pin_e_r);
    bool met1 = false, met2 = false;
    const int it1 = runner.run({1, true, !pin_r, pin_r, cfg.convergence_tol}, met1);
    const int it2 = runner.run({2, true, true, true, cfg.convergence_tol_final}, met2);

    EigenSolution sol;
    sol.energy = best.energy;
    sol.params = std::move(best.params);
    sol.final_cost = best.cost;
    sol.side = side;
    sol.iterations_phase1 = it1;
    sol.iterations_phase2 = it2;
    sol.converged = met2 && best.cost <= cfg.accept_cost;
    sol.monotone = monotone;
    return sol;
}

EigenSolution two_step_optimize(const PauliSum& h, AnsatzParams init_params,
                                EnergyParam init_e, const OptimizerConfig& cfg,
                                PinnedComponent pinned, EigenSide side,
                                const IterationObserver& observer) {
    const ExactCostModel model(h, side);
    return two_step_optimize(model, std::move(init_params), init_e, cfg, pinned, side,
                             observer);
}

EigenSolution optimize_theta_only(const CostModel& model, AnsatzParams init_params,
                                  EnergyParam e, const OptimizerConfig& cfg, EigenSide side,
                                  const IterationObserver& observer) {
    validate_config(cfg);
    init_params.validate();
    AnsatzParams params = std::move(init_params);
    EnergyParam frozen = e;
    BestIterate best{params, frozen, model.cost(params, frozen)};
    bool monotone = true;
    PhaseRunner runner(model, cfg, params, frozen, best, monotone, observer);
    bool met = false;
    const int iters = runner.run({0, true, false, false, cfg.convergence_tol_final}, met);

    EigenSolution sol;
    sol.energy = e;
    sol.params = std::move(best.params);
    sol.final_cost = best.cost;
    sol.side = side;
    sol.iterations_phase2 = iters;
    sol.converged = met && best.cost <= cfg.accept_cost;
    sol.monotone = monotone;
    return sol;
}

SpectrumReport spectrum_scan(const PauliSum& h, const OptimizerConfig& cfg_opt,
                             const ScanConfig& cfg_scan, const AnsatzShape& shape,
                             EigenSide side) {
    if (cfg_scan.n < 0) throw ValidationError("scan.n must be >= 0");
    if (!(cfg_scan.step > 0)) throw ValidationError("scan.step must be > 0");
    if (h.num_sites() != shape.num_sites) {
        throw DimensionError("spectrum_scan: shape does not match Hamiltonian");
    }
    const ExactCostModel model(h, side);

    SpectrumReport report;
    report.e_r0 = cfg_scan.e_r0;
    report.e_i0 = cfg_scan.e_i0;
    report.seed = cfg_opt.seed;

    AnsatzParams theta = AnsatzParams::random(shape.num_sites, shape.depth, shape.bc,
                                              cfg_opt.seed);
    EnergyParam e{cfg_scan.e_r0, cfg_scan.e_i0};
    int found = 0;  // excited states recorded (everything after the ground)

    // Capture branch shared by the ground and in-loop states: negate E_i and
    // re-converge theta with E frozen, recording the conjugate partner.
    auto capture_partner = [&](const EigenSolution& sol, int bump) {
        if (std::abs(sol.energy.e_i) <= cfg_scan.imag_capture_tol) return false;
        const EnergyParam partner_e{sol.energy.e_r, -sol.energy.e_i};
        EigenSolution partner =
            optimize_theta_only(model, sol.params, partner_e, cfg_opt, side);
        theta = partner.params;
        e = partner.energy;
        report.solutions.push_back(std::move(partner));
        report.provenance.push_back({bump, partner_e.e_r, true});
        ++found;
        return true;
    };

    EigenSolution ground = two_step_optimize(model, theta, e, cfg_opt,
                                             PinnedComponent::pin_e_r, side);
    theta = ground.params;
    e = ground.energy;
    report.provenance.push_back({0, cfg_scan.e_r0, false});
    report.solutions.push_back(ground);
    if (cfg_scan.n >= 1) capture_partner(report.solutions.front(), 0);

    double delta = cfg_scan.delta_e;
    while (found < cfg_scan.n) {
        if (report.bumps_used >= cfg_scan.max_bumps) {
            report.complete = false;
            break;
        }
        ++report.bumps_used;
        const double e_temp = e.e_r;
        EnergyParam probe{e.e_r + delta, e.e_i};
        EigenSolution sol = two_step_optimize(model, theta, probe, cfg_opt,
                                              PinnedComponent::pin_e_r, side);
        theta = sol.params;
        e = sol.energy;
        if (std::abs(e.e_r - e_temp) > cfg_scan.energy_match_tol) {
            report.provenance.push_back({report.bumps_used, probe.e_r, false});
            report.solutions.push_back(sol);
            ++found;
            delta = cfg_scan.step;
            capture_partner(sol, report.bumps_used);
        } else {
            delta += cfg_scan.step;
        }
    }
    return report;
}

}  // namespace nhvqe
