#pragma once

// Counterfactuals: click-to-cancel attention shocks, beta sweeps and the
// mandatory-reminder (full attention) limit.

#include "trialopt/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trialopt {

struct PolicyShock {
    double gamma = 1.0;
    std::string label = "shock";

    void validate() const;
};

AttentionParams apply_shock(const AttentionParams& params, const PolicyShock& shock);

/// Step used for the two-point slopes dT*/dgamma and dP*/dgamma.
inline constexpr double kGammaStep = 0.1;

struct ComparativeStaticsReport {
    OptimalContract baseline;
    OptimalContract shocked;
    double delta_T = 0.0;  // shocked - baseline
    double delta_P = 0.0;
    double dT_dGamma = 0.0;  // (solve(gamma + step) - solve(gamma)) / step at the shocked gamma
    double dP_dGamma = 0.0;
    std::optional<double> epsilon_used;
    std::optional<bool> sign_rule_holds;    // sign(dP/dgamma) == sign(1 - eps), iso-elastic only
    std::optional<bool> trial_falls;        // dT/dgamma < 0, only when the baseline T* is interior
    bool baseline_interior = false;
};

ComparativeStaticsReport click_to_cancel_statics(const ValuationDistribution& dist, const AttentionParams& params,
                                                 const PolicyShock& shock, const SolverConfig& config);

struct BetaPoint {
    double beta = 0.0;
    double profit = 0.0;
    double T = 0.0;
    double P = 0.0;
    std::string flags;
};

struct BetaProfitCurve {
    std::vector<BetaPoint> points;
    std::size_t argmax = 0;
    bool interior_max = false;  // max exceeds both endpoints by more than opt_tol
};

/// Re-optimized profit along a log-spaced beta grid (>= 12 points, >= 3 decades).
BetaProfitCurve beta_profit_curve(const ValuationDistribution& dist, const AttentionParams& params_base,
                                  const std::vector<double>& beta_grid, const SolverConfig& config);

/// Full-attention limit: q* = 1, so the firm solves max P(1 - F(P)) with T = 0.
OptimalContract mandatory_reminder_limit(const ValuationDistribution& dist, const SolverConfig& config);

} // namespace trialopt
