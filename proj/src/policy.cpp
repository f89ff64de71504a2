#include "trialopt/policy.hpp"

#include "trialopt/error.hpp"
#include "trialopt/kernels.hpp"
#include "trialopt/numeric.hpp"

#include <cmath>
#include <limits>

namespace trialopt {

void PolicyShock::validate() const {
    require(gamma >= 1.0 && std::isfinite(gamma), ErrorCode::Validation, "shock gamma must be >= 1");
}

AttentionParams apply_shock(const AttentionParams& params, const PolicyShock& shock) {
    shock.validate();
    AttentionParams out = params;
    out.gamma *= shock.gamma;
    return out;
}

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

} // namespace

ComparativeStaticsReport click_to_cancel_statics(const ValuationDistribution& dist, const AttentionParams& params,
                                                 const PolicyShock& shock, const SolverConfig& config) {
    shock.validate();
    const AttentionParams shocked = apply_shock(params, shock);
    AttentionParams stepped = shocked;
    stepped.gamma += kGammaStep;

    const std::vector<AttentionParams> runs{params, shocked, stepped};
    const auto sols = kernels::joint_sweep(dist, runs, config, kernels::Exec::Parallel);

    ComparativeStaticsReport r;
    r.baseline = sols[0];
    r.shocked = sols[1];
    r.delta_T = r.shocked.contract.T - r.baseline.contract.T;
    r.delta_P = r.shocked.contract.P - r.baseline.contract.P;
    r.dT_dGamma = (sols[2].contract.T - sols[1].contract.T) / kGammaStep;
    r.dP_dGamma = (sols[2].contract.P - sols[1].contract.P) / kGammaStep;
    r.baseline_interior = !r.baseline.flags.t_at_zero && !r.baseline.flags.t_at_max;
    if (r.baseline_interior) r.trial_falls = r.dT_dGamma < 0.0;
    r.epsilon_used = dist.tail_elasticity();
    if (r.epsilon_used) r.sign_rule_holds = sign_of(r.dP_dGamma) == sign_of(1.0 - *r.epsilon_used);
    return r;
}

BetaProfitCurve beta_profit_curve(const ValuationDistribution& dist, const AttentionParams& params_base,
                                  const std::vector<double>& beta_grid, const SolverConfig& config) {
    require(beta_grid.size() >= 12, ErrorCode::Validation, "beta grid needs at least 12 points");
    require(beta_grid.front() > 0.0, ErrorCode::Validation, "beta grid must be positive");
    require(beta_grid.back() / beta_grid.front() >= 1e3 * (1.0 - 1e-12), ErrorCode::Validation,
            "beta grid must span at least 3 decades");
    const double ratio = beta_grid[1] / beta_grid[0];
    for (std::size_t i = 1; i < beta_grid.size(); ++i) {
        require(std::abs(beta_grid[i] / beta_grid[i - 1] / ratio - 1.0) <= 1e-6, ErrorCode::Validation,
                "beta grid must be log-spaced");
    }

    std::vector<AttentionParams> runs(beta_grid.size(), params_base);
    for (std::size_t i = 0; i < beta_grid.size(); ++i) runs[i].beta = beta_grid[i];
    const auto sols = kernels::joint_sweep(dist, runs, config, kernels::Exec::Parallel);

    BetaProfitCurve curve;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        curve.points.push_back({beta_grid[i], sols[i].outcome.profit, sols[i].contract.T, sols[i].contract.P,
                                sols[i].flags.to_string()});
        if (sols[i].outcome.profit > curve.points[curve.argmax].profit) curve.argmax = i;
    }
    const double best = curve.points[curve.argmax].profit;
    curve.interior_max = best > curve.points.front().profit + config.opt_tol &&
                         best > curve.points.back().profit + config.opt_tol;
    return curve;
}

OptimalContract mandatory_reminder_limit(const ValuationDistribution& dist, const SolverConfig& config) {
    config.validate();
    const auto& w = config.price_window;
    auto standard = [&](double p) { return p * dist.survivor(p); };
    const auto best = numeric::grid_golden_max(standard, w.p_lo, w.p_hi, config.bracket_grid + 1, 1e-12);

    OptimalContract oc;
    oc.contract = Contract{0.0, best.x, 0.0};
    oc.outcome.lambda_eff = std::numeric_limits<double>::infinity();
    oc.outcome.q_star = 1.0;
    oc.outcome.standard_revenue = best.value;
    oc.outcome.inattentive_revenue = 0.0;
    oc.outcome.profit = best.value;
    oc.outcome.utility = happy_surplus(dist, best.x);
    oc.outcome.ir_slack = 0.0;
    const double F = dist.cdf(best.x);
    oc.price_foc_residual = 1.0 - F - best.x * dist.pdf(best.x);
    oc.trial_foc_residual = 0.0;
    oc.flags.t_at_zero = true;
    oc.flags.p_at_window_edge = best.x == w.p_lo || best.x == w.p_hi;
    oc.participation_satisfied = oc.outcome.utility >= 0.0;
    return oc;
}

} // namespace trialopt
