#include "trialopt/runner.hpp"

#include "trialopt/error.hpp"
#include "trialopt/kernels.hpp"
#include "trialopt/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace trialopt {

std::string to_string(Command c) {
    switch (c) {
    case Command::Solve: return "solve";
    case Command::Sweep: return "sweep";
    case Command::Policy: return "policy";
    case Command::Paid: return "paid";
    case Command::Hetero: return "hetero";
    case Command::Verify: return "verify";
    }
    return "solve";
}

Command command_from_string(const std::string& s) {
    for (auto c : {Command::Solve, Command::Sweep, Command::Policy, Command::Paid, Command::Hetero, Command::Verify})
        if (to_string(c) == s) return c;
    fail(ErrorCode::Validation, "unknown command '" + s + "'");
}

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

using trialopt::fmt;

std::string fmt_bool(bool b) { return b ? "true" : "false"; }
std::string fmt_opt(const std::optional<double>& x) { return x ? fmt(*x) : "NA"; }
std::string fmt_opt(const std::optional<bool>& x) { return x ? fmt_bool(*x) : "NA"; }

struct Column {
    const char* name;
    const char* doc;
};

class Table {
public:
    Table(std::string command, std::vector<Column> cols) : command_(std::move(command)), cols_(std::move(cols)) {}

    void add(std::vector<std::string> row) {
        require(row.size() == cols_.size(), ErrorCode::Inconsistent, "row width does not match the header");
        rows_.push_back(std::move(row));
    }

    std::string str() const {
        std::ostringstream os;
        os << "# trialopt " << command_ << ":";
        for (const auto& c : cols_) os << ' ' << c.name << '=' << c.doc << ';';
        os << '\n';
        for (std::size_t i = 0; i < cols_.size(); ++i) os << (i ? "," : "") << cols_[i].name;
        os << '\n';
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << '\n';
        }
        return os.str();
    }

private:
    std::string command_;
    std::vector<Column> cols_;
    std::vector<std::vector<std::string>> rows_;
};

const std::vector<Column> kOutcomeColumns{
    {"T", "trial length"},
    {"P", "renewal price"},
    {"profit", "standard plus inattentive revenue"},
    {"standard_revenue", "P(1-F(P))"},
    {"inattentive_revenue", "P F(P)(1-q*)"},
    {"utility", "ex-ante consumer utility"},
    {"ir_slack", "marginal utility loss per unit T at fixed q"},
    {"q_star", "cancellation probability of low-value subscribers"},
    {"lambda_eff", "effective attention sensitivity at T"},
};

std::vector<std::string> outcome_cells(const Contract& c, const MarketOutcome& o) {
    return {fmt(c.T),         fmt(c.P),        fmt(o.profit),   fmt(o.standard_revenue), fmt(o.inattentive_revenue),
            fmt(o.utility),   fmt(o.ir_slack), fmt(o.q_star),   fmt(o.lambda_eff)};
}

std::vector<Column> join(std::vector<Column> a, const std::vector<Column>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<std::string> join(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

SolverConfig config_for(const Scenario& s, const RunOptions& opt) {
    SolverConfig c = s.solver;
    if (opt.mode) c.participation_mode = *opt.mode;
    return c;
}

OptimalContract maybe_round(const ValuationDistribution& dist, const AttentionParams& params, OptimalContract oc,
                            const SolverConfig& config, const RunOptions& opt) {
    if (!opt.round_T) return oc;
    const double T = std::min(std::round(oc.contract.T), std::floor(config.t_max));
    if (T == oc.contract.T) return oc;
    const double P = best_response_price(dist, params, T, config).price;
    return describe_contract(dist, params, T, P, config);
}

// --- commands -------------------------------------------------------------

std::string cmd_solve(const Scenario& s, const RunOptions& opt) {
    const auto dist = s.dist();
    const auto config = config_for(s, opt);
    const auto oc = maybe_round(dist, s.attention, joint_optimum(dist, s.attention, config), config, opt);
    Table t("solve", join(join({{"scenario", "scenario name"}, {"mode", "participation mode"}}, kOutcomeColumns),
                          {{"price_foc_residual", "dProfit/dP at the contract"},
                           {"trial_foc_residual", "P dIR/dT minus IR slack"},
                           {"participation_satisfied", "U >= 0"},
                           {"flags", "boundary flags"}}));
    t.add(join(join({s.name, to_string(config.participation_mode)}, outcome_cells(oc.contract, oc.outcome)),
               {fmt(oc.price_foc_residual), fmt(oc.trial_foc_residual), fmt_bool(oc.participation_satisfied),
                oc.flags.to_string()}));
    return t.str();
}

std::string cmd_sweep(const Scenario& s, const RunOptions& opt) {
    require(s.sweep.has_value(), ErrorCode::Validation, "sweep needs a 'sweep' block in the scenario");
    const auto dist = s.dist();
    const auto config = config_for(s, opt);
    const auto& sw = *s.sweep;
    const auto n = sw.grid.size();

    Table t("sweep", join(join({{"scenario", "scenario name"},
                                {"parameter", "swept parameter"},
                                {"value", "parameter value"}},
                               kOutcomeColumns),
                          {{"flags", "boundary flags, fixed_contract for T/P sweeps"}}));
    std::vector<std::vector<std::string>> rows(n);

    if (sw.parameter == "T" || sw.parameter == "P") {
        const Contract base = s.contract.value_or(Contract{0.0, 0.5, 0.0});
        kernels::for_each_index(
            n,
            [&](std::size_t i) {
                Contract c = base;
                (sw.parameter == "T" ? c.T : c.P) = sw.grid[i];
                const auto o = profit(dist, s.attention, c);
                rows[i] = join(join({s.name, sw.parameter, fmt(sw.grid[i])}, outcome_cells(c, o)), {"fixed_contract"});
            },
            kernels::Exec::Parallel);
    } else {
        std::vector<AttentionParams> params(n, s.attention);
        for (std::size_t i = 0; i < n; ++i) {
            auto& p = params[i];
            (sw.parameter == "beta" ? p.beta : sw.parameter == "lambda0" ? p.lambda0 : p.gamma) = sw.grid[i];
            p.validate();
        }
        const auto sols = kernels::joint_sweep(dist, params, config, kernels::Exec::Parallel);
        for (std::size_t i = 0; i < n; ++i) {
            const auto oc = maybe_round(dist, params[i], sols[i], config, opt);
            rows[i] = join(join({s.name, sw.parameter, fmt(sw.grid[i])}, outcome_cells(oc.contract, oc.outcome)),
                           {oc.flags.to_string()});
        }
    }
    for (auto& r : rows) t.add(std::move(r));
    return t.str();
}

std::string cmd_policy(const Scenario& s, const RunOptions& opt) {
    require(s.shock.has_value(), ErrorCode::Validation, "policy needs a 'shock' block in the scenario");
    const auto dist = s.dist();
    const auto r = click_to_cancel_statics(dist, s.attention, *s.shock, config_for(s, opt));
    Table t("policy", {{"scenario", "scenario name"},
                       {"label", "shock label"},
                       {"gamma", "shock multiplier"},
                       {"T_base", "baseline T*"},
                       {"P_base", "baseline P*"},
                       {"profit_base", "baseline profit"},
                       {"utility_base", "baseline utility"},
                       {"T_shock", "shocked T*"},
                       {"P_shock", "shocked P*"},
                       {"profit_shock", "shocked profit"},
                       {"utility_shock", "shocked utility"},
                       {"delta_T", "T_shock - T_base"},
                       {"delta_P", "P_shock - P_base"},
                       {"dT_dgamma", "forward slope at the shocked gamma"},
                       {"dP_dgamma", "forward slope at the shocked gamma"},
                       {"epsilon", "tail elasticity or NA"},
                       {"sign_rule_holds", "sign(dP/dgamma) == sign(1-eps) or NA"},
                       {"trial_falls", "dT/dgamma < 0 or NA for corner baselines"},
                       {"flags_base", "baseline boundary flags"},
                       {"flags_shock", "shocked boundary flags"}});
    t.add({s.name, s.shock->label, fmt(s.shock->gamma), fmt(r.baseline.contract.T), fmt(r.baseline.contract.P),
           fmt(r.baseline.outcome.profit), fmt(r.baseline.outcome.utility), fmt(r.shocked.contract.T),
           fmt(r.shocked.contract.P), fmt(r.shocked.outcome.profit), fmt(r.shocked.outcome.utility), fmt(r.delta_T),
           fmt(r.delta_P), fmt(r.dT_dGamma), fmt(r.dP_dGamma), fmt_opt(r.epsilon_used), fmt_opt(r.sign_rule_holds),
           fmt_opt(r.trial_falls), r.baseline.flags.to_string(), r.shocked.flags.to_string()});
    return t.str();
}

constexpr std::size_t kPaidGridN = 64;

std::string cmd_paid(const Scenario& s, const RunOptions& opt) {
    require(s.signup.has_value(), ErrorCode::Validation, "paid needs a 'signup' block in the scenario");
    const auto dist = s.dist();
    const auto config = config_for(s, opt);
    const auto r = joint_paid_optimum(dist, s.attention, *s.signup, config);
    const auto cross = cross_partial_check(dist, s.attention, *s.signup, r.contract);
    const double p0_max = std::max(1.0, 2.0 * r.contract.P0);
    const auto grid = paid_grid_search(dist, s.attention, *s.signup, config, kPaidGridN, p0_max);
    Table t("paid", {{"scenario", "scenario name"},
                     {"T", "trial length"},
                     {"P", "renewal price"},
                     {"P0", "introductory price"},
                     {"p_aug", "post-trial profit per subscriber"},
                     {"signup_rate", "eta(P0)"},
                     {"profit", "eta(P0)(P0 + p_aug)"},
                     {"corner", "interior, p0_zero or t_zero"},
                     {"iterations", "coordinate-descent passes"},
                     {"price_foc_residual", "renewal-price FOC at the fixed point"},
                     {"trial_foc_residual", "trial FOC at the fixed point"},
                     {"cross_partial", "eta'(P0) dP_aug/dT"},
                     {"cross_partial_fd", "mixed finite difference or NA"},
                     {"grid_profit", "best profit on the 64^3 grid"},
                     {"grid_gap", "profit - grid_profit"}});
    t.add({s.name, fmt(r.contract.T), fmt(r.contract.P), fmt(r.contract.P0), fmt(r.p_aug), fmt(r.signup_rate),
           fmt(r.profit), to_string(r.corner), std::to_string(r.iterations), fmt(r.price_foc_residual),
           fmt(r.trial_foc_residual), fmt(cross.closed_form), fmt_opt(cross.finite_difference), fmt(grid.profit),
           fmt(r.profit - grid.profit)});
    return t.str();
}

Contract hetero_contract(const Scenario& s, const RunOptions& opt) {
    if (s.contract) return *s.contract;
    return joint_optimum(s.dist(), s.attention, config_for(s, opt)).contract;
}

std::string cmd_hetero(const Scenario& s, const RunOptions& opt) {
    require(s.mixture.has_value(), ErrorCode::Validation, "hetero needs a 'mixture' block in the scenario");
    const auto dist = s.dist();
    const auto c = hetero_contract(s, opt);
    const auto& mix = *s.mixture;
    const double mean_z = mix.mean_z();
    const AttentionMixture point{{{1.0 / mean_z, 1.0}}};
    const double loss_mix = aggregate_loss(dist, mix, c, s.attention.beta);
    const double loss_point = aggregate_loss(dist, point, c, s.attention.beta);

    Table t("hetero", {{"scenario", "scenario name"},
                       {"T", "trial length"},
                       {"P", "renewal price"},
                       {"atoms", "number of mixture atoms"},
                       {"mean_z", "weighted mean of 1/lambda"},
                       {"loss_mixture", "aggregate inattentive loss"},
                       {"loss_point_mass", "loss with all mass at mean_z"},
                       {"spread_excess", "loss_mixture - loss_point_mass"},
                       {"psi_curvature_at_mean", "second derivative of the failure probability in z"},
                       {"z_inflection", "z where that curvature changes sign"}});
    const double z_eff = mean_z * (1.0 + s.attention.beta * c.T);
    t.add({s.name, fmt(c.T), fmt(c.P), std::to_string(mix.atoms.size()), fmt(mean_z), fmt(loss_mix),
           fmt(loss_point), fmt(loss_mix - loss_point), fmt(psi_curvature(c.P, z_eff)), fmt(psi_inflection(c.P))});
    return t.str();
}

// --- verify ---------------------------------------------------------------

class Checks {
public:
    void expect(const std::string& name, double value, double tol, bool ok) {
        rows_.push_back({name, fmt(value), fmt(tol), ok ? "PASS" : "FAIL"});
        all_ok_ = all_ok_ && ok;
    }
    // claims that do not hold in general, kept for the record
    void info(const std::string& name, double value) { rows_.push_back({name, fmt(value), "NA", "INFO"}); }

    bool ok() const { return all_ok_; }
    std::string str(const std::string& scenario) const {
        Table t("verify", {{"scenario", "scenario name"},
                           {"check", "invariant"},
                           {"value", "measured quantity"},
                           {"tolerance", "allowed bound"},
                           {"status", "PASS, FAIL or INFO (reported only)"}});
        for (const auto& r : rows_) t.add({scenario, r[0], r[1], r[2], r[3]});
        return t.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
    bool all_ok_ = true;
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void verify_model(const Scenario& s, const SolverConfig& config, Checks& ck) {
    const auto dist = s.dist();
    const auto& params = s.attention;

    // distribution
    double cdf_drop = 0.0, sum_err = 0.0;
    const auto vs = numeric::linspace(0.0, 1.0, 1001);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) cdf_drop = std::max(cdf_drop, dist.cdf(vs[i - 1]) - dist.cdf(vs[i]));
        sum_err = std::max(sum_err, std::abs(dist.cdf(vs[i]) + dist.survivor(vs[i]) - 1.0));
    }
    ck.expect("cdf_nondecreasing", cdf_drop, 0.0, cdf_drop <= 0.0);
    ck.expect("cdf_plus_survivor", sum_err, 1e-12, sum_err <= 1e-12);

    const auto oc = joint_optimum(dist, params, config);
    const double T = oc.contract.T, P = oc.contract.P;
    const double lam = effective_lambda(params, T);

    // consumer
    double ident = 0.0, min_gap = 0.0;
    for (double p : numeric::linspace(config.price_window.p_lo, config.price_window.p_hi, 21)) {
        const auto m = optimal_q(p, lam);
        ident = std::max(ident, std::abs(m.objective_value - m.expected_loss - m.entropy_cost));
        for (double dq : {-1e-4, 1e-4}) {
            const double q = std::clamp(m.q_star + dq, 1e-15, 1.0 - 1e-15);
            min_gap = std::min(min_gap, monitoring_objective(q, p, lam) - m.objective_value);
        }
    }
    ck.expect("objective_identity", ident, 1e-12, ident <= 1e-12);
    ck.expect("q_star_is_minimizer", min_gap, 1e-14, min_gap >= -1e-14);

    // market
    const auto o = profit(dist, params, oc.contract);
    const double decomp = std::abs(o.profit - o.standard_revenue - o.inattentive_revenue);
    ck.expect("profit_decomposition", decomp, 1e-12, decomp <= 1e-12);

    if (params.beta > 0.0 && dist.cdf(P) > 0.0) {
        const double Tm = std::max(T, 1e-3);
        const double h = 1e-4 * std::max(1.0, Tm);
        const auto d = q_derivatives(P, effective_lambda(params, Tm), params, Tm);
        auto q_at = [&](double t) { return optimal_q(P, effective_lambda(params, t)).q_star; };
        const double dq_fd = (q_at(Tm + h) - q_at(Tm - h)) / (2 * h);
        const double e1 = rel_err(d.dq_dT, dq_fd);
        ck.expect("dq_dT_vs_fd", e1, 1e-5, e1 <= 1e-5);

        const double q_fixed = q_at(Tm);
        auto u_at = [&](double t) { return consumer_utility_at_q(dist, params, Contract{t, P, 0.0}, q_fixed); };
        const double slack_fd = -(u_at(Tm + h) - u_at(Tm - h)) / (2 * h);
        const double e2 = rel_err(ir_slack(dist, params, Contract{Tm, P, 0.0}), slack_fd);
        ck.expect("ir_slack_vs_fd_at_fixed_q", e2, 1e-5, e2 <= 1e-5);

        double min_step = std::numeric_limits<double>::infinity();
        const auto Ts = numeric::linspace(0.0, config.t_max, 65);
        for (std::size_t i = 1; i < Ts.size(); ++i)
            min_step = std::min(min_step, inattentive_revenue(dist, params, Contract{Ts[i], P, 0.0}) -
                                              inattentive_revenue(dist, params, Contract{Ts[i - 1], P, 0.0}));
        ck.expect("ir_increasing_in_T", min_step, 0.0, min_step > 0.0);
    }

    // solver
    if (config.participation_mode != ParticipationMode::BindingIr) {
        if (!oc.flags.p_at_window_edge)
            ck.expect("price_foc_residual", std::abs(oc.price_foc_residual), 1e-8,
                      std::abs(oc.price_foc_residual) <= 1e-8);
        if (!oc.flags.t_at_zero && !oc.flags.t_at_max)
            ck.expect("trial_foc_residual", std::abs(oc.trial_foc_residual), 1e-8,
                      std::abs(oc.trial_foc_residual) <= 1e-8);
    } else {
        ck.expect("participation_at_optimum", oc.outcome.utility, config.root_tol, oc.participation_satisfied);
    }

    // heterogeneity
    const AttentionMixture one{{{params.gamma * params.lambda0, 1.0}}};
    const double e3 = std::abs(aggregate_loss(dist, one, oc.contract, params.beta) - o.inattentive_revenue);
    ck.expect("one_atom_matches_ir", e3, 1e-14, e3 <= 1e-14);
    if (P > 0.0) {
        const double z = 1.0 / lam;
        const double hz = 1e-4 * z;
        const double fd = (psi(P, z + hz) - 2 * psi(P, z) + psi(P, z - hz)) / (hz * hz);
        const double curv = psi_curvature(P, z);
        const double e4 = rel_err(curv, fd);
        ck.expect("psi_curvature_vs_fd", e4, 1e-3, e4 <= 1e-3);
        ck.info("psi_curvature_at_optimum", curv);
    }
    if (s.mixture) {
        const AttentionMixture point{{{1.0 / s.mixture->mean_z(), 1.0}}};
        ck.info("mixture_spread_excess", aggregate_loss(dist, *s.mixture, oc.contract, params.beta) -
                                             aggregate_loss(dist, point, oc.contract, params.beta));
    }

    // policy
    if (s.shock) {
        const auto shocked = apply_shock(params, *s.shock);
        const auto o2 = profit(dist, shocked, oc.contract);
        const bool live = o.q_star < 1.0 - 1e-9 && dist.cdf(P) > 0.0;
        if (live)
            ck.expect("shock_lowers_ir", o2.inattentive_revenue - o.inattentive_revenue, 0.0,
                      o2.inattentive_revenue < o.inattentive_revenue);
        ck.expect("shock_raises_utility", o2.utility - o.utility, 0.0, o2.utility >= o.utility);
    }

    // paid trial
    if (s.signup) {
        const auto& m = *s.signup;
        const double pa = p_aug(dist, params, T, P);
        const auto ip = optimal_intro_price(m, pa);
        if (!ip.corner && !signup_capped(m, ip.P0)) {
            const double r = std::abs(intro_price_foc(m, ip.P0, pa));
            ck.expect("intro_price_foc_at_closed_form", r, 1e-9, r <= 1e-9);
        }
        if (params.beta > 0.0 && !ip.corner && ip.P0 > 0.0) {
            const auto cp = cross_partial_check(dist, params, m, Contract{T, P, ip.P0});
            if (!cp.capped) {
                ck.expect("cross_partial_negative", cp.closed_form, 0.0, cp.closed_form < 0.0);
                if (cp.finite_difference) {
                    const double e5 = rel_err(cp.closed_form, *cp.finite_difference);
                    ck.expect("cross_partial_vs_fd", e5, 1e-3, e5 <= 1e-3);
                }
            }
        }
    }
}

} // namespace

RunOutput execute(Command command, const Scenario& scenario, const RunOptions& options) {
    scenario.validate();
    RunOutput out;
    switch (command) {
    case Command::Solve: out.csv = cmd_solve(scenario, options); break;
    case Command::Sweep: out.csv = cmd_sweep(scenario, options); break;
    case Command::Policy: out.csv = cmd_policy(scenario, options); break;
    case Command::Paid: out.csv = cmd_paid(scenario, options); break;
    case Command::Hetero: out.csv = cmd_hetero(scenario, options); break;
    case Command::Verify: {
        Checks ck;
        verify_model(scenario, config_for(scenario, options), ck);
        out.csv = ck.str(scenario.name);
        out.invariants_ok = ck.ok();
        break;
    }
    }
    return out;
}

int run(Command command, const std::string& scenario_path, const std::string& out_path, const RunOptions& options,
        std::ostream& err) {
    RunOutput out;
    try {
        const auto scenario = load_scenario(scenario_path);
        out = execute(command, scenario, options);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.is_solver_failure() ? 2 : 1;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        err << "error: cannot write " << out_path << '\n';
        return 1;
    }
    f << out.csv;
    if (!out.invariants_ok) {
        err << "invariant violation, see FAIL rows in " << out_path << '\n';
        return 3;
    }
    return 0;
}

} // namespace trialopt
