#include "trialopt/solver.hpp"

#include "trialopt/error.hpp"
#include "trialopt/kernels.hpp"
#include "trialopt/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trialopt {

std::string to_string(ParticipationMode mode) {
    switch (mode) {
    case ParticipationMode::Interior: return "interior";
    case ParticipationMode::BindingIr: return "binding_ir";
    case ParticipationMode::ReportOnly: return "report_only";
    }
    return "report_only";
}

ParticipationMode participation_mode_from_string(const std::string& s) {
    if (s == "interior") return ParticipationMode::Interior;
    if (s == "binding_ir") return ParticipationMode::BindingIr;
    if (s == "report_only") return ParticipationMode::ReportOnly;
    fail(ErrorCode::Validation, "unknown participation mode '" + s + "'");
}

void SolverConfig::validate() const {
    price_window.validate();
    require(t_max > 0.0 && std::isfinite(t_max), ErrorCode::Validation, "t_max must be positive");
    require(bracket_grid >= 2, ErrorCode::Validation, "bracket_grid must be >= 2");
    require(root_tol > 0.0 && opt_tol > 0.0, ErrorCode::Validation, "tolerances must be positive");
    require(max_iter > 0, ErrorCode::Validation, "max_iter must be positive");
}

std::string BoundaryFlags::to_string() const {
    std::string s;
    auto add = [&](const char* name) {
        if (!s.empty()) s += '|';
        s += name;
    };
    if (t_at_zero) add("T_at_zero");
    if (t_at_max) add("T_at_max");
    if (p_at_window_edge) add("P_at_window_edge");
    return s.empty() ? "none" : s;
}

double price_foc(const ValuationDistribution& dist, const AttentionParams& params, double T, double P) {
    const double F = dist.cdf(P);
    const double f = dist.pdf(P);
    const double lam = effective_lambda(params, T);
    const double x = lam * P;
    const double q = logistic(x);
    const double qc = logistic_complement(x);
    const double standard = 1.0 - F - P * f;
    const double inattentive = qc * (F + P * f) - P * F * lam * q * qc;
    return standard + inattentive;
}

namespace {

double profit_at(const ValuationDistribution& dist, const AttentionParams& params, double T, double P) {
    const double F = dist.cdf(P);
    return P * (1.0 - F) + P * F * logistic_complement(effective_lambda(params, T) * P);
}

struct RootScan {
    std::vector<double> roots;
    std::vector<bool> downcrossing;  // foc goes from + to - across the root
};

RootScan scan_price_roots(const ValuationDistribution& dist, const AttentionParams& params, double T,
                          const SolverConfig& config) {
    const auto& w = config.price_window;
    auto foc = [&](double p) { return price_foc(dist, params, T, p); };
    RootScan scan;
    for (const auto& b : numeric::scan_sign_changes(foc, w.p_lo, w.p_hi, config.bracket_grid)) {
        scan.roots.push_back(numeric::bisect(foc, b, config.root_tol));
        scan.downcrossing.push_back(b.lo != b.hi && b.f_lo > 0.0);
    }
    return scan;
}

// Highest profit among candidates; ties go to the smallest price.
double argmax_profit(const ValuationDistribution& dist, const AttentionParams& params, double T,
                     std::vector<double> candidates) {
    std::sort(candidates.begin(), candidates.end());
    double best_p = candidates.front();
    double best_v = profit_at(dist, params, T, best_p);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double v = profit_at(dist, params, T, candidates[i]);
        if (v > best_v) {
            best_v = v;
            best_p = candidates[i];
        }
    }
    return best_p;
}

} // namespace

PriceSolution solve_price(const ValuationDistribution& dist, const AttentionParams& params, double T,
                          const SolverConfig& config) {
    const auto scan = scan_price_roots(dist, params, T, config);
    if (scan.roots.empty()) fail(ErrorCode::NoRoot, "price FOC keeps its sign on the window at T=" + std::to_string(T));
    PriceSolution sol;
    sol.roots = scan.roots;
    sol.sign_changes = scan.roots.size();
    sol.price = argmax_profit(dist, params, T, scan.roots);
    try {
        sol.ifr_verified = check_ifr(dist, config.price_window, 64).increasing;
    } catch (const Error&) {
        sol.ifr_verified = false;
    }
    return sol;
}

BestResponse best_response_price(const ValuationDistribution& dist, const AttentionParams& params, double T,
                                 const SolverConfig& config) {
    const auto& w = config.price_window;
    const auto scan = scan_price_roots(dist, params, T, config);
    BestResponse br;
    br.sign_changes = scan.roots.size();
    if (scan.roots.size() == 1 && scan.downcrossing.front()) {
        br.price = scan.roots.front();
        br.from_root = true;
        return br;
    }
    auto candidates = scan.roots;
    candidates.push_back(w.p_lo);
    candidates.push_back(w.p_hi);
    br.price = argmax_profit(dist, params, T, candidates);
    br.at_window_edge = br.price == w.p_lo || br.price == w.p_hi;
    br.from_root = !br.at_window_edge;
    return br;
}

double trial_foc(const ValuationDistribution& dist, const AttentionParams& params, double P, double T) {
    const Contract c{T, P, 0.0};
    return P * inattentive_revenue_slope(dist, params, c) - ir_slack(dist, params, c);
}

TrialSolution solve_trial(const ValuationDistribution& dist, const AttentionParams& params, double P,
                          const SolverConfig& config) {
    TrialSolution sol;
    if (params.beta == 0.0) {
        sol.t_at_zero = true;
        sol.beta_zero = true;
        return sol;
    }
    auto g = [&](double T) { return trial_foc(dist, params, P, T); };

    const auto probe = numeric::linspace(0.0, config.t_max, 65);
    double prev = g(probe[0]);
    for (std::size_t i = 1; i < probe.size(); ++i) {
        const double cur = g(probe[i]);
        if (cur > prev + 1e-15 * std::max(1.0, std::abs(prev))) sol.foc_decreasing = false;
        prev = cur;
    }

    const double g0 = g(0.0);
    if (g0 <= 0.0) {
        sol.t_at_zero = true;
        sol.residual = g0;
        return sol;
    }
    const auto brackets = numeric::scan_sign_changes(g, 0.0, config.t_max, config.bracket_grid);
    if (brackets.empty()) fail(ErrorCode::TMaxReached, "trial FOC still positive at t_max");
    sol.T = numeric::bisect(g, brackets.front(), config.root_tol);
    sol.residual = g(sol.T);
    return sol;
}

OptimalContract describe_contract(const ValuationDistribution& dist, const AttentionParams& params, double T,
                                  double P, const SolverConfig& config) {
    OptimalContract oc;
    oc.contract = Contract{T, P, 0.0};
    oc.outcome = profit(dist, params, oc.contract);
    oc.price_foc_residual = P < 1.0 ? price_foc(dist, params, T, P) : 0.0;
    oc.trial_foc_residual = trial_foc(dist, params, P, T);
    oc.flags.t_at_zero = T == 0.0;
    oc.flags.t_at_max = T >= config.t_max;
    oc.flags.p_at_window_edge = P == config.price_window.p_lo || P == config.price_window.p_hi;
    oc.participation_satisfied = oc.outcome.utility >= -config.root_tol;
    oc.beta_zero = params.beta == 0.0;
    return oc;
}

namespace {

struct FeasiblePrice {
    double P = 0.0;
    double value = -std::numeric_limits<double>::infinity();
    bool found = false;
};

// max profit over prices in the window with U(T,P) >= 0
FeasiblePrice best_feasible_price(const ValuationDistribution& dist, const AttentionParams& params, double T,
                                  const SolverConfig& config) {
    const auto& w = config.price_window;
    auto utility = [&](double p) { return consumer_utility(dist, params, Contract{T, p, 0.0}); };
    std::vector<double> candidates;
    const auto grid = numeric::linspace(w.p_lo, w.p_hi, config.bracket_grid + 1);
    for (double p : grid)
        if (utility(p) >= 0.0) candidates.push_back(p);
    for (const auto& b : numeric::scan_sign_changes(utility, w.p_lo, w.p_hi, config.bracket_grid)) {
        const double r = numeric::bisect(utility, b, config.root_tol);
        // stay on the feasible side of the root
        double p = r;
        for (int k = 0; k < 8 && utility(p) < 0.0; ++k) p = b.f_lo >= 0.0 ? std::nextafter(p, b.lo) : std::nextafter(p, b.hi);
        if (utility(p) >= 0.0) candidates.push_back(p);
    }
    const auto br = best_response_price(dist, params, T, config);
    if (utility(br.price) >= 0.0) candidates.push_back(br.price);

    FeasiblePrice best;
    std::sort(candidates.begin(), candidates.end());
    for (double p : candidates) {
        const double v = profit_at(dist, params, T, p);
        if (v > best.value) {
            best = {p, v, true};
        }
    }
    return best;
}

OptimalContract binding_ir_optimum(const ValuationDistribution& dist, const AttentionParams& params,
                                   const SolverConfig& config) {
    const auto Ts = numeric::linspace(0.0, params.beta == 0.0 ? 0.0 : config.t_max,
                                      params.beta == 0.0 ? 1 : config.bracket_grid + 1);
    std::vector<FeasiblePrice> rows(Ts.size());
    kernels::for_each_index(
        Ts.size(), [&](std::size_t i) { rows[i] = best_feasible_price(dist, params, Ts[i], config); },
        kernels::Exec::Parallel);

    std::size_t arg = Ts.size();
    for (std::size_t i = 0; i < Ts.size(); ++i)
        if (rows[i].found && (arg == Ts.size() || rows[i].value > rows[arg].value)) arg = i;
    if (arg == Ts.size()) fail(ErrorCode::Infeasible, "no contract in the window satisfies U >= 0");

    double T_best = Ts[arg];
    FeasiblePrice p_best = rows[arg];
    if (Ts.size() > 1) {
        const double a = Ts[arg == 0 ? 0 : arg - 1];
        const double b = Ts[std::min(arg + 1, Ts.size() - 1)];
        auto value = [&](double T) {
            const auto fp = best_feasible_price(dist, params, T, config);
            return fp.found ? fp.value : -std::numeric_limits<double>::infinity();
        };
        const auto refined = numeric::golden_max(value, a, b, 1e-6);
        if (refined.value > p_best.value) {
            T_best = refined.x;
            p_best = best_feasible_price(dist, params, T_best, config);
        }
    }
    auto oc = describe_contract(dist, params, T_best, p_best.P, config);
    return oc;
}

} // namespace

OptimalContract joint_optimum(const ValuationDistribution& dist, const AttentionParams& params,
                              const SolverConfig& config) {
    config.validate();
    params.validate();
    if (config.participation_mode == ParticipationMode::BindingIr) return binding_ir_optimum(dist, params, config);

    auto best_price = [&](double T) { return best_response_price(dist, params, T, config).price; };
    if (params.beta == 0.0) return describe_contract(dist, params, 0.0, best_price(0.0), config);

    auto h = [&](double T) { return trial_foc(dist, params, best_price(T), T); };
    const double h0 = h(0.0);
    double T_star = 0.0;
    if (h0 > 0.0) {
        const auto Ts = numeric::linspace(0.0, config.t_max, config.bracket_grid + 1);
        const auto curve = kernels::best_response_curve(dist, params, Ts, config, kernels::Exec::Parallel);
        std::vector<double> hs(Ts.size());
        for (std::size_t i = 0; i < Ts.size(); ++i) hs[i] = trial_foc(dist, params, curve[i].price, Ts[i]);
        hs[0] = h0;

        std::optional<numeric::Bracket> bracket;
        for (std::size_t i = 0; i + 1 < Ts.size(); ++i) {
            if (hs[i] > 0.0 && hs[i + 1] <= 0.0) {
                bracket = numeric::Bracket{Ts[i], Ts[i + 1], hs[i], hs[i + 1]};
                break;
            }
        }
        if (!bracket) {
            T_star = config.t_max;
        } else if (bracket->f_hi == 0.0) {
            T_star = bracket->hi;
        } else {
            T_star = numeric::bisect(h, *bracket, config.root_tol, config.max_iter);
        }
    }
    return describe_contract(dist, params, T_star, best_price(T_star), config);
}

PriceResponseCurve price_response_curve(const ValuationDistribution& dist, const AttentionParams& params,
                                        const std::vector<double>& T_grid, const SolverConfig& config) {
    config.validate();
    PriceResponseCurve curve;
    try {
        curve.lambda_crit = lambda_crit(dist, config.price_window);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Unbounded) throw;
    }
    curve.hypothesis_holds =
        params.beta > 0.0 && curve.lambda_crit && params.gamma * params.lambda0 > *curve.lambda_crit;

    const auto br = kernels::best_response_curve(dist, params, T_grid, config, kernels::Exec::Parallel);
    curve.points.reserve(br.size());
    for (std::size_t i = 0; i < br.size(); ++i)
        curve.points.push_back({T_grid[i], br[i].price, br[i].from_root, br[i].at_window_edge});

    curve.strictly_increasing = !curve.points.empty();
    curve.flat = !curve.points.empty();
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        if (!(curve.points[i].P > curve.points[i - 1].P)) curve.strictly_increasing = false;
        if (curve.points[i].P != curve.points[0].P) curve.flat = false;
    }
    return curve;
}

} // namespace trialopt
