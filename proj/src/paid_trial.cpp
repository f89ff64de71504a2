#include "trialopt/paid_trial.hpp"

#include "trialopt/error.hpp"
#include "trialopt/kernels.hpp"
#include "trialopt/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace trialopt {

void SignupModel::validate() const {
    require(alpha > 0.0 && std::isfinite(alpha), ErrorCode::Validation, "signup alpha must be > 0");
    require(theta > 0.0 && std::isfinite(theta), ErrorCode::Validation, "signup theta must be > 0");
    require(cap > 0.0 && cap <= 1.0, ErrorCode::Validation, "signup cap must be in (0,1]");
}

bool signup_capped(const SignupModel& model, double P0) {
    require(P0 >= 0.0, ErrorCode::Domain, "introductory price must be >= 0");
    return P0 == 0.0 || model.alpha * std::pow(P0, -model.theta) >= model.cap;
}

double signup_rate(const SignupModel& model, double P0) {
    if (signup_capped(model, P0)) return model.cap;
    return model.alpha * std::pow(P0, -model.theta);
}

double signup_slope(const SignupModel& model, double P0) {
    if (signup_capped(model, P0)) return 0.0;
    return -model.theta * model.alpha * std::pow(P0, -model.theta - 1.0);
}

double p_aug(const ValuationDistribution& dist, const AttentionParams& params, double T, double P) {
    const Contract c{T, P, 0.0};
    return P * (1.0 - dist.cdf(P)) + inattentive_revenue(dist, params, c);
}

double intro_price_foc(const SignupModel& model, double P0, double p_aug_value) {
    require(!signup_capped(model, P0), ErrorCode::CappedBranch, "sign-up rate saturated at P0=" + std::to_string(P0));
    return signup_slope(model, P0) * (P0 + p_aug_value) + signup_rate(model, P0);
}

IntroPrice optimal_intro_price(const SignupModel& model, double p_aug_value) {
    require(p_aug_value >= 0.0, ErrorCode::Domain, "p_aug must be >= 0");
    if (model.theta >= 1.0) return {0.0, true};
    return {model.theta / (1.0 - model.theta) * p_aug_value, false};
}

std::string to_string(PaidCorner corner) {
    switch (corner) {
    case PaidCorner::Interior: return "interior";
    case PaidCorner::P0Zero: return "p0_zero";
    case PaidCorner::TZero: return "t_zero";
    }
    return "interior";
}

PaidTrialOptimum profit_paid(const ValuationDistribution& dist, const AttentionParams& params,
                             const SignupModel& model, const Contract& contract) {
    contract.validate();
    PaidTrialOptimum out;
    out.contract = contract;
    out.p_aug = p_aug(dist, params, contract.T, contract.P);
    out.signup_rate = signup_rate(model, contract.P0);
    out.profit = out.signup_rate * (contract.P0 + out.p_aug);
    if (contract.P0 == 0.0 && model.theta >= 1.0) out.corner = PaidCorner::P0Zero;
    else if (contract.T == 0.0) out.corner = PaidCorner::TZero;
    return out;
}

CrossPartial cross_partial_check(const ValuationDistribution& dist, const AttentionParams& params,
                                 const SignupModel& model, const Contract& contract, double step) {
    contract.validate();
    CrossPartial r;
    r.capped = signup_capped(model, contract.P0);
    if (r.capped || params.beta == 0.0) return r;
    r.closed_form = signup_slope(model, contract.P0) * inattentive_revenue_slope(dist, params, contract);

    // the mixed stencil must stay on the uncapped branch and at T >= 0
    const double h = step;
    if (contract.P0 - h <= 0.0 || signup_capped(model, contract.P0 - h)) return r;
    const double t_mid = std::max(contract.T, h);
    auto pi = [&](double T, double P0) {
        return profit_paid(dist, params, model, Contract{T, contract.P, P0}).profit;
    };
    r.finite_difference = (pi(t_mid + h, contract.P0 + h) - pi(t_mid + h, contract.P0 - h) -
                           pi(t_mid - h, contract.P0 + h) + pi(t_mid - h, contract.P0 - h)) /
                          (4.0 * h * h);
    if (t_mid != contract.T) {
        // stencil was shifted off T = 0, compare at the shifted point
        r.closed_form = signup_slope(model, contract.P0) *
                        inattentive_revenue_slope(dist, params, Contract{t_mid, contract.P, contract.P0});
    }
    return r;
}

PaidTrialOptimum joint_paid_optimum(const ValuationDistribution& dist, const AttentionParams& params,
                                    const SignupModel& model, const SolverConfig& config) {
    config.validate();
    params.validate();
    model.validate();

    std::array<double, 3> cur{0.0, best_response_price(dist, params, 0.0, config).price, 0.0};  // T, P, P0
    std::array<double, 3> prev = cur;
    std::array<double, 3> prev2 = cur;
    int it = 0;
    bool converged = false;
    for (; it < config.max_iter; ++it) {
        prev2 = prev;
        prev = cur;
        double T = cur[0];
        const double P = best_response_price(dist, params, T, config).price;
        if (params.beta == 0.0) {
            T = 0.0;
        } else {
            try {
                T = solve_trial(dist, params, P, config).T;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::TMaxReached) throw;
                T = config.t_max;
            }
        }
        const double P0 = optimal_intro_price(model, p_aug(dist, params, T, P)).P0;
        cur = {T, P, P0};

        double step = 0.0;
        for (int k = 0; k < 3; ++k) step = std::max(step, std::abs(cur[k] - prev[k]));
        if (step <= kPaidJointTol && it > 0) {
            converged = true;
            break;
        }
        double back2 = 0.0;
        for (int k = 0; k < 3; ++k) back2 = std::max(back2, std::abs(cur[k] - prev2[k]));
        if (it > 2 && back2 <= kPaidJointTol) break;  // two-cycle
    }
    if (!converged) {
        std::ostringstream os;
        os.precision(12);
        os << "coordinate descent did not settle; last iterates (T,P,P0) = (" << prev[0] << "," << prev[1] << ","
           << prev[2] << ") and (" << cur[0] << "," << cur[1] << "," << cur[2] << ")";
        fail(ErrorCode::CycleDetected, os.str());
    }

    auto out = profit_paid(dist, params, model, Contract{cur[0], cur[1], cur[2]});
    out.iterations = it + 1;
    if (model.theta >= 1.0) out.corner = PaidCorner::P0Zero;
    else if (cur[0] == 0.0) out.corner = PaidCorner::TZero;
    else out.corner = PaidCorner::Interior;
    out.price_foc_residual = price_foc(dist, params, cur[0], cur[1]);
    out.trial_foc_residual = trial_foc(dist, params, cur[1], cur[0]);
    return out;
}

PaidTrialOptimum optimum_at_intro_price(const ValuationDistribution& dist, const AttentionParams& params,
                                        const SignupModel& model, double P0, const SolverConfig& config) {
    model.validate();
    const auto oc = joint_optimum(dist, params, config);
    auto out = profit_paid(dist, params, model, Contract{oc.contract.T, oc.contract.P, P0});
    const double eta = signup_rate(model, P0);
    out.price_foc_residual = eta * oc.price_foc_residual;
    out.trial_foc_residual = eta * oc.trial_foc_residual;
    return out;
}

PaidGridResult paid_grid_search(const ValuationDistribution& dist, const AttentionParams& params,
                                const SignupModel& model, const SolverConfig& config, std::size_t n, double p0_max) {
    require(n >= 2, ErrorCode::Domain, "grid needs at least 2 points per axis");
    const auto Ts = numeric::linspace(0.0, config.t_max, n);
    const auto Ps = numeric::linspace(config.price_window.p_lo, config.price_window.p_hi, n);
    const auto P0s = numeric::linspace(0.0, p0_max, n);
    const auto surface = kernels::profit_surface(dist, params, Ts, Ps, kernels::Exec::Parallel);

    PaidGridResult best;
    best.profit = -1.0;
    for (double P0 : P0s) {
        const double eta = signup_rate(model, P0);
        for (std::size_t i = 0; i < Ts.size(); ++i) {
            for (std::size_t j = 0; j < Ps.size(); ++j) {
                const double v = eta * (P0 + surface[i * Ps.size() + j]);
                if (v > best.profit) {
                    best.profit = v;
                    best.best = Contract{Ts[i], Ps[j], P0};
                }
            }
        }
    }
    return best;
}

} // namespace trialopt
