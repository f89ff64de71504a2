#include "trialopt/market.hpp"

#include "trialopt/error.hpp"
#include "trialopt/numeric.hpp"

#include <cmath>
#include <variant>

namespace trialopt {

void Contract::validate() const {
    require(P > 0.0 && P <= 1.0, ErrorCode::Validation, "renewal price must be in (0,1]");
    require(T >= 0.0 && std::isfinite(T), ErrorCode::Validation, "trial length must be >= 0");
    require(P0 >= 0.0 && std::isfinite(P0), ErrorCode::Validation, "introductory price must be >= 0");
}

double inattentive_revenue(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c) {
    const double F = dist.cdf(c.P);
    if (F == 0.0) return 0.0;
    const double lam = effective_lambda(params, c.T);
    return c.P * F * logistic_complement(lam * c.P);
}

double happy_surplus(const ValuationDistribution& dist, double P) {
    require(P >= 0.0 && P <= 1.0, ErrorCode::Domain, "surplus needs P in [0,1]");
    if (const auto* u = std::get_if<Uniform>(&dist.family())) {
        const double lo = std::max(P, u->a);
        if (lo >= u->b) return 0.0;
        // integral of (v - P)/(b - a) over [lo, b]
        return ((u->b - P) * (u->b - P) - (lo - P) * (lo - P)) / (2.0 * (u->b - u->a));
    }
    auto integrand = [&](double v) { return (v - P) * dist.pdf(v); };
    double total = 0.0;
    const auto kink = dist.kink();
    if (kink && *kink > P && *kink < 1.0) {
        total += numeric::integrate(integrand, P, *kink) + numeric::integrate(integrand, *kink, 1.0);
    } else {
        total += numeric::integrate(integrand, P, 1.0);
    }
    return total + (1.0 - P) * dist.atom_at_one();
}

double consumer_utility_at_q(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c,
                             double q) {
    const double F = dist.cdf(c.P);
    const double lam = effective_lambda(params, c.T);
    return happy_surplus(dist, c.P) - c.P * F * (1.0 - q) + entropy(q) / lam * F;
}

double consumer_utility(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c) {
    const double F = dist.cdf(c.P);
    const double lam = effective_lambda(params, c.T);
    const double x = lam * c.P;
    return happy_surplus(dist, c.P) - c.P * F * logistic_complement(x) + entropy_of_logit(x) / lam * F;
}

double ir_slack(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c) {
    if (params.beta == 0.0) return 0.0;
    const double F = dist.cdf(c.P);
    if (F == 0.0) return 0.0;
    const double lam = effective_lambda(params, c.T);
    return params.beta / (params.gamma * params.lambda0) * (-entropy_of_logit(lam * c.P)) * F;
}

double inattentive_revenue_slope(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c) {
    const double F = dist.cdf(c.P);
    const double lam = effective_lambda(params, c.T);
    const auto d = q_derivatives(c.P, lam, params, c.T);
    return c.P * F * (-d.dq_dT);
}

MarketOutcome profit(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c) {
    c.validate();
    MarketOutcome out;
    out.lambda_eff = effective_lambda(params, c.T);
    out.q_star = logistic(out.lambda_eff * c.P);
    out.standard_revenue = c.P * (1.0 - dist.cdf(c.P));
    out.inattentive_revenue = inattentive_revenue(dist, params, c);
    out.profit = out.standard_revenue + out.inattentive_revenue;
    out.utility = consumer_utility(dist, params, c);
    out.ir_slack = ir_slack(dist, params, c);
    return out;
}

} // namespace trialopt
