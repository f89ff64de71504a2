#include "trialopt/attention.hpp"

#include "trialopt/error.hpp"

#include <cmath>
#include <string>

namespace trialopt {

void AttentionParams::validate() const {
    require(lambda0 > 0.0 && std::isfinite(lambda0), ErrorCode::Validation, "lambda0 must be positive and finite");
    require(beta >= 0.0 && std::isfinite(beta), ErrorCode::Validation, "beta must be >= 0");
    require(gamma >= 1.0 && std::isfinite(gamma), ErrorCode::Validation, "gamma must be >= 1");
}

double entropy(double q) {
    require(q >= 0.0 && q <= 1.0, ErrorCode::Domain, "entropy requires q in [0,1], got " + std::to_string(q));
    auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    return xlogx(q) + xlogx(1.0 - q);
}

double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double logistic_complement(double x) { return logistic(-x); }

double entropy_of_logit(double x) {
    // ln q = -softplus(-x), ln(1-q) = -softplus(x); H = -(softplus(-|x|) + |x| sigma(-|x|))
    const double a = std::abs(x);
    return -(std::log1p(std::exp(-a)) + a * logistic(-a));
}

double effective_lambda(const AttentionParams& params, double T) {
    require(T >= 0.0, ErrorCode::Domain, "trial length must be >= 0");
    return params.gamma * params.lambda0 / (1.0 + params.beta * T);
}

double effective_lambda_slope(const AttentionParams& params, double T) {
    const double d = 1.0 + params.beta * T;
    return -params.gamma * params.lambda0 * params.beta / (d * d);
}

double monitoring_objective(double q, double P, double lam) { return (1.0 - q) * P + entropy(q) / lam; }

MonitoringSolution optimal_q(double P, double lam) {
    require(P >= 0.0 && P <= 1.0, ErrorCode::Domain, "price must be in [0,1]");
    require(lam > 0.0, ErrorCode::Domain, "sensitivity must be positive");
    const double x = lam * P;
    MonitoringSolution s;
    s.q_star = logistic(x);
    s.expected_loss = logistic_complement(x) * P;
    s.entropy_cost = entropy_of_logit(x) / lam;
    s.objective_value = s.expected_loss + s.entropy_cost;
    return s;
}

MonitoringDerivatives q_derivatives(double P, double lam, const AttentionParams& params, double T) {
    const double expected = effective_lambda(params, T);
    require(std::abs(lam - expected) <= kLambdaConsistencyTol, ErrorCode::Inconsistent,
            "lambda does not match effective_lambda(params, T)");
    const double x = lam * P;
    const double qq = logistic(x) * logistic_complement(x);
    MonitoringDerivatives d;
    d.dq_dP = lam * qq;
    d.dq_dLambda = P * qq;
    d.dq_dT = d.dq_dLambda * effective_lambda_slope(params, T);
    return d;
}

} // namespace trialopt
