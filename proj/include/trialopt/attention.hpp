#pragma once

// Consumer side: Shannon entropy cost, attention decay and the logistic
// monitoring rule with its closed-form derivatives.

namespace trialopt {

struct AttentionParams {
    double lambda0 = 1.0;  // baseline sensitivity
    double beta = 0.0;     // decay rate per unit of trial length
    double gamma = 1.0;    // policy multiplier on sensitivity

    void validate() const;
};

struct MonitoringSolution {
    double q_star = 0.5;
    double objective_value = 0.0;  // expected_loss + entropy_cost
    double entropy_cost = 0.0;     // H(q*)/lambda, nonpositive
    double expected_loss = 0.0;    // (1 - q*) P
    double cognitive_effort() const noexcept { return -entropy_cost; }
};

struct MonitoringDerivatives {
    double dq_dP = 0.0;
    double dq_dLambda = 0.0;
    double dq_dT = 0.0;
};

/// H(q) = q ln q + (1-q) ln(1-q), with 0 ln 0 = 0.
double entropy(double q);

/// H(sigma(x)) evaluated from the logit, stable for large |x|.
double entropy_of_logit(double x);

/// Logistic sigma(x) and 1 - sigma(x) without cancellation.
double logistic(double x);
double logistic_complement(double x);

double effective_lambda(const AttentionParams& params, double T);

/// d lambda / dT at trial length T.
double effective_lambda_slope(const AttentionParams& params, double T);

MonitoringSolution optimal_q(double P, double lam);

/// Consumer objective (1-q)P + H(q)/lambda at an arbitrary q.
double monitoring_objective(double q, double P, double lam);

inline constexpr double kLambdaConsistencyTol = 1e-9;

MonitoringDerivatives q_derivatives(double P, double lam, const AttentionParams& params, double T);

} // namespace trialopt
