#pragma once

// Aggregate market quantities at a fixed contract. All quantities are per
// unit mass of consumers.

#include "trialopt/attention.hpp"
#include "trialopt/distributions.hpp"

namespace trialopt {

struct Contract {
    double T = 0.0;
    double P = 0.5;
    double P0 = 0.0;  // introductory price, 0 for a free trial

    void validate() const;
};

struct MarketOutcome {
    double standard_revenue = 0.0;
    double inattentive_revenue = 0.0;
    double profit = 0.0;
    double utility = 0.0;
    double ir_slack = 0.0;
    double q_star = 0.5;
    double lambda_eff = 0.0;
};

double inattentive_revenue(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c);

/// Full outcome at the contract; profit = standard + inattentive revenue.
MarketOutcome profit(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c);

/// Integral of (v - P) f(v) over [P, 1], including the atom at v = 1.
double happy_surplus(const ValuationDistribution& dist, double P);

/// Ex-ante utility with the cognitive term entering as a loss |H(q*)|/lambda * F(P).
double consumer_utility(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c);

/// Same utility with the monitoring probability pinned to q instead of q*.
double consumer_utility_at_q(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c,
                             double q);

/// (beta / (gamma lambda0)) [-H(q*)] F(P): marginal utility loss per unit of T
/// holding the monitoring choice fixed.
double ir_slack(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c);

/// dIR/dT from the closed-form dq*/dT.
double inattentive_revenue_slope(const ValuationDistribution& dist, const AttentionParams& params, const Contract& c);

} // namespace trialopt
