#pragma once

// Paid-trial extension: iso-elastic sign-ups eta(P0) = alpha P0^-theta capped
// at `cap`, profit eta(P0) (P0 + P_aug(T, P)), and the three-variable contract.

#include "trialopt/solver.hpp"

#include <optional>
#include <string>

namespace trialopt {

struct SignupModel {
    double alpha = 0.1;
    double theta = 0.5;
    double cap = 1.0;

    void validate() const;
};

double signup_rate(const SignupModel& model, double P0);
/// eta'(P0); zero on the capped branch.
double signup_slope(const SignupModel& model, double P0);
bool signup_capped(const SignupModel& model, double P0);

/// Post-trial profit per subscriber: P (1 - F(P)) + IR(T, P).
double p_aug(const ValuationDistribution& dist, const AttentionParams& params, double T, double P);

/// eta'(P0) (P0 + p_aug) + eta(P0). Throws CappedBranch when eta is saturated.
double intro_price_foc(const SignupModel& model, double P0, double p_aug_value);

struct IntroPrice {
    double P0 = 0.0;
    bool corner = false;
};

/// theta / (1 - theta) * p_aug for theta < 1, else the P0 = 0 corner.
IntroPrice optimal_intro_price(const SignupModel& model, double p_aug_value);

enum class PaidCorner { Interior, P0Zero, TZero };
std::string to_string(PaidCorner corner);

struct PaidTrialOptimum {
    Contract contract;
    double p_aug = 0.0;
    double signup_rate = 0.0;
    double profit = 0.0;
    PaidCorner corner = PaidCorner::Interior;
    int iterations = 0;
    double price_foc_residual = 0.0;
    double trial_foc_residual = 0.0;
};

/// Evaluates eta(P0) (P0 + P_aug) at a contract.
PaidTrialOptimum profit_paid(const ValuationDistribution& dist, const AttentionParams& params,
                             const SignupModel& model, const Contract& contract);

struct CrossPartial {
    double closed_form = 0.0;                  // eta'(P0) dP_aug/dT
    std::optional<double> finite_difference;   // mixed central difference of profit_paid
    bool capped = false;
};

CrossPartial cross_partial_check(const ValuationDistribution& dist, const AttentionParams& params,
                                 const SignupModel& model, const Contract& contract, double step = 1e-4);

inline constexpr double kPaidJointTol = 1e-8;

/// Coordinate descent over (P | T), (T | P), (P0 | P_aug) to a joint fixed point.
PaidTrialOptimum joint_paid_optimum(const ValuationDistribution& dist, const AttentionParams& params,
                                    const SignupModel& model, const SolverConfig& config);

/// (T, P) re-optimized with P0 held fixed. eta(P0) scales both FOCs, so the
/// roots are those of the free-trial system.
PaidTrialOptimum optimum_at_intro_price(const ValuationDistribution& dist, const AttentionParams& params,
                                        const SignupModel& model, double P0, const SolverConfig& config);

struct PaidGridResult {
    Contract best;
    double profit = 0.0;
};

/// Brute-force max of the paid profit on an n^3 grid over [0, t_max] x window x [0, p0_max].
PaidGridResult paid_grid_search(const ValuationDistribution& dist, const AttentionParams& params,
                                const SignupModel& model, const SolverConfig& config, std::size_t n, double p0_max);

} // namespace trialopt
