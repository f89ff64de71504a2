#pragma once

// Firm-side optimization: renewal-price FOC, best-response price, trial-length
// FOC and the joint contract.

#include "trialopt/distributions.hpp"
#include "trialopt/market.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trialopt {

enum class ParticipationMode { Interior, BindingIr, ReportOnly };

std::string to_string(ParticipationMode mode);
ParticipationMode participation_mode_from_string(const std::string& s);

struct SolverConfig {
    PriceWindow price_window{};
    double t_max = 365.0;
    std::size_t bracket_grid = 256;
    double root_tol = 1e-10;
    double opt_tol = 1e-9;
    ParticipationMode participation_mode = ParticipationMode::ReportOnly;
    int max_iter = 200;

    void validate() const;
};

struct BoundaryFlags {
    bool t_at_zero = false;
    bool t_at_max = false;
    bool p_at_window_edge = false;

    bool any() const noexcept { return t_at_zero || t_at_max || p_at_window_edge; }
    /// "T_at_zero|P_at_window_edge" style, "none" when empty.
    std::string to_string() const;
};

struct OptimalContract {
    Contract contract;
    MarketOutcome outcome;
    double price_foc_residual = 0.0;
    double trial_foc_residual = 0.0;
    BoundaryFlags flags;
    bool participation_satisfied = false;
    bool beta_zero = false;
};

// --- renewal price -------------------------------------------------------

/// dProfit/dP at (T, P): standard marginal profit plus marginal inattentive profit.
double price_foc(const ValuationDistribution& dist, const AttentionParams& params, double T, double P);

struct PriceSolution {
    double price = 0.0;
    std::vector<double> roots;
    std::size_t sign_changes = 0;
    bool ifr_verified = false;  // uniqueness is only guaranteed when true
};

/// Root of price_foc on the window by bracket scan and bisection. Throws NoRoot
/// when the FOC keeps its sign; with several roots the profit-max one is chosen.
PriceSolution solve_price(const ValuationDistribution& dist, const AttentionParams& params, double T,
                          const SolverConfig& config);

struct BestResponse {
    double price = 0.0;
    bool from_root = false;
    bool at_window_edge = false;
    std::size_t sign_changes = 0;
};

/// Profit-maximizing price at T: the FOC root when it is a unique interior
/// maximum, otherwise the best of all roots and both window edges.
BestResponse best_response_price(const ValuationDistribution& dist, const AttentionParams& params, double T,
                                 const SolverConfig& config);

// --- trial length --------------------------------------------------------

/// P dIR/dT - IR-Slack at (T, P).
double trial_foc(const ValuationDistribution& dist, const AttentionParams& params, double P, double T);

struct TrialSolution {
    double T = 0.0;
    double residual = 0.0;
    bool t_at_zero = false;
    bool beta_zero = false;
    bool foc_decreasing = true;  // trial_foc monotone on the scan grid
};

TrialSolution solve_trial(const ValuationDistribution& dist, const AttentionParams& params, double P,
                          const SolverConfig& config);

// --- joint contract ------------------------------------------------------

OptimalContract joint_optimum(const ValuationDistribution& dist, const AttentionParams& params,
                              const SolverConfig& config);

/// Evaluates residuals and flags for an arbitrary (T, P) as if it were a solver output.
OptimalContract describe_contract(const ValuationDistribution& dist, const AttentionParams& params, double T,
                                  double P, const SolverConfig& config);

struct ResponsePoint {
    double T = 0.0;
    double P = 0.0;
    bool from_root = false;
    bool at_window_edge = false;
};

struct PriceResponseCurve {
    std::vector<ResponsePoint> points;
    std::optional<double> lambda_crit;  // empty when the hazard is unbounded on the window
    bool hypothesis_holds = false;      // beta > 0 and lambda0 > lambda_crit
    bool strictly_increasing = false;
    bool flat = false;                  // every P* identical (beta = 0)
};

PriceResponseCurve price_response_curve(const ValuationDistribution& dist, const AttentionParams& params,
                                        const std::vector<double>& T_grid, const SolverConfig& config);

} // namespace trialopt
