#pragma once

// Scenario files: one JSON object per experiment.

#include "trialopt/heterogeneity.hpp"
#include "trialopt/paid_trial.hpp"
#include "trialopt/policy.hpp"
#include "trialopt/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trialopt {

struct SweepSpec {
    std::string parameter;  // T, P, beta, lambda0 or gamma
    std::vector<double> grid;
};

struct Scenario {
    std::string name;
    Family distribution = Uniform{};
    AttentionParams attention;
    SolverConfig solver;  // carries the price window
    std::optional<SignupModel> signup;
    std::optional<AttentionMixture> mixture;
    std::optional<PolicyShock> shock;
    std::optional<SweepSpec> sweep;
    std::optional<Contract> contract;  // fixed contract for sweeps and hetero

    void validate() const;
    ValuationDistribution dist() const { return ValuationDistribution(distribution); }
};

/// Throws Error(Validation) on malformed JSON, unknown keys or bad values.
Scenario parse_scenario(const std::string& json_text);
std::string emit_scenario(const Scenario& scenario);
Scenario load_scenario(const std::string& path);

} // namespace trialopt
