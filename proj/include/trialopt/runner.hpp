#pragma once

// Experiment orchestration behind the command-line tool.

#include "trialopt/scenario.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace trialopt {

enum class Command { Solve, Sweep, Policy, Paid, Hetero, Verify };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

struct RunOptions {
    std::optional<ParticipationMode> mode;  // overrides the scenario's solver setting
    bool round_T = false;                   // report T* rounded to whole days, P re-optimized
};

struct RunOutput {
    std::string csv;
    bool invariants_ok = true;  // only `verify` can set this false
};

/// Runs one command on a parsed scenario. Throws Error on bad input or solver failure.
RunOutput execute(Command command, const Scenario& scenario, const RunOptions& options);

/// Full CLI path: load, execute, write. Returns the process exit code
/// (0 ok, 1 validation, 2 solver failure, 3 invariant violation).
int run(Command command, const std::string& scenario_path, const std::string& out_path, const RunOptions& options,
        std::ostream& err);

/// %.12g formatting used for every CSV number.
std::string fmt(double x);

} // namespace trialopt
