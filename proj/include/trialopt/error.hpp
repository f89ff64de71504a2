#pragma once

#include <stdexcept>
#include <string>

namespace trialopt {

enum class ErrorCode {
    Domain,          // argument outside the declared domain
    Validation,      // malformed parameters or scenario
    Singularity,     // survivor function vanished where a hazard was requested
    Unbounded,       // hazard supremum exceeded the configured cap
    Inconsistent,    // caller-supplied quantities disagree
    NoRoot,          // no sign change found in the bracket
    TMaxReached,     // trial FOC still positive at the upper bound
    CappedBranch,    // sign-up rate saturated, intro-price FOC degenerate
    InfeasibleSpread,
    Infeasible,      // no admissible point satisfies the participation constraint
    NonConvergence,
    CycleDetected,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// True for errors raised while solving, as opposed to bad input.
    bool is_solver_failure() const noexcept {
        switch (code_) {
        case ErrorCode::NoRoot:
        case ErrorCode::TMaxReached:
        case ErrorCode::Infeasible:
        case ErrorCode::NonConvergence:
        case ErrorCode::CycleDetected:
        case ErrorCode::Unbounded:
        case ErrorCode::Singularity:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace trialopt
