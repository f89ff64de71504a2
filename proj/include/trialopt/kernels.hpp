#pragma once

// Grid kernels. Each has a serial reference path and an OpenMP path that must
// produce bit-identical results; per-point work is independent.

#include "trialopt/solver.hpp"

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace trialopt::kernels {

enum class Exec { Serial, Parallel };

/// Runs fn(i) for i in [0, n). Exceptions thrown by fn are rethrown after the
/// loop, lowest index first.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn, Exec exec) {
    std::vector<std::exception_ptr> errors(n);
    if (exec == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Profit on the tensor grid, row-major with one row per trial length.
std::vector<double> profit_surface(const ValuationDistribution& dist, const AttentionParams& params,
                                   std::span<const double> Ts, std::span<const double> Ps, Exec exec);

/// price_foc at fixed T over a price grid.
std::vector<double> price_foc_grid(const ValuationDistribution& dist, const AttentionParams& params, double T,
                                   std::span<const double> Ps, Exec exec);

/// Best-response price for each trial length.
std::vector<BestResponse> best_response_curve(const ValuationDistribution& dist, const AttentionParams& params,
                                              std::span<const double> Ts, const SolverConfig& config, Exec exec);

/// Joint optimum for each parameter set (beta / gamma / lambda0 sweeps).
std::vector<OptimalContract> joint_sweep(const ValuationDistribution& dist, std::span<const AttentionParams> params,
                                         const SolverConfig& config, Exec exec);

} // namespace trialopt::kernels
