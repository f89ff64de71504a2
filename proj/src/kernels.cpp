#include "trialopt/kernels.hpp"

namespace trialopt::kernels {

std::vector<double> profit_surface(const ValuationDistribution& dist, const AttentionParams& params,
                                   std::span<const double> Ts, std::span<const double> Ps, Exec exec) {
    const std::size_t n_p = Ps.size();
    std::vector<double> out(Ts.size() * n_p);
    for_each_index(
        Ts.size(),
        [&](std::size_t i) {
            const double lam = effective_lambda(params, Ts[i]);
            for (std::size_t j = 0; j < n_p; ++j) {
                const double P = Ps[j];
                const double F = dist.cdf(P);
                out[i * n_p + j] = P * (1.0 - F) + P * F * logistic_complement(lam * P);
            }
        },
        exec);
    return out;
}

std::vector<double> price_foc_grid(const ValuationDistribution& dist, const AttentionParams& params, double T,
                                   std::span<const double> Ps, Exec exec) {
    std::vector<double> out(Ps.size());
    for_each_index(Ps.size(), [&](std::size_t j) { out[j] = price_foc(dist, params, T, Ps[j]); }, exec);
    return out;
}

std::vector<BestResponse> best_response_curve(const ValuationDistribution& dist, const AttentionParams& params,
                                              std::span<const double> Ts, const SolverConfig& config, Exec exec) {
    std::vector<BestResponse> out(Ts.size());
    for_each_index(Ts.size(), [&](std::size_t i) { out[i] = best_response_price(dist, params, Ts[i], config); }, exec);
    return out;
}

std::vector<OptimalContract> joint_sweep(const ValuationDistribution& dist, std::span<const AttentionParams> params,
                                         const SolverConfig& config, Exec exec) {
    std::vector<OptimalContract> out(params.size());
    for_each_index(params.size(), [&](std::size_t i) { out[i] = joint_optimum(dist, params[i], config); }, exec);
    return out;
}

} // namespace trialopt::kernels
