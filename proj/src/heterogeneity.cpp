#include "trialopt/heterogeneity.hpp"

#include "trialopt/error.hpp"
#include "trialopt/numeric.hpp"

#include <cmath>

namespace trialopt {

void AttentionMixture::validate() const {
    require(!atoms.empty(), ErrorCode::Validation, "mixture needs at least one atom");
    double total = 0.0;
    for (const auto& a : atoms) {
        require(a.lambda > 0.0 && std::isfinite(a.lambda), ErrorCode::Validation, "mixture sensitivities must be > 0");
        require(a.weight >= 0.0, ErrorCode::Validation, "mixture weights must be >= 0");
        total += a.weight;
    }
    require(std::abs(total - 1.0) <= kMixtureWeightTol, ErrorCode::Validation, "mixture weights must sum to 1");
}

double AttentionMixture::mean_z() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.weight / a.lambda;
    return m;
}

double aggregate_loss(const ValuationDistribution& dist, const AttentionMixture& mixture, const Contract& contract,
                      double beta) {
    mixture.validate();
    require(beta >= 0.0, ErrorCode::Domain, "beta must be >= 0");
    const double F = dist.cdf(contract.P);
    if (F == 0.0) return 0.0;
    double fail_prob = 0.0;
    for (const auto& a : mixture.atoms) {
        const AttentionParams p{a.lambda, beta, 1.0};
        fail_prob += a.weight * logistic_complement(effective_lambda(p, contract.T) * contract.P);
    }
    return contract.P * F * fail_prob;
}

std::pair<AttentionMixture, AttentionMixture> mps_pair(double mean_z, double delta, double w) {
    require(mean_z > 0.0, ErrorCode::Domain, "mean_z must be positive");
    require(delta >= 0.0 && delta < mean_z, ErrorCode::Domain, "spread needs 0 <= delta < mean_z");
    require(w > 0.0 && w < 1.0, ErrorCode::Domain, "weight must be in (0,1)");

    AttentionMixture point{{{1.0 / mean_z, 1.0}}};
    if (delta == 0.0) return {point, point};

    const double z_low = mean_z - delta * (1.0 - w) / w;
    const double z_high = mean_z + delta;
    require(z_low > 0.0, ErrorCode::InfeasibleSpread, "spread pushes the low atom to z <= 0");
    AttentionMixture spread{{{1.0 / z_low, w}, {1.0 / z_high, 1.0 - w}}};
    return {point, spread};
}

double psi(double P, double z) {
    require(z > 0.0 && P > 0.0, ErrorCode::Domain, "psi needs P, z > 0");
    return logistic_complement(P / z);
}

double psi_curvature(double P, double z) {
    require(z > 0.0 && P > 0.0, ErrorCode::Domain, "psi_curvature needs P, z > 0");
    const double a = P / z;
    // s(1-s) with s = sigma(-a), kept in log space so large P/z underflows cleanly
    const double log_ss = -a - 2.0 * std::log1p(std::exp(-a));
    const double magnitude = std::exp(log_ss + std::log(P) - 3.0 * std::log(z));
    return magnitude * (a * std::tanh(0.5 * a) - 2.0);
}

double psi_inflection(double P) {
    require(P > 0.0, ErrorCode::Domain, "psi_inflection needs P > 0");
    auto k = [](double a) { return a * std::tanh(0.5 * a) - 2.0; };
    const double a_star = numeric::bisect(k, {1.0, 4.0, k(1.0), k(4.0)}, 1e-15);
    return P / a_star;
}

} // namespace trialopt
