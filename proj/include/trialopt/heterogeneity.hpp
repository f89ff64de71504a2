#pragma once

// Heterogeneous attention: aggregate inattentive loss over a discrete mixture
// of sensitivities, mean-preserving spreads in z = 1/lambda, and the
// curvature of the failure probability in z.

#include "trialopt/distributions.hpp"
#include "trialopt/market.hpp"

#include <utility>
#include <vector>

namespace trialopt {

struct AttentionAtom {
    double lambda = 1.0;
    double weight = 1.0;
};

struct AttentionMixture {
    std::vector<AttentionAtom> atoms;

    void validate() const;
    /// Weighted mean of z = 1/lambda.
    double mean_z() const;
};

inline constexpr double kMixtureWeightTol = 1e-12;

/// P F(P) sum_i w_i (1 - q*(P, lambda_i / (1 + beta T))). Atoms are baseline
/// sensitivities; beta = 0 treats them as effective ones.
double aggregate_loss(const ValuationDistribution& dist, const AttentionMixture& mixture, const Contract& contract,
                      double beta = 0.0);

/// (point mass at z = mean_z, two-atom spread with the same z-mean). The low
/// atom sits at mean_z - delta (1-w)/w with weight w, the high one at
/// mean_z + delta with weight 1-w.
std::pair<AttentionMixture, AttentionMixture> mps_pair(double mean_z, double delta, double w);

/// psi(z) = 1 - q*(P, 1/z).
double psi(double P, double z);

/// Closed-form psi''(z). Positive only while P/z exceeds the root of
/// a tanh(a/2) = 2; psi is concave beyond that.
double psi_curvature(double P, double z);

/// z where psi'' changes sign for a given P.
double psi_inflection(double P);

} // namespace trialopt
