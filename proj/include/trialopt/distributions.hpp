#pragma once

// Valuation distributions on [0,1]: CDF, density, survivor, hazard and the
// regularity diagnostics used by the pricing results (IFR, lambda-crit).

#include <optional>
#include <string>
#include <variant>

namespace trialopt {

struct Uniform {
    double a = 0.0;
    double b = 1.0;
};

/// Survivor kappa * v^-eps on [v0, 1), a linear CDF ramp on [0, v0) and an
/// atom of mass kappa at v = 1 so that total mass is one.
struct PiecewiseIsoElastic {
    double kappa = 0.3;
    double eps = 0.4;
    double v0 = 0.2;
};

/// Weibull(shape k, scale s) renormalized to [0,1].
struct TruncatedWeibull {
    double k = 2.0;
    double s = 0.5;
};

using Family = std::variant<Uniform, PiecewiseIsoElastic, TruncatedWeibull>;

class ValuationDistribution {
public:
    /// Throws Validation if the parameters do not define a distribution on [0,1].
    explicit ValuationDistribution(Family family);

    const Family& family() const noexcept { return family_; }
    std::string name() const;

    double cdf(double v) const;
    double pdf(double v) const;
    double survivor(double v) const;
    double hazard(double v) const;

    /// Point mass at v = 1 (nonzero only for the iso-elastic construction).
    double atom_at_one() const noexcept;

    /// Tail elasticity when the family is iso-elastic.
    std::optional<double> tail_elasticity() const noexcept;

    /// Breakpoints of the density inside (0,1), for piecewise quadrature.
    std::optional<double> kink() const noexcept;

private:
    Family family_;
    double weibull_norm_ = 1.0;  // G(1) of the untruncated Weibull
};

struct PriceWindow {
    double p_lo = 0.05;
    double p_hi = 0.95;

    void validate() const;
    bool contains(double p) const noexcept { return p >= p_lo && p <= p_hi; }
};

struct IfrReport {
    bool increasing = true;
    std::optional<double> first_violation;
    double max_drop = 0.0;  // largest h(v_i) - h(v_{i+1}) seen
};

inline constexpr double kHazardSurvivorFloor = 1e-12;
inline constexpr double kIfrStepTolerance = 1e-9;

IfrReport check_ifr(const ValuationDistribution& dist, const PriceWindow& window, std::size_t grid_n);

/// Supremum of the hazard over the window. Throws Unbounded above `cap`.
double lambda_crit(const ValuationDistribution& dist, const PriceWindow& window, double cap = 1e6);

} // namespace trialopt
