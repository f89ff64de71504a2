#include "trialopt/distributions.hpp"

#include "trialopt/error.hpp"
#include "trialopt/numeric.hpp"

#include <cmath>
#include <sstream>

namespace trialopt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_unit(double v, const char* what) {
    require(v >= 0.0 && v <= 1.0 && !std::isnan(v), ErrorCode::Domain,
            std::string(what) + " requires v in [0,1], got " + std::to_string(v));
}

} // namespace

ValuationDistribution::ValuationDistribution(Family family) : family_(family) {
    std::visit(overloaded{
                   [](const Uniform& u) {
                       require(u.a >= 0.0 && u.b <= 1.0 && u.a < u.b, ErrorCode::Validation,
                               "uniform needs 0 <= a < b <= 1");
                   },
                   [](const PiecewiseIsoElastic& d) {
                       require(d.kappa > 0.0 && d.kappa < 1.0, ErrorCode::Validation, "iso_elastic kappa must be in (0,1)");
                       require(d.eps > 0.0 && d.eps < 1.0, ErrorCode::Validation, "iso_elastic eps must be in (0,1)");
                       require(d.v0 > 0.0 && d.v0 < 1.0, ErrorCode::Validation, "iso_elastic v0 must be in (0,1)");
                       require(1.0 - d.kappa * std::pow(d.v0, -d.eps) > 0.0, ErrorCode::Validation,
                               "iso_elastic survivor kappa*v0^-eps must stay below 1");
                   },
                   [this](const TruncatedWeibull& w) {
                       require(w.k >= 1.0, ErrorCode::Validation, "truncated_weibull shape k must be >= 1");
                       require(w.s > 0.0, ErrorCode::Validation, "truncated_weibull scale s must be > 0");
                       weibull_norm_ = -std::expm1(-std::pow(1.0 / w.s, w.k));
                   },
               },
               family_);
}

std::string ValuationDistribution::name() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const Uniform& u) { os << "uniform(" << u.a << "," << u.b << ")"; },
                   [&](const PiecewiseIsoElastic& d) {
                       os << "iso_elastic(kappa=" << d.kappa << ",eps=" << d.eps << ",v0=" << d.v0 << ")";
                   },
                   [&](const TruncatedWeibull& w) { os << "truncated_weibull(k=" << w.k << ",s=" << w.s << ")"; },
               },
               family_);
    return os.str();
}

double ValuationDistribution::cdf(double v) const {
    check_unit(v, "cdf");
    return std::visit(overloaded{
                          [&](const Uniform& u) {
                              if (v <= u.a) return 0.0;
                              if (v >= u.b) return 1.0;
                              return (v - u.a) / (u.b - u.a);
                          },
                          [&](const PiecewiseIsoElastic& d) {
                              if (v >= 1.0) return 1.0;
                              if (v >= d.v0) return 1.0 - d.kappa * std::pow(v, -d.eps);
                              const double f_v0 = 1.0 - d.kappa * std::pow(d.v0, -d.eps);
                              return f_v0 * v / d.v0;
                          },
                          [&](const TruncatedWeibull& w) {
                              return -std::expm1(-std::pow(v / w.s, w.k)) / weibull_norm_;
                          },
                      },
                      family_);
}

double ValuationDistribution::pdf(double v) const {
    require(v > 0.0 && v < 1.0, ErrorCode::Domain, "pdf requires v in (0,1), got " + std::to_string(v));
    return std::visit(overloaded{
                          [&](const Uniform& u) { return (v < u.a || v > u.b) ? 0.0 : 1.0 / (u.b - u.a); },
                          [&](const PiecewiseIsoElastic& d) {
                              if (v >= d.v0) return d.kappa * d.eps * std::pow(v, -d.eps - 1.0);
                              return (1.0 - d.kappa * std::pow(d.v0, -d.eps)) / d.v0;
                          },
                          [&](const TruncatedWeibull& w) {
                              const double x = v / w.s;
                              return (w.k / w.s) * std::pow(x, w.k - 1.0) * std::exp(-std::pow(x, w.k)) / weibull_norm_;
                          },
                      },
                      family_);
}

double ValuationDistribution::survivor(double v) const {
    check_unit(v, "survivor");
    // Weibull survivor computed directly to avoid cancellation near v = 1
    if (const auto* w = std::get_if<TruncatedWeibull>(&family_)) {
        const double a = std::exp(-std::pow(v / w->s, w->k));
        const double b = std::exp(-std::pow(1.0 / w->s, w->k));
        return (a - b) / weibull_norm_;
    }
    return 1.0 - cdf(v);
}

double ValuationDistribution::hazard(double v) const {
    require(v > 0.0 && v < 1.0, ErrorCode::Domain, "hazard requires v in (0,1)");
    const double s = survivor(v);
    require(s > kHazardSurvivorFloor, ErrorCode::Singularity, "survivor vanished at v=" + std::to_string(v));
    return pdf(v) / s;
}

double ValuationDistribution::atom_at_one() const noexcept {
    if (const auto* d = std::get_if<PiecewiseIsoElastic>(&family_)) return d->kappa;
    return 0.0;
}

std::optional<double> ValuationDistribution::tail_elasticity() const noexcept {
    if (const auto* d = std::get_if<PiecewiseIsoElastic>(&family_)) return d->eps;
    return std::nullopt;
}

std::optional<double> ValuationDistribution::kink() const noexcept {
    if (const auto* d = std::get_if<PiecewiseIsoElastic>(&family_)) return d->v0;
    if (const auto* u = std::get_if<Uniform>(&family_)) {
        if (u->a > 0.0) return u->a;
        if (u->b < 1.0) return u->b;
    }
    return std::nullopt;
}

void PriceWindow::validate() const {
    require(p_lo > 0.0 && p_lo < p_hi && p_hi < 1.0, ErrorCode::Validation,
            "price window needs 0 < p_lo < p_hi < 1");
}

IfrReport check_ifr(const ValuationDistribution& dist, const PriceWindow& window, std::size_t grid_n) {
    require(grid_n >= 16, ErrorCode::Domain, "check_ifr needs grid_n >= 16");
    window.validate();
    IfrReport report;
    const auto vs = numeric::linspace(window.p_lo, window.p_hi, grid_n);
    double prev = dist.hazard(vs[0]);
    for (std::size_t i = 1; i < vs.size(); ++i) {
        const double h = dist.hazard(vs[i]);
        const double drop = prev - h;
        report.max_drop = std::max(report.max_drop, drop);
        if (drop > kIfrStepTolerance && report.increasing) {
            report.increasing = false;
            report.first_violation = vs[i];
        }
        prev = h;
    }
    return report;
}

double lambda_crit(const ValuationDistribution& dist, const PriceWindow& window, double cap) {
    window.validate();
    auto h = [&](double v) {
        try {
            return dist.hazard(v);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Singularity) fail(ErrorCode::Unbounded, "hazard singular inside window");
            throw;
        }
    };
    const auto best = numeric::grid_golden_max(h, window.p_lo, window.p_hi, 2049, 1e-12);
    require(best.value <= cap, ErrorCode::Unbounded, "hazard supremum exceeds cap " + std::to_string(cap));
    return best.value;
}

} // namespace trialopt
