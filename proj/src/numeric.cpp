#include "trialopt/numeric.hpp"

#include "trialopt/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace trialopt {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Domain: return "domain_error";
    case ErrorCode::Validation: return "validation_error";
    case ErrorCode::Singularity: return "singularity";
    case ErrorCode::Unbounded: return "unbounded";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::NoRoot: return "no_root";
    case ErrorCode::TMaxReached: return "t_max_reached";
    case ErrorCode::CappedBranch: return "capped_branch";
    case ErrorCode::InfeasibleSpread: return "infeasible_spread";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::NonConvergence: return "nonconvergence";
    case ErrorCode::CycleDetected: return "cycle_detected";
    }
    return "unknown";
}

namespace numeric {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out;
    if (n == 0) return out;
    if (n == 1) return {lo};
    out.reserve(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out.push_back(lo + step * static_cast<double>(i));
    out.back() = hi;
    return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    require(lo > 0 && hi > 0, ErrorCode::Domain, "logspace bounds must be positive");
    auto exps = linspace(std::log10(lo), std::log10(hi), n);
    for (auto& e : exps) e = std::pow(10.0, e);
    if (!exps.empty()) {
        exps.front() = lo;
        exps.back() = hi;
    }
    return exps;
}

std::vector<Bracket> scan_sign_changes(const ScalarFn& f, double lo, double hi, std::size_t intervals) {
    require(intervals >= 1 && hi > lo, ErrorCode::Domain, "scan needs a nonempty interval");
    const auto xs = linspace(lo, hi, intervals + 1);
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = f(xs[i]);

    std::vector<Bracket> out;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (fs[i] == 0.0) {
            out.push_back({xs[i], xs[i], 0.0, 0.0});
        } else if (fs[i + 1] != 0.0 && std::signbit(fs[i]) != std::signbit(fs[i + 1])) {
            out.push_back({xs[i], xs[i + 1], fs[i], fs[i + 1]});
        }
    }
    if (fs.back() == 0.0) out.push_back({xs.back(), xs.back(), 0.0, 0.0});
    return out;
}

double bisect(const ScalarFn& f, Bracket b, double f_tol, int max_iter) {
    if (b.lo == b.hi) return b.lo;
    if (std::abs(b.f_lo) <= f_tol) return b.lo;
    if (std::abs(b.f_hi) <= f_tol) return b.hi;
    require(std::signbit(b.f_lo) != std::signbit(b.f_hi), ErrorCode::NoRoot, "bisection bracket has no sign change");

    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (b.lo + b.hi);
        // secant proposal, accepted only when well inside the bracket
        double x = b.lo - b.f_lo * (b.hi - b.lo) / (b.f_hi - b.f_lo);
        const double w = b.hi - b.lo;
        if (!(x > b.lo + 0.1 * w && x < b.hi - 0.1 * w) || (it % 3 == 2)) x = mid;
        const double fx = f(x);
        if (fx == 0.0 || std::abs(fx) <= f_tol) return x;
        if (std::signbit(fx) == std::signbit(b.f_lo)) {
            b.lo = x;
            b.f_lo = fx;
        } else {
            b.hi = x;
            b.f_hi = fx;
        }
        if (b.hi - b.lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b.hi))) break;
    }
    // a jump discontinuity ends here too, so stay at the final bracket
    return std::abs(b.f_lo) <= std::abs(b.f_hi) ? b.lo : b.hi;
}

Extremum golden_max(const ScalarFn& f, double lo, double hi, double x_tol, int max_iter) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > x_tol; ++it) {
        // ties move toward the lower end
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    Extremum best = fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
    const double fa = f(lo), fb = f(hi);
    if (fa >= best.value) best = {lo, fa};
    if (fb > best.value) best = {hi, fb};
    return best;
}

Extremum grid_golden_max(const ScalarFn& f, double lo, double hi, std::size_t grid_n, double x_tol) {
    const auto xs = linspace(lo, hi, std::max<std::size_t>(grid_n, 3));
    std::size_t arg = 0;
    double best = f(xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double v = f(xs[i]);
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    const double a = xs[arg == 0 ? 0 : arg - 1];
    const double b = xs[std::min(arg + 1, xs.size() - 1)];
    Extremum refined = golden_max(f, a, b, x_tol);
    if (refined.value >= best) return refined;
    return {xs[arg], best};
}

double integrate(const ScalarFn& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    return gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &err);
}

} // namespace numeric
} // namespace trialopt
