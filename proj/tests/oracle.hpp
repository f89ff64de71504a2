#pragma once

// Reference computations for the tests. Nothing here calls into the library:
// the model is re-derived from its definitions and solved by brute force.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using Fn = std::function<double(double)>;

// --- scalar numerics -------------------------------------------------------

/// Golden-section minimum of a unimodal function, carried in long double so
/// that the argmin is resolved well below 1e-8.
inline long double golden_min(const std::function<long double(long double)>& f, long double a, long double b,
                              long double tol = 1e-12L) {
    const long double r = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    long double c = b - r * (b - a), d = a + r * (b - a);
    long double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2.0L;
}

inline double golden_max(const Fn& f, double a, double b, double tol = 1e-12) {
    return static_cast<double>(golden_min([&](long double x) { return -static_cast<long double>(f(double(x))); }, a, b, tol));
}

/// Argmax on a uniform grid, then golden refinement on the two adjacent cells.
inline double grid_then_golden_max(const Fn& f, double a, double b, int n) {
    int best = 0;
    double fb = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double x = a + (b - a) * i / (n - 1);
        const double v = f(x);
        if (v > fb) {
            fb = v;
            best = i;
        }
    }
    const double lo = a + (b - a) * std::max(best - 1, 0) / (n - 1);
    const double hi = a + (b - a) * std::min(best + 1, n - 1) / (n - 1);
    const double x = golden_max(f, lo, hi);
    return f(x) >= fb ? x : a + (b - a) * best / (n - 1);
}

inline double bisect_root(const Fn& f, double a, double b, int iters = 200) {
    double fa = f(a);
    for (int i = 0; i < iters; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (b - a <= 1e-16 * std::max(1.0, std::abs(b))) break;
    }
    return 0.5 * (a + b);
}

inline double simpson(const Fn& f, double a, double b, double tol = 1e-12, int depth = 40) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, flm, fmid, left, d - 1) + rec(mid, hi, fmid, frm, fhi, right, d - 1);
    };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4 * fm + fb), depth);
}

inline double central_diff(const Fn& f, double x, double h) { return (f(x + h) - f(x - h)) / (2 * h); }

inline double five_point(const Fn& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double second_diff(const Fn& f, double x, double h) { return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h); }

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// --- model, from the definitions --------------------------------------------

inline double H(double q) {
    auto xlx = [](double x) { return x <= 0.0 ? 0.0 : x * std::log(x); };
    return xlx(q) + xlx(1.0 - q);
}

/// Monitoring probability by minimizing (1-q)P + H(q)/lambda directly.
inline double q_by_minimization(double P, double lam) {
    auto obj = [&](long double q) {
        const long double h = q * std::log(q) + (1 - q) * std::log(1 - q);
        return (1 - q) * static_cast<long double>(P) + h / static_cast<long double>(lam);
    };
    return static_cast<double>(golden_min(obj, 1e-18L, 1.0L - 1e-18L, 1e-15L));
}

inline double q_logistic(double P, double lam) { return 1.0 / (1.0 + std::exp(-lam * P)); }

inline double lambda_of(double lambda0, double beta, double gamma, double T) { return gamma * lambda0 / (1.0 + beta * T); }

/// A valuation law given by its CDF and density, with an optional atom at v = 1.
struct Law {
    Fn F;
    Fn f;
    double atom = 0.0;
    std::vector<double> kinks;
};

inline Law uniform01() {
    return {[](double v) { return std::clamp(v, 0.0, 1.0); }, [](double) { return 1.0; }, 0.0, {}};
}

inline Law iso_elastic(double kappa, double eps, double v0) {
    const double F0 = 1.0 - kappa * std::pow(v0, -eps);
    return {[=](double v) {
                if (v <= 0) return 0.0;
                if (v >= 1) return 1.0;
                return v < v0 ? F0 * v / v0 : 1.0 - kappa * std::pow(v, -eps);
            },
            [=](double v) { return v < v0 ? F0 / v0 : kappa * eps * std::pow(v, -eps - 1.0); },
            kappa,
            {v0}};
}

inline Law weibull(double k, double s) {
    const double G1 = 1.0 - std::exp(-std::pow(1.0 / s, k));
    return {[=](double v) {
                if (v <= 0) return 0.0;
                if (v >= 1) return 1.0;
                return (1.0 - std::exp(-std::pow(v / s, k))) / G1;
            },
            [=](double v) { return k / s * std::pow(v / s, k - 1) * std::exp(-std::pow(v / s, k)) / G1; },
            0.0,
            {}};
}

struct Attention {
    double lambda0, beta, gamma = 1.0;
    double lam(double T) const { return lambda_of(lambda0, beta, gamma, T); }
};

inline double ir(const Law& d, const Attention& a, double T, double P) {
    return P * d.F(P) * (1.0 - q_logistic(P, a.lam(T)));
}

inline double profit(const Law& d, const Attention& a, double T, double P) {
    return P * (1.0 - d.F(P)) + ir(d, a, T, P);
}

/// Surplus of happy subscribers by quadrature of (v - P) f(v), plus the atom.
inline double surplus(const Law& d, double P) {
    double s = 0.0, lo = P;
    for (double k : d.kinks) {
        if (k > lo && k < 1.0) {
            s += simpson([&](double v) { return (v - P) * d.f(v); }, lo, k);
            lo = k;
        }
    }
    s += simpson([&](double v) { return (v - P) * d.f(v); }, lo, 1.0);
    return s + (1.0 - P) * d.atom;
}

/// Utility with the cognitive term entering as a loss, at a pinned q.
inline double utility_at_q(const Law& d, const Attention& a, double T, double P, double q) {
    return surplus(d, P) - P * d.F(P) * (1.0 - q) + d.F(P) * H(q) / a.lam(T);
}

inline double utility(const Law& d, const Attention& a, double T, double P) {
    return utility_at_q(d, a, T, P, q_logistic(P, a.lam(T)));
}

/// Trial FOC built from finite differences: P dIR/dT plus dU/dT at fixed q.
inline double trial_foc_fd(const Law& d, const Attention& a, double T, double P) {
    const double h = 1e-4 * std::max(1.0, T);
    const double t = std::max(T, 2 * h);  // keep the stencil at T >= 0
    const double dir = five_point([&](double x) { return ir(d, a, x, P); }, t, h);
    const double q = q_logistic(P, a.lam(t));
    const double du = five_point([&](double x) { return utility_at_q(d, a, x, P, q); }, t, h);
    return P * dir + du;
}

struct JointOracle {
    double T = 0.0;
    double P = 0.0;
    double profit = 0.0;
    bool corner = false;
};

/// Brute-force FOC-system solution: for each T on an n-point grid the price is
/// the grid+golden argmax of profit; the trial FOC (finite differences) is
/// scanned for its first downward crossing and bisected.
inline JointOracle joint_oracle(const Law& d, const Attention& a, double p_lo, double p_hi, double t_max, int n) {
    auto best_p = [&](double T) { return grid_then_golden_max([&](double p) { return profit(d, a, T, p); }, p_lo, p_hi, n); };
    auto h = [&](double T) { return trial_foc_fd(d, a, T, best_p(T)); };
    JointOracle out;
    double T = 0.0;
    if (a.beta > 0.0 && h(0.0) > 0.0) {
        T = t_max;
        double prev_t = 0.0, prev_h = h(0.0);
        for (int i = 1; i < n; ++i) {
            const double t = t_max * i / (n - 1);
            const double ht = h(t);
            if (prev_h > 0 && ht <= 0) {
                T = bisect_root(h, prev_t, t, 100);
                break;
            }
            prev_t = t;
            prev_h = ht;
        }
    }
    out.T = T;
    out.P = best_p(T);
    out.profit = profit(d, a, T, out.P);
    out.corner = T == 0.0 || T == t_max;
    return out;
}

} // namespace oracle
