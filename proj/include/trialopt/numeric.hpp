#pragma once

// Small 1-D numerical toolkit shared by the solvers: bracketing, bisection,
// golden-section search and adaptive quadrature.

#include <functional>
#include <vector>

namespace trialopt::numeric {

using ScalarFn = std::function<double(double)>;

std::vector<double> linspace(double lo, double hi, std::size_t n);
std::vector<double> logspace(double lo, double hi, std::size_t n);

struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Sign changes of f over `intervals` equal subintervals of [lo, hi]. An
/// exact zero at a grid node is reported as a degenerate bracket [x, x].
std::vector<Bracket> scan_sign_changes(const ScalarFn& f, double lo, double hi, std::size_t intervals);

/// Bisection with a secant step when it stays inside the bracket. Stops when
/// |f| <= f_tol or the bracket width reaches machine resolution.
double bisect(const ScalarFn& f, Bracket b, double f_tol, int max_iter = 200);

struct Extremum {
    double x;
    double value;
};

/// Golden-section maximization of a unimodal function on [lo, hi].
Extremum golden_max(const ScalarFn& f, double lo, double hi, double x_tol, int max_iter = 300);

/// Dense-grid argmax followed by golden refinement on the neighbouring cells.
Extremum grid_golden_max(const ScalarFn& f, double lo, double hi, std::size_t grid_n, double x_tol);

/// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate(const ScalarFn& f, double a, double b, double tol = 1e-10);

} // namespace trialopt::numeric
