#pragma once

#include <functional>

namespace hypgraph {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

/// 15-point Kronrod rule with embedded 7-point Gauss error estimate on [a, b].
QuadratureResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

/// Adaptive bisection of [a, b] until each panel's Gauss/Kronrod difference
/// meets its share of `abs_tol`.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-10, int max_panels = 20000);

/// Integral over [a, +inf) truncated at the first T >= a with
/// tail_bound(T) < tail_tol. `tail_bound` must be a decreasing upper bound
/// on the integral over [T, +inf).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const std::function<double(double)>& tail_bound,
                                       double abs_tol = 1e-10, double tail_tol = 1e-13);

}  // namespace hypgraph
