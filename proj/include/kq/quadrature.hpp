#pragma once

#include <functional>

namespace kq {

/// Adaptive 61-point Gauss–Kronrod on [a, b] to the given relative tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12);

struct RombergResult {
    double value{0.0};
    double error_estimate{0.0};
    int levels{0};
};

/// Trapezoid rule on [a, b] starting from `initial_panels` panels, repeatedly halved
/// and Richardson-extrapolated until successive estimates agree to `abs_tol`.
RombergResult integrate_romberg(const std::function<double(double)>& f, double a, double b,
                                int initial_panels, double abs_tol = 1e-10, int max_levels = 16);

} // namespace kq
