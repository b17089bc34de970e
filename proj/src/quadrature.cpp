#include "kq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace kq {

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol)
{
    if (a == b) {
        return 0.0;
    }
    double error = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, rel_tol,
                                                                         &error);
}

RombergResult integrate_romberg(const std::function<double(double)>& f, double a, double b,
                                int initial_panels, double abs_tol, int max_levels)
{
    if (a == b) {
        return {};
    }
    int n = std::max(initial_panels, 1);
    double h = (b - a) / n;
    double sum = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) {
        sum += f(a + i * h);
    }

    std::vector<double> previous{sum * h};
    double last_error = 0.0;
    for (int level = 1; level <= max_levels; ++level) {
        // New midpoints only; the old samples are reused through `sum`.
        for (int i = 0; i < n; ++i) {
            sum += f(a + (i + 0.5) * h);
        }
        n *= 2;
        h *= 0.5;

        std::vector<double> row(static_cast<std::size_t>(level) + 1);
        row[0] = sum * h;
        double factor = 1.0;
        for (int k = 1; k <= level; ++k) {
            factor *= 4.0;
            row[k] = row[k - 1] + (row[k - 1] - previous[k - 1]) / (factor - 1.0);
        }
        last_error = std::abs(row[level] - previous[level - 1]);
        if (last_error <= abs_tol && level >= 2) {
            return {row[level], last_error, level};
        }
        previous = std::move(row);
    }
    return {previous.back(), last_error, max_levels};
}

} // namespace kq
