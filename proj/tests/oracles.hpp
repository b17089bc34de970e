#pragma once

// Independent reference implementations used only by the tests: dense matrix
// exponentials and eigen-decompositions from Eigen, an adaptive Dormand–Prince
// integrator from Boost.Odeint and a plain composite Simpson rule.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/numeric/odeint.hpp>

#include "kq/su2.hpp"

namespace oracle {

using Matrix = Eigen::Matrix2cd;
using C = std::complex<double>;

inline Matrix to_eigen(const kq::Mat2& m)
{
    Matrix e;
    e << m.m11, m.m12, m.m21, m.m22;
    return e;
}

inline kq::Mat2 from_eigen(const Matrix& e) { return {e(0, 0), e(0, 1), e(1, 0), e(1, 1)}; }

inline Matrix sx()
{
    Matrix m;
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix sy()
{
    Matrix m;
    m << 0, C(0, -1), C(0, 1), 0;
    return m;
}

inline Matrix sz()
{
    Matrix m;
    m << 1, 0, 0, -1;
    return m;
}

/// exp(A) by Eigen's Padé scaling-and-squaring.
inline Matrix expm(const Matrix& a) { return a.exp(); }

/// exp(−i H) for a Hermitian H.
inline kq::Mat2 exp_minus_i(const Matrix& h) { return from_eigen(expm(C(0, -1) * h)); }

/// Free evolution e^{iγtσz}.
inline kq::Mat2 free(double gamma_t) { return exp_minus_i(-gamma_t * sz()); }

/// Kick e^{−iασx}.
inline kq::Mat2 kick(double alpha) { return exp_minus_i(alpha * sx()); }

inline double max_diff(const kq::Mat2& a, const kq::Mat2& b)
{
    return (to_eigen(a) - to_eigen(b)).cwiseAbs().maxCoeff();
}

inline std::array<C, 2> eigenvalues(const kq::Mat2& m)
{
    Eigen::ComplexEigenSolver<Matrix> es(to_eigen(m));
    return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

/// Composite Simpson on n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000)
{
    if (n % 2) {
        ++n;
    }
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

/// Gaussian envelope written out independently of the library.
inline double gaussian(double alpha, double tau, double center, double t)
{
    const double x = (t - center) / tau;
    return alpha / (std::sqrt(std::numbers::pi) * tau) * std::exp(-x * x);
}

/// U(t1 ← t0) for i dU/dt = (−γσz + V(t)σx) U by adaptive Dormand–Prince 5(4).
/// `breaks` lists times where V is discontinuous or sharply peaked; the integrator
/// restarts there.
inline kq::Mat2 evolve(double gamma, const std::function<double(double)>& v, double t0, double t1,
                       std::vector<double> breaks = {}, double tol = 1e-13)
{
    using State = std::array<double, 8>;
    namespace ode = boost::numeric::odeint;
    auto rhs = [&](const State& y, State& dy, double t) {
        const double vt = v(t);
        for (int col = 0; col < 2; ++col) {
            const C a1(y[4 * col + 0], y[4 * col + 1]);
            const C a2(y[4 * col + 2], y[4 * col + 3]);
            const C d1 = C(0, -1) * (-gamma * a1 + vt * a2);
            const C d2 = C(0, -1) * (vt * a1 + gamma * a2);
            dy[4 * col + 0] = d1.real();
            dy[4 * col + 1] = d1.imag();
            dy[4 * col + 2] = d2.real();
            dy[4 * col + 3] = d2.imag();
        }
    };
    State y{1, 0, 0, 0, 0, 0, 1, 0};
    std::vector<double> pts{t0};
    for (double b : breaks) {
        if (t0 < b && b < t1) {
            pts.push_back(b);
        }
    }
    pts.push_back(t1);
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double span = pts[i + 1] - pts[i];
        if (span <= 0.0) {
            continue;
        }
        ode::integrate_adaptive(ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State>()), rhs, y,
                                pts[i], pts[i + 1], span / 1000.0);
    }
    return {C(y[0], y[1]), C(y[4], y[5]), C(y[2], y[3]), C(y[6], y[7])};
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    }
    return sxy / sxx;
}

} // namespace oracle
