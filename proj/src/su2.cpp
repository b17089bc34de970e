#include "kq/su2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kq/errors.hpp"

namespace kq {

Mat2& Mat2::operator+=(const Mat2& o)
{
    m11 += o.m11;
    m12 += o.m12;
    m21 += o.m21;
    m22 += o.m22;
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o)
{
    m11 -= o.m11;
    m12 -= o.m12;
    m21 -= o.m21;
    m22 -= o.m22;
    return *this;
}

Mat2& Mat2::operator*=(Complex s)
{
    m11 *= s;
    m12 *= s;
    m21 *= s;
    m22 *= s;
    return *this;
}

Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
Mat2 operator*(Complex s, Mat2 a) { return a *= s; }
Mat2 operator*(Mat2 a, Complex s) { return a *= s; }

Mat2 operator*(const Mat2& a, const Mat2& b)
{
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) { return a * b; }

Mat2 dagger(const Mat2& a)
{
    return {std::conj(a.m11), std::conj(a.m21), std::conj(a.m12), std::conj(a.m22)};
}

Complex trace(const Mat2& a) { return a.m11 + a.m22; }

Complex det(const Mat2& a) { return a.m11 * a.m22 - a.m12 * a.m21; }

double max_norm(const Mat2& a)
{
    return std::max({std::abs(a.m11), std::abs(a.m12), std::abs(a.m21), std::abs(a.m22)});
}

double unitarity_defect(const Mat2& a)
{
    return max_norm(dagger(a) * a - Mat2::identity());
}

PauliVector& PauliVector::operator+=(const PauliVector& o)
{
    c0 += o.c0;
    cx += o.cx;
    cy += o.cy;
    cz += o.cz;
    return *this;
}

PauliVector operator+(PauliVector a, const PauliVector& b) { return a += b; }

PauliVector operator-(PauliVector a, const PauliVector& b)
{
    return {a.c0 - b.c0, a.cx - b.cx, a.cy - b.cy, a.cz - b.cz};
}

PauliVector operator*(double s, PauliVector a) { return {s * a.c0, s * a.cx, s * a.cy, s * a.cz}; }

Mat2 to_matrix(const PauliVector& p)
{
    return {p.c0 + p.cz, p.cx - kI * p.cy, p.cx + kI * p.cy, p.c0 - p.cz};
}

PauliVector to_pauli(const Mat2& m)
{
    // c_k = tr(σ_k M) / 2
    return {0.5 * (m.m11 + m.m22), 0.5 * (m.m12 + m.m21), 0.5 * kI * (m.m12 - m.m21),
            0.5 * (m.m11 - m.m22)};
}

double max_norm(const PauliVector& p)
{
    return std::max({std::abs(p.c0), std::abs(p.cx), std::abs(p.cy), std::abs(p.cz)});
}

double vector_norm(const PauliVector& p)
{
    return std::sqrt(std::norm(p.cx) + std::norm(p.cy) + std::norm(p.cz));
}

Mat2 pauli_exponential(double phi, const Vec3& n)
{
    const double len = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
    if (!(std::abs(len - 1.0) <= 1e-12)) {
        throw InputError("pauli_exponential: axis must be a unit vector, |n| = " +
                         std::to_string(len));
    }
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {Complex{c, s * n.z}, Complex{s * n.y, s * n.x}, Complex{-s * n.y, s * n.x},
            Complex{c, -s * n.z}};
}

Mat2 exp_minus_i(const PauliVector& p)
{
    const double x = p.cx.real();
    const double y = p.cy.real();
    const double z = p.cz.real();
    const double r = std::sqrt(x * x + y * y + z * z);
    // e^{-i r n·σ} = cos r − i (n·σ) sin r, written with sin r / r so r → 0 is smooth.
    const double c = std::cos(r);
    const double sr = sinc(r);
    Mat2 u{Complex{c, -sr * z}, Complex{-sr * y, -sr * x}, Complex{sr * y, -sr * x},
           Complex{c, sr * z}};
    if (p.c0 != 0.0) {
        u *= std::exp(-kI * p.c0.real());
    }
    return u;
}

Mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 sigma_y() { return {0.0, -kI, kI, 0.0}; }
Mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }

QubitState operator*(const Mat2& u, const QubitState& s)
{
    return {u.m11 * s.a1 + u.m12 * s.a2, u.m21 * s.a1 + u.m22 * s.a2};
}

double norm_squared(const QubitState& s) { return std::norm(s.a1) + std::norm(s.a2); }

Populations probabilities(const Mat2& u, const QubitState& initial)
{
    const double defect = unitarity_defect(u);
    if (!(defect <= 1e-8)) {
        throw NumericalFailure("probabilities: propagator is not unitary (defect " +
                               std::to_string(defect) + ")");
    }
    const QubitState out = u * initial;
    return {std::norm(out.a1), std::norm(out.a2)};
}

double sinc(double x)
{
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

} // namespace kq
