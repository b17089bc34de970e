#pragma once

// Two-level algebra: complex 2x2 matrices, Pauli decompositions and the
// closed-form SU(2) exponential that every analytic propagator is built from.

#include <array>
#include <complex>

namespace kq {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Row-major dense 2x2 complex matrix.
struct Mat2 {
    Complex m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};

    static constexpr Mat2 identity() { return {}; }
    static constexpr Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
    static constexpr Mat2 diagonal(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(Complex s);
};

Mat2 operator+(Mat2 a, const Mat2& b);
Mat2 operator-(Mat2 a, const Mat2& b);
Mat2 operator*(Complex s, Mat2 a);
Mat2 operator*(Mat2 a, Complex s);
Mat2 operator*(const Mat2& a, const Mat2& b);

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 dagger(const Mat2& a);
Complex trace(const Mat2& a);
Complex det(const Mat2& a);

/// Largest absolute entry. The canonical matrix-defect norm of the library.
double max_norm(const Mat2& a);

/// ‖A†A − I‖_max.
double unitarity_defect(const Mat2& a);

/// Coefficients of I, σx, σy, σz.
struct PauliVector {
    Complex c0{0.0}, cx{0.0}, cy{0.0}, cz{0.0};

    PauliVector& operator+=(const PauliVector& o);
};

PauliVector operator+(PauliVector a, const PauliVector& b);
PauliVector operator-(PauliVector a, const PauliVector& b);
PauliVector operator*(double s, PauliVector a);

Mat2 to_matrix(const PauliVector& p);
PauliVector to_pauli(const Mat2& m);

/// Largest absolute coefficient.
double max_norm(const PauliVector& p);

/// Euclidean length of (cx, cy, cz); meaningful for Hermitian (real) vectors.
double vector_norm(const PauliVector& p);

struct Vec3 {
    double x{0.0}, y{0.0}, z{0.0};
};

/// I cos φ + i (n·σ) sin φ. Throws InputError unless ‖n‖ = 1 within 1e-12.
Mat2 pauli_exponential(double phi, const Vec3& n);

/// exp(−i P) for a Pauli vector with real coefficients (a Hermitian generator).
/// The zero vector maps to the identity.
Mat2 exp_minus_i(const PauliVector& p);

/// Pauli matrices.
Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();

struct QubitState {
    Complex a1{1.0}, a2{0.0};

    static constexpr QubitState on() { return {1.0, 0.0}; }
    static constexpr QubitState off() { return {0.0, 1.0}; }
};

QubitState operator*(const Mat2& u, const QubitState& s);
double norm_squared(const QubitState& s);

struct Populations {
    double p1{0.0}, p2{0.0};
};

/// Occupations of U·initial. Throws NumericalFailure when unitarity_defect(U) > 1e-8.
Populations probabilities(const Mat2& u, const QubitState& initial);

/// sin(x)/x with the removable singularity handled by its series below |x| < 1e-4.
double sinc(double x);

} // namespace kq
