#pragma once

// Closed-form time-evolution matrices of a two-level system under
// H(t) = −γσz + V(t)σx, finite-width corrections to the kicked limit, the
// adiabatic propagator and Floquet analysis of a periodically kicked qubit.

#include <array>

#include "kq/pulse.hpp"
#include "kq/su2.hpp"

namespace kq {

/// diag(e^{iγt}, e^{−iγt}).
Mat2 free_propagator(const SystemParams& params, double t);
Mat2 free_propagator_phase(double gamma_t);

/// Degenerate qubit (ΔE = 0): e^{−iασx}.
Mat2 degenerate_propagator(double alpha);

/// No time ordering, Schrödinger picture: e^{iγtσz − iασx}, with α the running
/// integral ∫_0^t V dt.
Mat2 no_to_schrodinger(double alpha_running, double gamma_t);

/// No time ordering, interaction picture, after a single gaussian (or kick, β = 0).
Mat2 no_to_interaction_single(double alpha, double beta, double gamma_tk);

/// No time ordering, interaction picture, after a ±α pulse pair.
Mat2 no_to_interaction_double(double alpha, double beta, double gamma, const DoubleKickParams& dk);

/// Single ideal kick at T_k observed at t > T_k. Throws DomainError otherwise.
Mat2 kicked_propagator(double alpha, double gamma, double tk, double t);

/// Kick +α at t1 followed by −α at t2, observed at t > t2. Throws DomainError otherwise.
Mat2 kick_antikick_propagator(double alpha, double gamma, const DoubleKickParams& dk, double t);

/// Exact propagator for a rectangular pulse of width τ = β/γ centered at T_k,
/// valid once the pulse has ended.
Mat2 rectangular_exact(double alpha, double beta, double gamma, double tk, double t);

/// Shape factor g(α) of the O(β) kicked-limit correction.
/// Rectangular uses sin α/α − cos α; gaussian uses adaptive quadrature.
double g_factor(PulseShape shape, double alpha);

/// g(α) = (2/τ) ∫ [cos²(∫_{T_k}^t V) − cos²(α/2)] dt evaluated by quadrature for any
/// finite shape (the rectangular closed form is a check of this route).
double g_factor_quadrature(PulseShape shape, double alpha);

/// iβ g(α) diag(e^{iγt}, −e^{−iγt}).
Mat2 kick_correction_leading(double alpha, double beta, double gamma, double t, PulseShape shape);

/// Joint small-(α, β) expansion of U − U^K: the diagonal βα²-type term plus the
/// off-diagonal β²α-type term, both integrals done by quadrature.
Mat2 kick_correction_expansion(const Pulse& pulse, const SystemParams& params, double t);

struct AdiabaticPhase {
    double omega_t{0.0};   ///< Ω(t) = √(ΔE² + 4V²)
    double theta{0.0};     ///< ∫_0^t Ω/2 dt
    double phi_t{0.0};
    double phi_0{0.0};
    double phi_plus{0.0};
    double phi_minus{0.0};
};

struct AdiabaticResult {
    Mat2 u;
    AdiabaticPhase phase;
    /// max over [0, t] of |V̇| ΔE / Ω³; the approximation needs this ≪ 1.
    double validity_ratio{0.0};
};

/// Adiabatic propagator from the instantaneous splitting and mixing angle.
/// Throws UnsupportedEvaluation for sequences with ideal kicks.
AdiabaticResult adiabatic_propagator(const PulseSequence& seq, const SystemParams& params,
                                     double t);

struct FloquetResult {
    double chi{0.0};                        ///< in [0, π]
    std::array<Complex, 2> eigenvalues;     ///< e^{+iχ}, e^{−iχ}
    std::array<QubitState, 2> eigenvectors; ///< matching eigenvalues, first nonzero entry real > 0
};

/// One period: a kick of strength α followed by free evolution over the period.
Mat2 floquet_period_matrix(double alpha, double gamma_period);

/// χ = arccos(cos α cos γT) and the eigenvectors of the one-period matrix.
FloquetResult floquet_eigenphases(double alpha, double gamma_period);

/// Leading time-ordering correction U − U⁰ ≈ iγ σy ∫_0^t (t − 2t') V(t') dt'.
Mat2 leading_to_commutator(const Pulse& pulse, const SystemParams& params, double t);

} // namespace kq
