#pragma once

// Pulse shapes, pulse sequences, system parameters and the interaction in both
// pictures. Units: ħ = 1, time in ps, energies in rad/ps.

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kq/su2.hpp"

namespace kq {

/// ħ in eV·ps, used only to convert level splittings given in eV.
inline constexpr double kHbarEvPs = 6.582119569e-4;

/// Gaussian pulses are treated as zero outside center ± kDefaultWindowSigma·τ.
inline constexpr double kDefaultWindowSigma = 6.0;

/// Level splitting of H0 = −γσz, carried as γ = ΔE/2ħ.
class SystemParams {
public:
    SystemParams() = default;

    static SystemParams from_gamma(double gamma);
    /// T_ΔE = π/γ. A non-finite Rabi time means a degenerate qubit (γ = 0).
    static SystemParams from_rabi_time(double rabi_time_ps);
    static SystemParams from_splitting_ev(double delta_e_ev);

    /// 2s–2p hydrogen with T_ΔE = 972 ps.
    static SystemParams hydrogen_2s2p();
    /// γ = 1 rad per time unit.
    static SystemParams unit();

    double gamma() const { return gamma_; }
    double rabi_time() const { return rabi_time_; }
    /// ΔE in rad/ps (ħ = 1), i.e. 2γ.
    double splitting() const { return 2.0 * gamma_; }

private:
    explicit SystemParams(double gamma);

    double gamma_{0.0};
    double rabi_time_{std::numeric_limits<double>::infinity()};
};

enum class PulseShape { ideal_kick, gaussian, rectangular };

std::string to_string(PulseShape shape);
PulseShape parse_pulse_shape(const std::string& name);

/// A single pulse of signed integrated strength α centered at `center`.
///
/// gaussian:    V(t) = α/(√π τ) exp(−(t − T_k)²/τ²)
/// rectangular: V(t) = α/τ on [T_k − τ/2, T_k + τ/2]
/// ideal_kick:  V(t) = α δ(t − T_k); τ is ignored
struct Pulse {
    PulseShape shape{PulseShape::gaussian};
    double alpha{0.0};
    double tau{0.0};
    double center{0.0};

    static Pulse kick(double alpha, double center);
    static Pulse gaussian(double alpha, double tau, double center);
    static Pulse rectangular(double alpha, double tau, double center);

    /// Throws InputError for a non-positive width on a finite shape or non-finite fields.
    void validate() const;

    bool is_kick() const { return shape == PulseShape::ideal_kick; }

    /// Instantaneous V(t). Throws UnsupportedEvaluation for ideal kicks.
    double value(double t) const;
    /// dV/dt. Rectangular pulses report 0; their edges are discontinuities.
    double derivative(double t) const;

    /// ∫_{t0}^{t1} V dt. Exact for every shape; a kick counts when t0 ≤ T_k < t1.
    double strength_between(double t0, double t1) const;
    /// ∫_{t0}^{t1} (t − T_k) V dt.
    double first_moment_between(double t0, double t1) const;

    /// Interval outside which V is treated as zero. A kick has zero extent.
    std::pair<double, double> support(double window_sigma = kDefaultWindowSigma) const;
};

class PulseSequence {
public:
    PulseSequence() = default;
    PulseSequence(std::initializer_list<Pulse> pulses);
    explicit PulseSequence(std::vector<Pulse> pulses);

    /// +α at t1 and −α at t2 with a common shape and width.
    static PulseSequence kick_antikick(PulseShape shape, double alpha, double tau, double t1,
                                       double t2);

    void add(const Pulse& p);

    const std::vector<Pulse>& pulses() const { return pulses_; }
    bool empty() const { return pulses_.empty(); }
    bool has_kicks() const;
    bool has_finite_pulses() const;
    /// Smallest width among finite pulses, or +inf.
    double min_tau() const;

    /// Sum of pulse values with gaussian tails cut beyond the window.
    double windowed_value(double t, double window_sigma = kDefaultWindowSigma) const;
    /// Value at t of the finite pulses whose support contains `probe`. The integrator
    /// passes a segment midpoint so edge evaluations stay on the segment's side.
    double segment_value(double t, double probe, double window_sigma = kDefaultWindowSigma) const;
    /// True when some finite pulse's support overlaps the open interval (t0, t1).
    bool active_between(double t0, double t1, double window_sigma = kDefaultWindowSigma) const;

private:
    std::vector<Pulse> pulses_;
};

/// Phase angles of a pulse as seen at time t, plus the derived ξ and α′.
struct PhaseAngles {
    double alpha{0.0};
    double beta{0.0};
    double gamma_t{0.0};
    double xi{0.0};
    double alpha_prime{0.0};
};

/// Two pulses at t1 ≤ t2.
struct DoubleKickParams {
    double t1{0.0};
    double t2{0.0};

    static DoubleKickParams make(double t1, double t2);

    double ts() const { return t2 - t1; }
    double tbar() const { return 0.5 * (t1 + t2); }
    double zeta(double gamma, double t) const { return gamma * (t - ts()); }
};

/// Σ V_k(t). Throws UnsupportedEvaluation when the sequence contains an ideal kick.
double v_of_t(const PulseSequence& seq, double t);

/// ∫_{t0}^{t1} V dt, analytic per shape. Throws InputError when t1 < t0.
double integrated_strength(const PulseSequence& seq, double t0, double t1);

PhaseAngles phase_angles(const SystemParams& params, const Pulse& pulse, double t);

/// e^{iH0t} V(t) e^{−iH0t} = V(t) (σx cos 2γt + σy sin 2γt).
PauliVector v_interaction_picture(const SystemParams& params, const PulseSequence& seq, double t);

/// ∫_0^t V_I dt for a single gaussian or kick fully inside [0, t]:
/// α e^{−β²} (σx cos 2γT_k + σy sin 2γT_k). Throws DomainError otherwise.
PauliVector averaged_interaction_single(const SystemParams& params, const Pulse& pulse, double t,
                                        double window_sigma = kDefaultWindowSigma);

/// ∫_0^t V_I dt after a ±α pulse pair:
/// 2α e^{−β²} sin(γT_s) (σx sin 2γT̄ − σy cos 2γT̄).
PauliVector averaged_interaction_double(const SystemParams& params, const DoubleKickParams& dk,
                                        double alpha, double beta);

/// ∫_0^t V dt σx (Schrödinger picture).
PauliVector averaged_interaction_schrodinger(const PulseSequence& seq, double t);

} // namespace kq
