#pragma once

// Fixed-step fourth-order Runge–Kutta integration of i da/dt = H(t) a with
// H(t) = −γσz + V(t)σx, and the numerically built no-time-ordering evolutions.
//
// The time axis is cut at pulse support edges, kick times and requested sample
// times. Segments where no finite pulse is active are advanced with the exact
// free propagator; ideal kicks are exact e^{−iασx} factors between segments.
// States are left-continuous at a kick: the sample at T_k is the pre-kick value.

#include <span>
#include <vector>

#include "kq/pulse.hpp"
#include "kq/su2.hpp"

namespace kq {

struct IntegratorConfig {
    /// Fixed step in ps; 0 selects default_time_step().
    double dt{0.0};
    double window_sigma{kDefaultWindowSigma};
    /// Largest tolerated norm (or unitarity) defect before NumericalFailure.
    double unitarity_tolerance{1e-8};
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<QubitState> states;
    std::vector<double> p1;
    std::vector<double> p2;

    std::size_t size() const { return times.size(); }
};

struct PropagatorSeries {
    std::vector<double> times;
    std::vector<Mat2> u;
};

/// min(τ_min/50, T_ΔE/2000); falls back to span/1000 when neither scale exists.
double default_time_step(const PulseSequence& seq, const SystemParams& params, double span);

/// Trajectory sampled at every step from t0 to t1 (t1 < t0 integrates backwards).
TimeSeries rk4_evolve(const PulseSequence& seq, const SystemParams& params,
                      const QubitState& initial, double t0, double t1,
                      const IntegratorConfig& cfg = {});

/// Trajectory sampled only at `times` (ascending; the first entry is the start time).
TimeSeries rk4_evolve_at(const PulseSequence& seq, const SystemParams& params,
                         const QubitState& initial, std::span<const double> times,
                         const IntegratorConfig& cfg = {});

/// U(t1 ← t0), columns evolved from the basis states.
Mat2 rk4_propagator(const PulseSequence& seq, const SystemParams& params, double t0, double t1,
                    const IntegratorConfig& cfg = {});

/// U(t ← times.front()) at every entry of `times` (ascending).
PropagatorSeries rk4_propagator_at(const PulseSequence& seq, const SystemParams& params,
                                   std::span<const double> times,
                                   const IntegratorConfig& cfg = {});

/// ∫_{t0}^{t1} V dt by windowed trapezoid + Richardson extrapolation; kicks exactly.
double integrated_strength_numeric(const PulseSequence& seq, double t0, double t1,
                                   const IntegratorConfig& cfg = {});

/// ∫_0^t V_I dt by the same quadrature.
PauliVector interaction_average_numeric(const SystemParams& params, const PulseSequence& seq,
                                        double t, const IntegratorConfig& cfg = {});

/// exp(−i(H0 + V̄)t) with V̄ t the numerically integrated running strength.
Mat2 evolve_no_to_schrodinger_numeric(const PulseSequence& seq, const SystemParams& params,
                                      double t, const IntegratorConfig& cfg = {});

/// exp(−i ∫_0^t V_I dt) in the interaction picture.
Mat2 evolve_no_to_interaction_numeric(const PulseSequence& seq, const SystemParams& params,
                                      double t, const IntegratorConfig& cfg = {});

/// Largest element difference of U(t ← 0) between step dt and dt/2. Never throws on
/// norm loss; a coarse step shows up as a large return value.
double convergence_check(const PulseSequence& seq, const SystemParams& params, double t,
                         const IntegratorConfig& cfg = {});

} // namespace kq
