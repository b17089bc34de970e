#include "kq/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kq/errors.hpp"

namespace kq {

namespace {

// erf(x1) − erf(x0) without cancellation when both arguments sit on the same tail.
double erf_difference(double x0, double x1)
{
    if (x0 > 0.0 && x1 > 0.0) {
        return std::erfc(x0) - std::erfc(x1);
    }
    if (x0 < 0.0 && x1 < 0.0) {
        return std::erfc(-x1) - std::erfc(-x0);
    }
    return std::erf(x1) - std::erf(x0);
}

} // namespace

SystemParams::SystemParams(double gamma)
    : gamma_(gamma)
    , rabi_time_(gamma > 0.0 ? std::numbers::pi / gamma : std::numeric_limits<double>::infinity())
{
}

SystemParams SystemParams::from_gamma(double gamma)
{
    if (!std::isfinite(gamma) || gamma < 0.0) {
        throw InputError("gamma must be finite and non-negative");
    }
    return SystemParams(gamma);
}

SystemParams SystemParams::from_rabi_time(double rabi_time_ps)
{
    if (std::isinf(rabi_time_ps) && rabi_time_ps > 0.0) {
        return SystemParams(0.0);
    }
    if (!(rabi_time_ps > 0.0)) {
        throw InputError("Rabi time must be positive");
    }
    SystemParams p(std::numbers::pi / rabi_time_ps);
    p.rabi_time_ = rabi_time_ps;
    return p;
}

SystemParams SystemParams::from_splitting_ev(double delta_e_ev)
{
    if (!std::isfinite(delta_e_ev) || delta_e_ev < 0.0) {
        throw InputError("level splitting must be finite and non-negative");
    }
    return SystemParams(delta_e_ev / (2.0 * kHbarEvPs));
}

SystemParams SystemParams::hydrogen_2s2p() { return from_rabi_time(972.0); }

SystemParams SystemParams::unit() { return SystemParams(1.0); }

std::string to_string(PulseShape shape)
{
    switch (shape) {
    case PulseShape::ideal_kick:
        return "kick";
    case PulseShape::gaussian:
        return "gaussian";
    case PulseShape::rectangular:
        return "rectangular";
    }
    return "unknown";
}

PulseShape parse_pulse_shape(const std::string& name)
{
    if (name == "kick" || name == "ideal_kick" || name == "delta") {
        return PulseShape::ideal_kick;
    }
    if (name == "gaussian" || name == "gauss") {
        return PulseShape::gaussian;
    }
    if (name == "rectangular" || name == "rect") {
        return PulseShape::rectangular;
    }
    throw InputError("unknown pulse shape '" + name + "'");
}

Pulse Pulse::kick(double alpha, double center)
{
    Pulse p{PulseShape::ideal_kick, alpha, 0.0, center};
    p.validate();
    return p;
}

Pulse Pulse::gaussian(double alpha, double tau, double center)
{
    Pulse p{PulseShape::gaussian, alpha, tau, center};
    p.validate();
    return p;
}

Pulse Pulse::rectangular(double alpha, double tau, double center)
{
    Pulse p{PulseShape::rectangular, alpha, tau, center};
    p.validate();
    return p;
}

void Pulse::validate() const
{
    if (!std::isfinite(alpha) || !std::isfinite(center)) {
        throw InputError("pulse strength and center must be finite");
    }
    if (!is_kick() && !(tau > 0.0 && std::isfinite(tau))) {
        throw InputError(to_string(shape) + " pulse needs a positive width");
    }
}

double Pulse::value(double t) const
{
    switch (shape) {
    case PulseShape::ideal_kick:
        throw UnsupportedEvaluation(
            "an ideal kick has no pointwise value; use the analytic kicked propagators");
    case PulseShape::gaussian: {
        const double s = (t - center) / tau;
        return alpha / (std::sqrt(std::numbers::pi) * tau) * std::exp(-s * s);
    }
    case PulseShape::rectangular:
        return std::abs(t - center) <= 0.5 * tau ? alpha / tau : 0.0;
    }
    return 0.0;
}

double Pulse::derivative(double t) const
{
    switch (shape) {
    case PulseShape::ideal_kick:
        throw UnsupportedEvaluation("an ideal kick has no pointwise derivative");
    case PulseShape::gaussian:
        return -2.0 * (t - center) / (tau * tau) * value(t);
    case PulseShape::rectangular:
        return 0.0;
    }
    return 0.0;
}

double Pulse::strength_between(double t0, double t1) const
{
    switch (shape) {
    case PulseShape::ideal_kick:
        return (t0 <= center && center < t1) ? alpha : 0.0;
    case PulseShape::gaussian:
        return 0.5 * alpha * erf_difference((t0 - center) / tau, (t1 - center) / tau);
    case PulseShape::rectangular: {
        const double a = std::max(t0, center - 0.5 * tau);
        const double b = std::min(t1, center + 0.5 * tau);
        return b > a ? alpha / tau * (b - a) : 0.0;
    }
    }
    return 0.0;
}

double Pulse::first_moment_between(double t0, double t1) const
{
    switch (shape) {
    case PulseShape::ideal_kick:
        return 0.0;
    case PulseShape::gaussian: {
        const double s0 = (t0 - center) / tau;
        const double s1 = (t1 - center) / tau;
        return alpha * tau / (2.0 * std::sqrt(std::numbers::pi)) *
               (std::exp(-s0 * s0) - std::exp(-s1 * s1));
    }
    case PulseShape::rectangular: {
        const double a = std::max(t0, center - 0.5 * tau) - center;
        const double b = std::min(t1, center + 0.5 * tau) - center;
        return b > a ? alpha / tau * 0.5 * (b * b - a * a) : 0.0;
    }
    }
    return 0.0;
}

std::pair<double, double> Pulse::support(double window_sigma) const
{
    switch (shape) {
    case PulseShape::ideal_kick:
        return {center, center};
    case PulseShape::gaussian:
        return {center - window_sigma * tau, center + window_sigma * tau};
    case PulseShape::rectangular:
        return {center - 0.5 * tau, center + 0.5 * tau};
    }
    return {center, center};
}

PulseSequence::PulseSequence(std::initializer_list<Pulse> pulses)
    : PulseSequence(std::vector<Pulse>(pulses))
{
}

PulseSequence::PulseSequence(std::vector<Pulse> pulses)
    : pulses_(std::move(pulses))
{
    for (const auto& p : pulses_) {
        p.validate();
    }
}

PulseSequence PulseSequence::kick_antikick(PulseShape shape, double alpha, double tau, double t1,
                                           double t2)
{
    return PulseSequence{Pulse{shape, alpha, tau, t1}, Pulse{shape, -alpha, tau, t2}};
}

void PulseSequence::add(const Pulse& p)
{
    p.validate();
    pulses_.push_back(p);
}

bool PulseSequence::has_kicks() const
{
    return std::any_of(pulses_.begin(), pulses_.end(), [](const Pulse& p) { return p.is_kick(); });
}

bool PulseSequence::has_finite_pulses() const
{
    return std::any_of(pulses_.begin(), pulses_.end(),
                       [](const Pulse& p) { return !p.is_kick(); });
}

double PulseSequence::min_tau() const
{
    double tau = std::numeric_limits<double>::infinity();
    for (const auto& p : pulses_) {
        if (!p.is_kick()) {
            tau = std::min(tau, p.tau);
        }
    }
    return tau;
}

double PulseSequence::windowed_value(double t, double window_sigma) const
{
    double v = 0.0;
    for (const auto& p : pulses_) {
        if (p.is_kick()) {
            continue;
        }
        const auto [lo, hi] = p.support(window_sigma);
        if (lo <= t && t <= hi) {
            v += p.value(t);
        }
    }
    return v;
}

double PulseSequence::segment_value(double t, double probe, double window_sigma) const
{
    double v = 0.0;
    for (const auto& p : pulses_) {
        if (p.is_kick()) {
            continue;
        }
        const auto [lo, hi] = p.support(window_sigma);
        if (lo <= probe && probe <= hi) {
            v += p.shape == PulseShape::rectangular ? p.alpha / p.tau : p.value(t);
        }
    }
    return v;
}

bool PulseSequence::active_between(double t0, double t1, double window_sigma) const
{
    const double a = std::min(t0, t1);
    const double b = std::max(t0, t1);
    return std::any_of(pulses_.begin(), pulses_.end(), [&](const Pulse& p) {
        if (p.is_kick()) {
            return false;
        }
        const auto [lo, hi] = p.support(window_sigma);
        return lo < b && a < hi;
    });
}

DoubleKickParams DoubleKickParams::make(double t1, double t2)
{
    if (!(t2 >= t1)) {
        throw InputError("double kick requires t2 >= t1");
    }
    return {t1, t2};
}

double v_of_t(const PulseSequence& seq, double t)
{
    double v = 0.0;
    for (const auto& p : seq.pulses()) {
        v += p.value(t);
    }
    return v;
}

double integrated_strength(const PulseSequence& seq, double t0, double t1)
{
    if (t1 < t0) {
        throw InputError("integrated_strength: t1 < t0");
    }
    double a = 0.0;
    for (const auto& p : seq.pulses()) {
        a += p.strength_between(t0, t1);
    }
    return a;
}

PhaseAngles phase_angles(const SystemParams& params, const Pulse& pulse, double t)
{
    PhaseAngles a;
    a.alpha = pulse.alpha;
    a.beta = pulse.is_kick() ? 0.0 : params.gamma() * pulse.tau;
    a.gamma_t = params.gamma() * t;
    a.xi = std::hypot(a.alpha, a.gamma_t);
    a.alpha_prime = std::hypot(a.alpha, a.beta);
    return a;
}

PauliVector v_interaction_picture(const SystemParams& params, const PulseSequence& seq, double t)
{
    const double v = v_of_t(seq, t);
    const double phase = 2.0 * params.gamma() * t;
    return {0.0, v * std::cos(phase), v * std::sin(phase), 0.0};
}

PauliVector averaged_interaction_single(const SystemParams& params, const Pulse& pulse, double t,
                                        double window_sigma)
{
    if (pulse.shape == PulseShape::rectangular) {
        throw InputError("averaged_interaction_single: closed form holds for gaussian or kick");
    }
    const auto [lo, hi] = pulse.support(window_sigma);
    const bool contained = pulse.is_kick() ? (0.0 <= pulse.center && pulse.center < t)
                                           : (0.0 <= lo && hi <= t);
    if (!contained) {
        throw DomainError("averaged_interaction_single: pulse is not contained in [0, t]");
    }
    const double beta = pulse.is_kick() ? 0.0 : params.gamma() * pulse.tau;
    const double magnitude = pulse.alpha * std::exp(-beta * beta);
    const double phase = 2.0 * params.gamma() * pulse.center;
    return {0.0, magnitude * std::cos(phase), magnitude * std::sin(phase), 0.0};
}

PauliVector averaged_interaction_double(const SystemParams& params, const DoubleKickParams& dk,
                                        double alpha, double beta)
{
    const double g = params.gamma();
    const double magnitude = 2.0 * alpha * std::exp(-beta * beta) * std::sin(g * dk.ts());
    const double phase = 2.0 * g * dk.tbar();
    return {0.0, magnitude * std::sin(phase), -magnitude * std::cos(phase), 0.0};
}

PauliVector averaged_interaction_schrodinger(const PulseSequence& seq, double t)
{
    const double a = t > 0.0 ? integrated_strength(seq, 0.0, t) : 0.0;
    return {0.0, a, 0.0, 0.0};
}

} // namespace kq
