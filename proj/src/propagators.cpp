#include "kq/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "kq/errors.hpp"
#include "kq/quadrature.hpp"

namespace kq {

namespace {

Complex phase(double angle) { return std::polar(1.0, angle); }

// Breakpoints of V on [a, b]: interval ends, pulse centers and support edges.
std::vector<double> pulse_breakpoints(const PulseSequence& seq, double a, double b)
{
    std::vector<double> pts{a, b};
    for (const auto& p : seq.pulses()) {
        const auto [lo, hi] = p.support();
        for (double x : {lo, p.center, hi}) {
            if (a < x && x < b) {
                pts.push_back(x);
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace

Mat2 free_propagator_phase(double gamma_t)
{
    return Mat2::diagonal(phase(gamma_t), phase(-gamma_t));
}

Mat2 free_propagator(const SystemParams& params, double t)
{
    return free_propagator_phase(params.gamma() * t);
}

Mat2 degenerate_propagator(double alpha)
{
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    return {c, Complex{0.0, -s}, Complex{0.0, -s}, c};
}

Mat2 no_to_schrodinger(double alpha_running, double gamma_t)
{
    const double xi = std::hypot(alpha_running, gamma_t);
    const double c = std::cos(xi);
    const double s = sinc(xi);
    const Complex off{0.0, -alpha_running * s};
    return {Complex{c, gamma_t * s}, off, off, Complex{c, -gamma_t * s}};
}

Mat2 no_to_interaction_single(double alpha, double beta, double gamma_tk)
{
    const double a = alpha * std::exp(-beta * beta);
    const double c = std::cos(a);
    const double s = std::sin(a);
    return {c, -kI * s * phase(-2.0 * gamma_tk), -kI * s * phase(2.0 * gamma_tk), c};
}

Mat2 no_to_interaction_double(double alpha, double beta, double gamma, const DoubleKickParams& dk)
{
    const double a = 2.0 * alpha * std::exp(-beta * beta) * std::sin(gamma * dk.ts());
    const double c = std::cos(a);
    const double s = std::sin(a);
    const double tb = 2.0 * gamma * dk.tbar();
    return {c, s * phase(-tb), -s * phase(tb), c};
}

Mat2 kicked_propagator(double alpha, double gamma, double tk, double t)
{
    if (!(t > tk)) {
        throw DomainError("kicked_propagator: observation time must follow the kick");
    }
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    const double skew = gamma * (t - 2.0 * tk);
    return {c * phase(gamma * t), -kI * s * phase(skew), -kI * s * phase(-skew),
            c * phase(-gamma * t)};
}

Mat2 kick_antikick_propagator(double alpha, double gamma, const DoubleKickParams& dk, double t)
{
    if (!(t > dk.t2)) {
        throw DomainError("kick_antikick_propagator: observation time must follow both kicks");
    }
    const double gts = gamma * dk.ts();
    const double c = std::cos(gts);
    const double s = std::sin(gts);
    const double c2a = std::cos(2.0 * alpha);
    const double off = s * std::sin(2.0 * alpha);
    const double zeta = dk.zeta(gamma, t);
    const double skew = gamma * (t - 2.0 * dk.tbar());
    return {phase(zeta) * Complex{c, s * c2a}, off * phase(skew), -off * phase(-skew),
            phase(-zeta) * Complex{c, -s * c2a}};
}

Mat2 rectangular_exact(double alpha, double beta, double gamma, double tk, double t)
{
    const double ap = std::hypot(alpha, beta);
    const double c = std::cos(ap);
    const double s = sinc(ap);
    const double skew = gamma * (t - 2.0 * tk);
    const Complex off = -kI * alpha * s;
    return {phase(gamma * t - beta) * Complex{c, beta * s}, off * phase(skew), off * phase(-skew),
            phase(-gamma * t + beta) * Complex{c, -beta * s}};
}

double g_factor_quadrature(PulseShape shape, double alpha)
{
    const double edge = std::cos(0.5 * alpha);
    const double edge2 = edge * edge;
    // Work in u = (t − T_k)/τ; the integrand is even in u.
    switch (shape) {
    case PulseShape::ideal_kick:
        return 0.0;
    case PulseShape::gaussian: {
        auto f = [&](double u) {
            const double c = std::cos(0.5 * alpha * std::erf(u));
            return c * c - edge2;
        };
        return 4.0 * integrate_adaptive(f, 0.0, kDefaultWindowSigma, 1e-13);
    }
    case PulseShape::rectangular: {
        auto f = [&](double u) {
            const double c = std::cos(alpha * u);
            return c * c - edge2;
        };
        return 4.0 * integrate_adaptive(f, 0.0, 0.5, 1e-13);
    }
    }
    return 0.0;
}

double g_factor(PulseShape shape, double alpha)
{
    if (shape == PulseShape::rectangular) {
        if (std::abs(alpha) < 1e-4) {
            const double a2 = alpha * alpha;
            return a2 / 3.0 - a2 * a2 / 30.0;
        }
        return std::sin(alpha) / alpha - std::cos(alpha);
    }
    return g_factor_quadrature(shape, alpha);
}

Mat2 kick_correction_leading(double alpha, double beta, double gamma, double t, PulseShape shape)
{
    const Complex coeff = kI * beta * g_factor(shape, alpha);
    return Mat2::diagonal(coeff * phase(gamma * t), -coeff * phase(-gamma * t));
}

Mat2 kick_correction_expansion(const Pulse& pulse, const SystemParams& params, double t)
{
    if (pulse.is_kick() || pulse.alpha == 0.0) {
        return Mat2::zero();
    }
    const double gamma = params.gamma();
    const double de = params.splitting();
    const double tk = pulse.center;
    const double half = 0.5 * pulse.alpha;
    const auto [lo, hi] = pulse.support();

    auto running = [&](double s) {
        return s >= tk ? pulse.strength_between(tk, s) : -pulse.strength_between(s, tk);
    };
    auto diag_integrand = [&](double s) {
        const double a = running(s);
        return half * half - a * a;
    };
    auto off_integrand = [&](double s) {
        const double d = s - tk;
        return pulse.value(s) * d * d;
    };
    const double i1 =
        integrate_adaptive(diag_integrand, lo, tk, 1e-13) + integrate_adaptive(diag_integrand, tk, hi, 1e-13);
    const double i2 =
        integrate_adaptive(off_integrand, lo, tk, 1e-13) + integrate_adaptive(off_integrand, tk, hi, 1e-13);

    const Complex d1 = kI * de * i1;
    const Complex o1 = kI * 0.5 * de * de * i2;
    const double skew = gamma * (t - 2.0 * tk);
    return {d1 * phase(gamma * t), o1 * phase(skew), o1 * phase(-skew), -d1 * phase(-gamma * t)};
}

AdiabaticResult adiabatic_propagator(const PulseSequence& seq, const SystemParams& params, double t)
{
    if (seq.has_kicks()) {
        throw UnsupportedEvaluation("adiabatic_propagator: ideal kicks are not slowly varying");
    }
    const double gamma = params.gamma();
    const double de = params.splitting();

    auto half_omega = [&](double s) { return std::hypot(gamma, v_of_t(seq, s)); };
    auto mixing = [&](double s) { return std::atan2(v_of_t(seq, s), gamma); };

    AdiabaticResult r;
    const double a = std::min(0.0, t);
    const double b = std::max(0.0, t);
    const auto pts = pulse_breakpoints(seq, a, b);
    double theta = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        theta += integrate_adaptive(half_omega, pts[i], pts[i + 1], 1e-10);
    }
    r.phase.theta = t >= 0.0 ? theta : -theta;
    r.phase.omega_t = 2.0 * half_omega(t);
    r.phase.phi_t = mixing(t);
    r.phase.phi_0 = mixing(0.0);
    r.phase.phi_plus = 0.5 * (r.phase.phi_t + r.phase.phi_0);
    r.phase.phi_minus = 0.5 * (r.phase.phi_t - r.phase.phi_0);

    const double ct = std::cos(r.phase.theta);
    const double st = std::sin(r.phase.theta);
    const double cp = std::cos(r.phase.phi_plus);
    const double sp = std::sin(r.phase.phi_plus);
    const double cm = std::cos(r.phase.phi_minus);
    const double sm = std::sin(r.phase.phi_minus);
    r.u = {Complex{ct * cm, st * cp}, Complex{ct * sm, -st * sp}, Complex{-ct * sm, -st * sp},
           Complex{ct * cm, -st * cp}};

    // Validity monitor: ħ|V̇|ΔE ≪ Ω³, sampled on a fine grid plus the points of
    // steepest gaussian slope.
    if (gamma > 0.0) {
        for (const auto& p : seq.pulses()) {
            if (p.shape == PulseShape::rectangular) {
                const auto [lo, hi] = p.support();
                if ((a < lo && lo < b) || (a < hi && hi < b)) {
                    r.validity_ratio = std::numeric_limits<double>::infinity();
                }
            }
        }
        auto ratio = [&](double s) {
            double vdot = 0.0;
            for (const auto& p : seq.pulses()) {
                vdot += p.derivative(s);
            }
            const double h = half_omega(s);
            return std::abs(vdot) * de / (8.0 * h * h * h);
        };
        std::vector<double> probes;
        constexpr int kSamples = 4000;
        for (int i = 0; i <= kSamples; ++i) {
            probes.push_back(a + (b - a) * i / kSamples);
        }
        for (const auto& p : seq.pulses()) {
            const double off = p.tau / std::numbers::sqrt2;
            for (double x : {p.center - off, p.center + off}) {
                if (a <= x && x <= b) {
                    probes.push_back(x);
                }
            }
        }
        for (double x : probes) {
            r.validity_ratio = std::max(r.validity_ratio, ratio(x));
        }
    }
    return r;
}

Mat2 floquet_period_matrix(double alpha, double gamma_period)
{
    return free_propagator_phase(gamma_period) * degenerate_propagator(alpha);
}

FloquetResult floquet_eigenphases(double alpha, double gamma_period)
{
    FloquetResult r;
    const double c = std::clamp(std::cos(alpha) * std::cos(gamma_period), -1.0, 1.0);
    r.chi = std::acos(c);
    r.eigenvalues = {phase(r.chi), phase(-r.chi)};

    const Mat2 m = floquet_period_matrix(alpha, gamma_period);
    const std::array<QubitState, 2> basis{QubitState::on(), QubitState::off()};
    for (std::size_t k = 0; k < 2; ++k) {
        const Complex lambda = r.eigenvalues[k];
        // Rows of (M − λ)v = 0 give two candidate null vectors; take the better conditioned.
        QubitState v1{m.m12, lambda - m.m11};
        QubitState v2{lambda - m.m22, m.m21};
        QubitState v = norm_squared(v1) >= norm_squared(v2) ? v1 : v2;
        const double n = std::sqrt(norm_squared(v));
        if (n < 1e-12) {
            v = basis[k];
        } else {
            v.a1 /= n;
            v.a2 /= n;
        }
        const Complex lead = std::abs(v.a1) > 1e-14 ? v.a1 : v.a2;
        const Complex fix = std::conj(lead) / std::abs(lead);
        v.a1 *= fix;
        v.a2 *= fix;
        r.eigenvectors[k] = v;
    }
    return r;
}

Mat2 leading_to_commutator(const Pulse& pulse, const SystemParams& params, double t)
{
    const double strength = pulse.strength_between(0.0, t);
    const double moment = pulse.first_moment_between(0.0, t);
    const double weighted = (t - 2.0 * pulse.center) * strength - 2.0 * moment;
    // iγ σy · ∫(t − 2t')V dt'
    const double g = params.gamma() * weighted;
    return {0.0, g, -g, 0.0};
}

} // namespace kq
