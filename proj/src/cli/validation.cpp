#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "kq/cli.hpp"
#include "kq/errors.hpp"
#include "kq/integrator.hpp"
#include "kq/propagators.hpp"

namespace kq::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct Context {
    std::mt19937_64 rng;
    bool quick{false};
    std::string fault;

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    std::size_t samples(std::size_t full) const { return quick ? full / 10 : full; }
};

struct Outcome {
    bool passed{false};
    std::string detail;
};

std::string sci(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

Outcome bound(double worst, double tol, const std::string& what)
{
    return {worst <= tol, what + " " + sci(worst) + " (tol " + sci(tol) + ")"};
}

// The single-pulse interaction-picture formula, optionally broken on purpose.
Mat2 u0ipulse(const Context& ctx, double alpha, double beta, double gamma_tk)
{
    Mat2 u = no_to_interaction_single(alpha, beta, gamma_tk);
    if (ctx.fault == "u0ipulse-sign") {
        u.m12 = -u.m12;
        u.m21 = -u.m21;
    }
    return u;
}

Outcome check_unitarity(Context& ctx)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < ctx.samples(10000); ++i) {
        const double a = ctx.uniform(-4.0, 4.0);
        const double b = ctx.uniform(0.0, 2.0);
        const double g = ctx.uniform(0.0, 2.0);
        const double t1 = ctx.uniform(0.0, 5.0);
        const double t2 = t1 + ctx.uniform(0.0, 5.0);
        const double t = t2 + ctx.uniform(1e-3, 5.0);
        const auto dk = DoubleKickParams::make(t1, t2);
        for (const Mat2& u :
             {free_propagator_phase(g * t), degenerate_propagator(a), no_to_schrodinger(a, g * t),
              no_to_interaction_single(a, b, g * t1), no_to_interaction_double(a, b, g, dk),
              kicked_propagator(a, g, t1, t), kick_antikick_propagator(a, g, dk, t),
              rectangular_exact(a, b, g, t1, t), floquet_period_matrix(a, g * t)}) {
            worst = std::max(worst, unitarity_defect(u));
        }
    }
    return bound(worst, 1e-10, "max defect");
}

Outcome check_limit_web(Context& ctx)
{
    constexpr double eps = 1e-6;
    constexpr double tol = 1e-5;
    double worst = 0.0;
    std::string worst_name = "none";
    auto note = [&](const std::string& name, const Mat2& a, const Mat2& b) {
        const double d = max_norm(a - b);
        if (d > worst) {
            worst = d;
            worst_name = name;
        }
    };
    for (int i = 0; i < 20; ++i) {
        const double a = ctx.uniform(-2.0, 2.0);
        const double g = ctx.uniform(0.1, 2.0);
        const double tk = ctx.uniform(0.0, 3.0);
        const double t = tk + ctx.uniform(0.5, 3.0);
        note("no_to_schrodinger(gt->0)", no_to_schrodinger(a, eps), degenerate_propagator(a));
        note("no_to_schrodinger(a->0)", no_to_schrodinger(eps, g * t), free_propagator_phase(g * t));
        note("kick_antikick(Ts->0)",
             kick_antikick_propagator(a, g, DoubleKickParams::make(tk, tk + eps), t + eps),
             free_propagator_phase(g * (t + eps)));
        note("rectangular_exact(b->0)", rectangular_exact(a, eps, g, tk, t), kicked_propagator(a, g, tk, t));

        // Adiabatic limits on a flat-topped rectangular pulse covering [0, t].
        // The deviation is of order γ/V, so V is kept of order one.
        const double tau = 4.0 * t;
        const double v = ctx.uniform(0.5, 2.0);
        const PulseSequence flat{Pulse::rectangular(v * tau, tau, 0.5 * t)};
        note("adiabatic(dE->0)", adiabatic_propagator(flat, SystemParams::from_gamma(eps), t).u,
             degenerate_propagator(v * t));
        const PulseSequence weak{Pulse::gaussian(eps, 0.3, tk)};
        const auto sys = SystemParams::from_gamma(g);
        note("adiabatic(V->0)", adiabatic_propagator(weak, sys, t).u, free_propagator(sys, t));

        note("u0ipulse(b=0) vs kicked", u0ipulse(ctx, a, 0.0, g * tk),
             to_interaction_picture(sys, kicked_propagator(a, g, tk, t), t));
    }
    return {worst <= tol, "worst " + worst_name + " " + sci(worst) + " (tol " + sci(tol) + ")"};
}

Outcome check_interaction_kick(Context& ctx)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < ctx.samples(1000); ++i) {
        const double a = ctx.uniform(-kPi, kPi);
        const auto sys = SystemParams::from_gamma(ctx.uniform(0.0, 3.0));
        const double tk = ctx.uniform(0.0, 10.0);
        const double t = tk + ctx.uniform(1e-3, 10.0);
        const Mat2 ui = to_interaction_picture(sys, kicked_propagator(a, sys.gamma(), tk, t), t);
        worst = std::max(worst, max_norm(ui - u0ipulse(ctx, a, 0.0, sys.gamma() * tk)));
    }
    return bound(worst, 1e-12, "max |U_I - U_I0|");
}

Outcome check_closed_forms(Context& ctx)
{
    double worst = 0.0;
    const auto on = QubitState::on();
    for (std::size_t i = 0; i < ctx.samples(1000); ++i) {
        const double a = ctx.uniform(-kPi, kPi);
        const double b = ctx.uniform(0.0, 1.5);
        const double g = ctx.uniform(0.0, 2.0);
        const double t1 = ctx.uniform(0.0, 5.0);
        const double t2 = t1 + ctx.uniform(0.0, 5.0);
        const double t = t2 + ctx.uniform(1e-3, 5.0);
        const auto dk = DoubleKickParams::make(t1, t2);
        const auto single = p2_closed_forms_single(a, b, g * t);
        const auto dbl = p2_closed_forms_double(a, b, g * dk.ts());
        worst = std::max({worst,
                          std::abs(single.p2 - probabilities(kicked_propagator(a, g, t1, t), on).p2),
                          std::abs(single.p2_noto_s - probabilities(no_to_schrodinger(a, g * t), on).p2),
                          std::abs(single.p2_noto_i -
                                   probabilities(no_to_interaction_single(a, b, g * t1), on).p2),
                          std::abs(dbl.p2 - probabilities(kick_antikick_propagator(a, g, dk, t), on).p2),
                          std::abs(dbl.p2_noto_i -
                                   probabilities(no_to_interaction_double(a, b, g, dk), on).p2)});
    }
    return bound(worst, 1e-12, "max |dP2|");
}

Outcome check_noto_kick_antikick(Context& ctx)
{
    double worst = 0.0;
    const auto sys = SystemParams::hydrogen_2s2p();
    for (std::size_t i = 0; i < ctx.samples(200); ++i) {
        const double a = ctx.uniform(-kPi, kPi);
        const double t1 = ctx.uniform(0.0, 200.0);
        const double t2 = t1 + ctx.uniform(0.0, 972.0);
        const double t = t2 + ctx.uniform(1e-3, 200.0);
        const PulseSequence seq{Pulse::kick(a, t1), Pulse::kick(-a, t2)};
        const double analytic = p2_closed_forms_double(a, 0.0, sys.gamma() * (t2 - t1)).p2_noto_s;
        const double numeric =
            probabilities(evolve_no_to_schrodinger_numeric(seq, sys, t), QubitState::on()).p2;
        worst = std::max({worst, std::abs(analytic), numeric});
    }
    return bound(worst, 1e-12, "max P2_noTO");
}

Outcome check_floquet(Context& ctx)
{
    const int n = ctx.quick ? 10 : 50;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double a = -kPi + 2.0 * kPi * i / (n - 1);
            const double gt = -kPi + 2.0 * kPi * j / (n - 1);
            const auto r = floquet_eigenphases(a, gt);
            const Mat2 m = floquet_period_matrix(a, gt);
            // Roots of λ² − tr(M) λ + det(M), compared with e^{±iχ}.
            const Complex tr = trace(m);
            const Complex disc = std::sqrt(tr * tr - 4.0 * det(m));
            const Complex l1 = 0.5 * (tr + disc);
            const Complex l2 = 0.5 * (tr - disc);
            const double d = std::min(std::max(std::abs(l1 - r.eigenvalues[0]), std::abs(l2 - r.eigenvalues[1])),
                                      std::max(std::abs(l2 - r.eigenvalues[0]), std::abs(l1 - r.eigenvalues[1])));
            worst = std::max(worst, d);
            for (std::size_t k = 0; k < 2; ++k) {
                const QubitState mv = m * r.eigenvectors[k];
                worst = std::max({worst, std::abs(mv.a1 - r.eigenvalues[k] * r.eigenvectors[k].a1),
                                  std::abs(mv.a2 - r.eigenvalues[k] * r.eigenvectors[k].a2)});
            }
        }
    }
    return bound(worst, 1e-10, "max eigen residual");
}

Outcome check_time_reversal(Context& ctx)
{
    double worst = 0.0;
    const Mat2 id = Mat2::identity();
    for (std::size_t i = 0; i < ctx.samples(1000); ++i) {
        const double a = ctx.uniform(-kPi, kPi);
        const double gt = ctx.uniform(-5.0, 5.0);
        worst = std::max({worst, max_norm(free_propagator_phase(gt) * free_propagator_phase(-gt) - id),
                          max_norm(degenerate_propagator(a) * degenerate_propagator(-a) - id),
                          max_norm(no_to_schrodinger(a, gt) * no_to_schrodinger(-a, -gt) - id)});
    }
    return bound(worst, 1e-10, "max |U(-x)U(x) - I|");
}

Outcome check_rectangular_rk4(Context& ctx)
{
    double worst = 0.0;
    const auto sys = SystemParams::unit();
    for (int i = 0; i < (ctx.quick ? 2 : 5); ++i) {
        const double a = ctx.uniform(0.1, 1.5);
        const double beta = ctx.uniform(0.05, 1.0);
        const double tk = 2.0;
        const double t = 4.0;
        const PulseSequence seq{Pulse::rectangular(a, beta, tk)};
        IntegratorConfig cfg;
        cfg.dt = beta / 1e4;
        const Mat2 u = rk4_propagator(seq, sys, 0.0, t, cfg);
        worst = std::max(worst, max_norm(u - rectangular_exact(a, beta, 1.0, tk, t)));
    }
    return bound(worst, 1e-8, "max element error");
}

Outcome check_kicked_scaling(Context&)
{
    const auto sys = SystemParams::hydrogen_2s2p();
    const double alpha = kPi / 2.0;
    const auto ratios = logspace(1e-3, 3e-2, 8);
    std::vector<double> errors;
    for (double r : ratios) {
        const PulseSequence seq{Pulse::gaussian(alpha, r * sys.rabi_time(), 150.0)};
        const Mat2 u = rk4_propagator(seq, sys, 0.0, 300.0);
        errors.push_back(std::abs(probabilities(u, QubitState::on()).p2 - 1.0));
    }
    const auto fit = fit_power_law(ratios, errors, 2.0);
    return {fit.within(0.1), "slope " + std::to_string(fit.slope) + " (expected 2 +- 0.1)"};
}

Outcome check_fig1_endpoint(Context&)
{
    const auto sys = SystemParams::hydrogen_2s2p();
    const PulseSequence seq{Pulse::gaussian(kPi / 2.0, 10.0, 150.0)};
    const double p2 = probabilities(rk4_propagator(seq, sys, 0.0, 300.0), QubitState::on()).p2;
    return {std::abs(p2 - 0.9977) <= 2e-4, "P2(300 ps) = " + std::to_string(p2) + " (0.9977 +- 2e-4)"};
}

Outcome check_time_ordering_onset(Context&)
{
    const double g = 1.0;
    const auto sys = SystemParams::from_gamma(g);
    const auto dk = DoubleKickParams::make(1.0, 2.3);
    const double t = 3.0;
    const auto alphas = logspace(1e-3, 1e-1, 9);
    std::vector<double> diffs;
    for (double a : alphas) {
        const Mat2 ui = to_interaction_picture(sys, kick_antikick_propagator(a, g, dk, t), t);
        diffs.push_back(max_norm(ui - no_to_interaction_double(a, 0.0, g, dk)));
    }
    const auto fit = fit_power_law(alphas, diffs, 2.0);
    return {fit.slope >= 1.99, "slope " + std::to_string(fit.slope) + " (expected >= 2)"};
}

Outcome check_rk4_order(Context&)
{
    const auto sys = SystemParams::hydrogen_2s2p();
    const PulseSequence seq{Pulse::gaussian(kPi / 2.0, 10.0, 150.0)};
    IntegratorConfig cfg;
    cfg.dt = 10.0 / 2560.0;
    const Mat2 ref = rk4_propagator(seq, sys, 0.0, 300.0, cfg);
    std::vector<double> steps;
    std::vector<double> errors;
    for (double h : {10.0 / 5.0, 10.0 / 10.0, 10.0 / 20.0, 10.0 / 40.0}) {
        cfg.dt = h;
        cfg.unitarity_tolerance = 1.0;
        steps.push_back(h);
        errors.push_back(max_norm(rk4_propagator(seq, sys, 0.0, 300.0, cfg) - ref));
    }
    const auto fit = fit_power_law(steps, errors, 4.0);
    return {fit.within(0.2), "slope " + std::to_string(fit.slope) + " (expected 4 +- 0.2)"};
}

struct Check {
    std::string name;
    bool in_quick;
    std::function<Outcome(Context&)> run;
};

} // namespace

const std::vector<std::string>& known_faults()
{
    static const std::vector<std::string> faults{"u0ipulse-sign"};
    return faults;
}

std::vector<CheckResult> run_validation(const ValidationOptions& options)
{
    if (!options.fault.empty() &&
        std::find(known_faults().begin(), known_faults().end(), options.fault) == known_faults().end()) {
        throw InputError("unknown fault '" + options.fault + "'");
    }
    const std::vector<Check> checks{
        {"unitarity", true, check_unitarity},
        {"limit-web", true, check_limit_web},
        {"interaction-kick-identity", true, check_interaction_kick},
        {"closed-form-probabilities", true, check_closed_forms},
        {"schrodinger-noTO-kick-antikick", true, check_noto_kick_antikick},
        {"floquet-eigenphases", true, check_floquet},
        {"time-reversal", true, check_time_reversal},
        {"time-ordering-onset", true, check_time_ordering_onset},
        {"rectangular-vs-rk4", false, check_rectangular_rk4},
        {"kicked-error-scaling", false, check_kicked_scaling},
        {"fig1-endpoint", false, check_fig1_endpoint},
        {"rk4-order", false, check_rk4_order},
    };
    std::vector<CheckResult> results;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        if (options.quick && !c.in_quick) {
            continue;
        }
        // Each check gets its own stream so results do not depend on which ran before.
        Context ctx{std::mt19937_64(options.seed + 0x9E3779B97F4A7C15ull * (i + 1)), options.quick,
                    options.fault};
        const auto start = std::chrono::steady_clock::now();
        CheckResult r;
        r.name = c.name;
        try {
            const auto o = c.run(ctx);
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace kq::cli
