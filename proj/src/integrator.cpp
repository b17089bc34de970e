#include "kq/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kq/errors.hpp"
#include "kq/propagators.hpp"
#include "kq/quadrature.hpp"

namespace kq {

namespace {

QubitState add_scaled(const QubitState& y, double h, const QubitState& k)
{
    return {y.a1 + h * k.a1, y.a2 + h * k.a2};
}

Mat2 add_scaled(const Mat2& y, double h, const Mat2& k) { return y + Complex{h} * k; }

double defect(const QubitState& s) { return std::abs(norm_squared(s) - 1.0); }
double defect(const Mat2& u) { return unitarity_defect(u); }

// −iH for H = −γσz + vσx.
Mat2 generator(double gamma, double v)
{
    return {Complex{0.0, gamma}, Complex{0.0, -v}, Complex{0.0, -v}, Complex{0.0, -gamma}};
}

double resolve_dt(const IntegratorConfig& cfg, const PulseSequence& seq,
                  const SystemParams& params, double span)
{
    const double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(seq, params, span);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InputError("integrator time step must be positive");
    }
    return dt;
}

struct Recorder {
    bool every_step{true};
    std::span<const double> stops;
};

// Advances y from t0 to t1, calling `observe(t, y)` at t0, at every step end when
// `every_step` is set, and otherwise at the requested stops only.
template <class Y, class Observe>
Y propagate(const PulseSequence& seq, const SystemParams& params, Y y, double t0, double t1,
            double dt, const IntegratorConfig& cfg, const Recorder& rec, double& max_defect,
            Observe&& observe)
{
    const bool forward = t1 >= t0;
    const double lo = std::min(t0, t1);
    const double hi = std::max(t0, t1);

    std::vector<double> cuts{t0, t1};
    for (const auto& p : seq.pulses()) {
        const auto [a, b] = p.support(cfg.window_sigma);
        for (double x : {a, b}) {
            if (lo < x && x < hi) {
                cuts.push_back(x);
            }
        }
    }
    for (double s : rec.stops) {
        if (lo < s && s < hi) {
            cuts.push_back(s);
        }
    }
    for (const auto& p : seq.pulses()) {
        if (p.is_kick() && lo < p.center && p.center < hi) {
            cuts.push_back(p.center);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (!forward) {
        std::reverse(cuts.begin(), cuts.end());
    }

    auto is_stop = [&](double t) {
        return rec.every_step || std::find(rec.stops.begin(), rec.stops.end(), t) != rec.stops.end();
    };
    auto apply_kicks_at = [&](double t, double sign) {
        for (const auto& p : seq.pulses()) {
            if (p.is_kick() && p.center == t) {
                y = degenerate_propagator(sign * p.alpha) * y;
            }
        }
    };
    const double gamma = params.gamma();
    observe(t0, y);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        if (forward) {
            apply_kicks_at(a, 1.0);
        }
        const double probe = 0.5 * (a + b);
        const bool active = seq.active_between(a, b, cfg.window_sigma);
        const int n = (active || rec.every_step)
                          ? std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / dt - 1e-9)))
                          : 1;
        const double h = (b - a) / n;

        if (!active) {
            const Mat2 step = free_propagator_phase(gamma * h);
            for (int k = 1; k <= n; ++k) {
                y = step * y;
                const double t = k == n ? b : a + k * h;
                if (k == n && !forward) {
                    apply_kicks_at(b, -1.0);
                }
                if (rec.every_step || (k == n && is_stop(t))) {
                    observe(t, y);
                }
            }
        } else {
            for (int k = 1; k <= n; ++k) {
                const double ts = a + (k - 1) * h;
                const Y k1 = generator(gamma, seq.segment_value(ts, probe, cfg.window_sigma)) * y;
                const Mat2 gm =
                    generator(gamma, seq.segment_value(ts + 0.5 * h, probe, cfg.window_sigma));
                const Y k2 = gm * add_scaled(y, 0.5 * h, k1);
                const Y k3 = gm * add_scaled(y, 0.5 * h, k2);
                const double te = k == n ? b : a + k * h;
                const Y k4 =
                    generator(gamma, seq.segment_value(te, probe, cfg.window_sigma)) *
                    add_scaled(y, h, k3);
                y = add_scaled(y, h / 6.0, add_scaled(add_scaled(k1, 2.0, k2), 1.0,
                                                      add_scaled(k4, 2.0, k3)));
                max_defect = std::max(max_defect, defect(y));
                if (k == n && !forward) {
                    apply_kicks_at(b, -1.0);
                }
                if (rec.every_step || (k == n && is_stop(te))) {
                    observe(te, y);
                }
            }
        }
    }
    max_defect = std::max(max_defect, defect(y));
    return y;
}

void check_defect(double max_defect, const IntegratorConfig& cfg, double dt)
{
    if (max_defect > cfg.unitarity_tolerance) {
        std::ostringstream msg;
        msg << "RK4 norm defect " << max_defect << " exceeds tolerance "
            << cfg.unitarity_tolerance << " at dt = " << dt << " ps; reduce the time step";
        throw NumericalFailure(msg.str());
    }
}

void require_sorted(std::span<const double> times)
{
    if (times.empty()) {
        throw InputError("sample times must not be empty");
    }
    if (!std::is_sorted(times.begin(), times.end())) {
        throw InputError("sample times must be ascending");
    }
}

} // namespace

double default_time_step(const PulseSequence& seq, const SystemParams& params, double span)
{
    double dt = std::numeric_limits<double>::infinity();
    if (seq.has_finite_pulses()) {
        dt = std::min(dt, seq.min_tau() / 50.0);
    }
    if (params.gamma() > 0.0) {
        dt = std::min(dt, params.rabi_time() / 2000.0);
    }
    if (!std::isfinite(dt)) {
        dt = span > 0.0 ? span / 1000.0 : 1.0;
    }
    return dt;
}

TimeSeries rk4_evolve(const PulseSequence& seq, const SystemParams& params,
                      const QubitState& initial, double t0, double t1,
                      const IntegratorConfig& cfg)
{
    const double dt = resolve_dt(cfg, seq, params, std::abs(t1 - t0));
    TimeSeries out;
    double max_defect = 0.0;
    propagate(seq, params, initial, t0, t1, dt, cfg, Recorder{true, {}}, max_defect,
              [&](double t, const QubitState& s) {
                  out.times.push_back(t);
                  out.states.push_back(s);
                  out.p1.push_back(std::norm(s.a1));
                  out.p2.push_back(std::norm(s.a2));
              });
    check_defect(max_defect, cfg, dt);
    return out;
}

TimeSeries rk4_evolve_at(const PulseSequence& seq, const SystemParams& params,
                         const QubitState& initial, std::span<const double> times,
                         const IntegratorConfig& cfg)
{
    require_sorted(times);
    const double t0 = times.front();
    const double t1 = times.back();
    const double dt = resolve_dt(cfg, seq, params, t1 - t0);
    TimeSeries out;
    double max_defect = 0.0;
    propagate(seq, params, initial, t0, t1, dt, cfg, Recorder{false, times}, max_defect,
              [&](double t, const QubitState& s) {
                  // Repeated sample times are reported once per request.
                  const auto reps = std::count(times.begin(), times.end(), t);
                  for (long r = 0; r < reps; ++r) {
                      out.times.push_back(t);
                      out.states.push_back(s);
                      out.p1.push_back(std::norm(s.a1));
                      out.p2.push_back(std::norm(s.a2));
                  }
              });
    check_defect(max_defect, cfg, dt);
    return out;
}

Mat2 rk4_propagator(const PulseSequence& seq, const SystemParams& params, double t0, double t1,
                    const IntegratorConfig& cfg)
{
    const double dt = resolve_dt(cfg, seq, params, std::abs(t1 - t0));
    double max_defect = 0.0;
    const Mat2 u = propagate(seq, params, Mat2::identity(), t0, t1, dt, cfg,
                             Recorder{false, {}}, max_defect, [](double, const Mat2&) {});
    check_defect(max_defect, cfg, dt);
    return u;
}

PropagatorSeries rk4_propagator_at(const PulseSequence& seq, const SystemParams& params,
                                   std::span<const double> times, const IntegratorConfig& cfg)
{
    require_sorted(times);
    const double dt = resolve_dt(cfg, seq, params, times.back() - times.front());
    PropagatorSeries out;
    double max_defect = 0.0;
    propagate(seq, params, Mat2::identity(), times.front(), times.back(), dt, cfg,
              Recorder{false, times}, max_defect, [&](double t, const Mat2& u) {
                  const auto reps = std::count(times.begin(), times.end(), t);
                  for (long r = 0; r < reps; ++r) {
                      out.times.push_back(t);
                      out.u.push_back(u);
                  }
              });
    check_defect(max_defect, cfg, dt);
    return out;
}

namespace {

// Σ_k ∫ over (support_k ∩ [t0, t1]) of weight(s) V_k(s) ds, plus exact kick terms.
double weighted_pulse_integral(const PulseSequence& seq, double t0, double t1,
                               const IntegratorConfig& cfg, double dt,
                               const std::function<double(double)>& weight)
{
    double total = 0.0;
    for (const auto& p : seq.pulses()) {
        if (p.is_kick()) {
            if (t0 <= p.center && p.center < t1) {
                total += p.alpha * weight(p.center);
            }
            continue;
        }
        const auto [lo, hi] = p.support(cfg.window_sigma);
        const double a = std::max(lo, t0);
        const double b = std::min(hi, t1);
        if (b <= a) {
            continue;
        }
        const int panels = std::clamp(static_cast<int>(std::ceil((b - a) / dt)), 4, 1 << 16);
        total += integrate_romberg([&](double s) { return weight(s) * p.value(s); }, a, b,
                                   panels, 1e-10)
                     .value;
    }
    return total;
}

} // namespace

double integrated_strength_numeric(const PulseSequence& seq, double t0, double t1,
                                   const IntegratorConfig& cfg)
{
    if (t1 < t0) {
        throw InputError("integrated_strength_numeric: t1 < t0");
    }
    const double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(seq, SystemParams{}, t1 - t0);
    return weighted_pulse_integral(seq, t0, t1, cfg, dt, [](double) { return 1.0; });
}

PauliVector interaction_average_numeric(const SystemParams& params, const PulseSequence& seq,
                                        double t, const IntegratorConfig& cfg)
{
    if (t <= 0.0) {
        return {};
    }
    const double dt = resolve_dt(cfg, seq, params, t);
    const double w = 2.0 * params.gamma();
    const double cx =
        weighted_pulse_integral(seq, 0.0, t, cfg, dt, [w](double s) { return std::cos(w * s); });
    const double cy =
        weighted_pulse_integral(seq, 0.0, t, cfg, dt, [w](double s) { return std::sin(w * s); });
    return {0.0, cx, cy, 0.0};
}

Mat2 evolve_no_to_schrodinger_numeric(const PulseSequence& seq, const SystemParams& params,
                                      double t, const IntegratorConfig& cfg)
{
    const double alpha = t > 0.0 ? integrated_strength_numeric(seq, 0.0, t, cfg) : 0.0;
    return exp_minus_i(PauliVector{0.0, alpha, 0.0, -params.gamma() * t});
}

Mat2 evolve_no_to_interaction_numeric(const PulseSequence& seq, const SystemParams& params,
                                      double t, const IntegratorConfig& cfg)
{
    return exp_minus_i(interaction_average_numeric(params, seq, t, cfg));
}

double convergence_check(const PulseSequence& seq, const SystemParams& params, double t,
                         const IntegratorConfig& cfg)
{
    IntegratorConfig loose = cfg;
    loose.unitarity_tolerance = std::numeric_limits<double>::infinity();
    loose.dt = resolve_dt(cfg, seq, params, std::abs(t));
    const Mat2 coarse = rk4_propagator(seq, params, 0.0, t, loose);
    loose.dt *= 0.5;
    const Mat2 fine = rk4_propagator(seq, params, 0.0, t, loose);
    return max_norm(coarse - fine);
}

} // namespace kq
