#include "kq/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "kq/errors.hpp"
#include "kq/propagators.hpp"

namespace kq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kTimePoints = 400;
constexpr std::size_t kTauPoints = 200;

double square(double x) { return x * x; }

double p2_of(const Mat2& u) { return probabilities(u, QubitState::on()).p2; }

std::string format_number(double x)
{
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

// "pi/2", "3pi/8" for small rational multiples of π, plain decimals otherwise.
std::string alpha_label(double alpha)
{
    for (int den : {1, 2, 3, 4, 6, 8}) {
        const double num = alpha * den / kPi;
        const double r = std::round(num);
        if (r != 0.0 && std::abs(num - r) < 1e-12) {
            std::string s = r == 1.0 ? "" : (r == -1.0 ? "-" : format_number(r));
            s += "pi";
            if (den != 1) {
                s += "/" + std::to_string(den);
            }
            return s;
        }
    }
    return format_number(alpha);
}

std::string join_numbers(const std::vector<double>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? "," : "") + format_number(xs[i]);
    }
    return s;
}

class Overrides {
public:
    Overrides(ScenarioName name, const std::map<std::string, double>& values,
              std::set<std::string> allowed)
    {
        static const std::set<std::string> known{"tau", "alpha", "tk", "t1", "t2", "tf", "rabi_time"};
        for (const auto& [key, value] : values) {
            if (!known.contains(key)) {
                throw InputError("unknown scenario parameter '" + key + "'");
            }
            if (!allowed.contains(key)) {
                throw InputError("parameter '" + key + "' does not apply to " + to_string(name));
            }
            if (!std::isfinite(value)) {
                throw InputError("parameter '" + key + "' must be finite");
            }
            if (key != "alpha" && !(value >= 0.0)) {
                throw InputError("parameter '" + key + "' must be non-negative");
            }
            if ((key == "tau" || key == "rabi_time" || key == "tf") && !(value > 0.0)) {
                throw InputError("parameter '" + key + "' must be positive");
            }
        }
        values_ = values;
    }

    double get(const std::string& key, double fallback) const
    {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    std::vector<double> list(const std::string& key, std::vector<double> fallback) const
    {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : std::vector<double>{it->second};
    }

    bool has(const std::string& key) const { return values_.contains(key); }

private:
    std::map<std::string, double> values_;
};

SystemParams system_for(const Overrides& ov)
{
    return ov.has("rabi_time") ? SystemParams::from_rabi_time(ov.get("rabi_time", 0.0))
                               : SystemParams::hydrogen_2s2p();
}

std::vector<std::string> common_metadata(ScenarioName name, const SystemParams& params,
                                         const IntegratorConfig& cfg)
{
    return {
        "scenario = " + to_string(name),
        "rabi_time_ps = " + format_number(params.rabi_time()),
        "gamma_per_ps = " + format_number(params.gamma()),
        "window_sigma = " + format_number(cfg.window_sigma),
        "dt_ps = " + (cfg.dt > 0.0 ? format_number(cfg.dt) : std::string{"auto"}),
    };
}

std::vector<double> probabilities_at(const PulseSequence& seq, const SystemParams& params,
                                     const std::vector<double>& times, const IntegratorConfig& cfg)
{
    return rk4_evolve_at(seq, params, QubitState::on(), times, cfg).p2;
}

ScenarioResult single_pulse_time_scenario(ScenarioName name, const Overrides& ov,
                                          const ScenarioOptions& opt)
{
    const auto params = system_for(ov);
    const double alpha = ov.get("alpha", kPi / 2.0);
    const double tk = ov.get("tk", 150.0);
    const double tf = ov.get("tf", 300.0);
    const auto taus = ov.list("tau", {1.0, 10.0, 100.0});

    SweepSeries s;
    s.name = "P2_vs_time";
    s.parameter = "t_ps";
    s.values = linspace(0.0, tf, kTimePoints);
    s.metadata = common_metadata(name, params, opt.integrator);
    s.metadata.push_back("shape = gaussian");
    s.metadata.push_back("alpha = " + alpha_label(alpha));
    s.metadata.push_back("tk_ps = " + format_number(tk));
    s.metadata.push_back("tau_ps = " + join_numbers(taus));

    std::vector<std::vector<double>> curves(taus.size());
    parallel_for(taus.size(), opt.jobs, [&](std::size_t i) {
        const PulseSequence seq{Pulse::gaussian(alpha, taus[i], tk)};
        curves[i] = probabilities_at(seq, params, s.values, opt.integrator);
    });
    for (std::size_t i = 0; i < taus.size(); ++i) {
        s.add_column("P2_tau=" + format_number(taus[i]), std::move(curves[i]));
    }
    std::vector<double> kicked;
    for (double t : s.values) {
        kicked.push_back(t > tk ? square(std::sin(alpha)) : 0.0);
    }
    s.add_column("P2_kicked", std::move(kicked));
    return {to_string(name), {std::move(s)}, tf, *std::min_element(taus.begin(), taus.end())};
}

ScenarioResult double_pulse_time_scenario(ScenarioName name, const Overrides& ov,
                                          const ScenarioOptions& opt, double default_alpha)
{
    const auto params = system_for(ov);
    const double alpha = ov.get("alpha", default_alpha);
    const auto dk = DoubleKickParams::make(ov.get("t1", 100.0), ov.get("t2", 586.0));
    const double tf = ov.get("tf", 700.0);
    const auto taus = ov.list("tau", {1.0, 10.0, 100.0});

    SweepSeries s;
    s.name = "P2_vs_time";
    s.parameter = "t_ps";
    s.values = linspace(0.0, tf, kTimePoints);
    s.metadata = common_metadata(name, params, opt.integrator);
    s.metadata.push_back("shape = gaussian");
    s.metadata.push_back("alpha = " + alpha_label(alpha));
    s.metadata.push_back("t1_ps = " + format_number(dk.t1));
    s.metadata.push_back("t2_ps = " + format_number(dk.t2));
    s.metadata.push_back("tau_ps = " + join_numbers(taus));

    std::vector<std::vector<double>> curves(taus.size());
    parallel_for(taus.size(), opt.jobs, [&](std::size_t i) {
        const auto seq = PulseSequence::kick_antikick(PulseShape::gaussian, alpha, taus[i], dk.t1, dk.t2);
        curves[i] = probabilities_at(seq, params, s.values, opt.integrator);
    });
    for (std::size_t i = 0; i < taus.size(); ++i) {
        s.add_column("P2_tau=" + format_number(taus[i]), std::move(curves[i]));
    }
    const double after = p2_closed_forms_double(alpha, 0.0, params.gamma() * dk.ts()).p2;
    std::vector<double> kicked;
    for (double t : s.values) {
        kicked.push_back(t <= dk.t1 ? 0.0 : (t <= dk.t2 ? square(std::sin(alpha)) : after));
    }
    s.add_column("P2_kicked", std::move(kicked));
    return {to_string(name), {std::move(s)}, tf, *std::min_element(taus.begin(), taus.end())};
}

// Numerical no-time-ordering probabilities of a sequence at time t.
struct NoToPair {
    double schrodinger{0.0};
    double interaction{0.0};
};

NoToPair no_to_probabilities(const PulseSequence& seq, const SystemParams& params, double t,
                             const IntegratorConfig& cfg)
{
    return {p2_of(evolve_no_to_schrodinger_numeric(seq, params, t, cfg)),
            p2_of(evolve_no_to_interaction_numeric(seq, params, t, cfg))};
}

ScenarioResult tau_sweep_scenario(const Overrides& ov, const ScenarioOptions& opt)
{
    const auto name = ScenarioName::fig4_left;
    const auto params = system_for(ov);
    const double alpha = ov.get("alpha", kPi / 2.0);
    const double tk = ov.get("tk", 150.0);
    const auto tfs = ov.list("tf", {200.0, 300.0, 500.0});
    const double rabi = params.rabi_time();
    if (!std::isfinite(rabi)) {
        throw InputError("fig4_left needs a finite rabi_time for its tau axis");
    }
    const auto taus = logspace(1e-3 * rabi, rabi, kTauPoints);

    std::vector<double> times{0.0};
    times.insert(times.end(), tfs.begin(), tfs.end());
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    const std::size_t nt = tfs.size();
    std::vector<double> p2(taus.size() * nt), nos(taus.size() * nt), noi(taus.size() * nt);
    parallel_for(taus.size(), opt.jobs, [&](std::size_t i) {
        const PulseSequence seq{Pulse::gaussian(alpha, taus[i], tk)};
        const auto traj = probabilities_at(seq, params, times, opt.integrator);
        for (std::size_t j = 0; j < nt; ++j) {
            const auto pos = std::find(times.begin(), times.end(), tfs[j]) - times.begin();
            p2[i * nt + j] = traj[static_cast<std::size_t>(pos)];
            const auto no = no_to_probabilities(seq, params, tfs[j], opt.integrator);
            nos[i * nt + j] = no.schrodinger;
            noi[i * nt + j] = no.interaction;
        }
    });

    ScenarioResult r{to_string(name), {}, times.back(), taus.front()};
    for (std::size_t j = 0; j < nt; ++j) {
        SweepSeries s;
        s.name = "tf=" + format_number(tfs[j]);
        s.parameter = "tau_ps";
        s.values = taus;
        s.metadata = common_metadata(name, params, opt.integrator);
        s.metadata.push_back("shape = gaussian");
        s.metadata.push_back("alpha = " + alpha_label(alpha));
        s.metadata.push_back("tk_ps = " + format_number(tk));
        s.metadata.push_back("tf_ps = " + format_number(tfs[j]));
        std::vector<double> a(taus.size()), b(taus.size()), c(taus.size()), ratio(taus.size());
        std::vector<double> ka(taus.size()), kb(taus.size()), kc(taus.size());
        for (std::size_t i = 0; i < taus.size(); ++i) {
            a[i] = p2[i * nt + j];
            b[i] = nos[i * nt + j];
            c[i] = noi[i * nt + j];
            ratio[i] = taus[i] / rabi;
            const auto closed =
                p2_closed_forms_single(alpha, params.gamma() * taus[i], params.gamma() * tfs[j]);
            ka[i] = closed.p2;
            kb[i] = closed.p2_noto_s;
            kc[i] = closed.p2_noto_i;
        }
        s.add_column("tau_over_rabi", std::move(ratio));
        s.add_column("P2", std::move(a));
        s.add_column("P2_noTO_schrodinger", std::move(b));
        s.add_column("P2_noTO_interaction", std::move(c));
        s.add_column("P2_kicked", std::move(ka));
        s.add_column("P2_noTO_schrodinger_closed", std::move(kb));
        s.add_column("P2_noTO_interaction_closed", std::move(kc));
        r.panels.push_back(std::move(s));
    }
    return r;
}

ScenarioResult tf_sweep_scenario(const Overrides& ov, const ScenarioOptions& opt)
{
    const auto name = ScenarioName::fig4_right;
    const auto params = system_for(ov);
    const double alpha = ov.get("alpha", kPi / 2.0);
    const double tk = ov.get("tk", 150.0);
    const double tf_max = ov.get("tf", 1500.0);
    if (!(tf_max > tk)) {
        throw InputError("fig4_right needs tf beyond tk");
    }
    const auto taus = ov.list("tau", {1.0, 10.0, 100.0});
    const auto tfs = linspace(tk, tf_max, kTimePoints);

    ScenarioResult r{to_string(name), {}, tf_max, *std::min_element(taus.begin(), taus.end())};
    for (double tau : taus) {
        const PulseSequence seq{Pulse::gaussian(alpha, tau, tk)};
        std::vector<double> times{0.0};
        times.insert(times.end(), tfs.begin(), tfs.end());
        if (tk == 0.0) {
            times.erase(times.begin());
        }
        auto traj = probabilities_at(seq, params, times, opt.integrator);
        if (tk != 0.0) {
            traj.erase(traj.begin());
        }
        std::vector<double> nos(tfs.size()), noi(tfs.size());
        parallel_for(tfs.size(), opt.jobs, [&](std::size_t i) {
            const auto no = no_to_probabilities(seq, params, tfs[i], opt.integrator);
            nos[i] = no.schrodinger;
            noi[i] = no.interaction;
        });

        SweepSeries s;
        s.name = "tau=" + format_number(tau);
        s.parameter = "tf_ps";
        s.values = tfs;
        s.metadata = common_metadata(name, params, opt.integrator);
        s.metadata.push_back("shape = gaussian");
        s.metadata.push_back("alpha = " + alpha_label(alpha));
        s.metadata.push_back("tk_ps = " + format_number(tk));
        s.metadata.push_back("tau_ps = " + format_number(tau));
        std::vector<double> ka, kb, kc;
        for (double tf : tfs) {
            const auto closed = p2_closed_forms_single(alpha, params.gamma() * tau, params.gamma() * tf);
            ka.push_back(closed.p2);
            kb.push_back(closed.p2_noto_s);
            kc.push_back(closed.p2_noto_i);
        }
        s.add_column("P2", std::move(traj));
        s.add_column("P2_noTO_schrodinger", std::move(nos));
        s.add_column("P2_noTO_interaction", std::move(noi));
        s.add_column("P2_kicked", std::move(ka));
        s.add_column("P2_noTO_schrodinger_closed", std::move(kb));
        s.add_column("P2_noTO_interaction_closed", std::move(kc));
        r.panels.push_back(std::move(s));
    }
    return r;
}

ScenarioResult separation_sweep_scenario(ScenarioName name, const Overrides& ov,
                                         const ScenarioOptions& opt, double default_tau)
{
    const auto params = system_for(ov);
    const double rabi = params.rabi_time();
    if (!std::isfinite(rabi)) {
        throw InputError(to_string(name) + " needs a finite rabi_time for its separation axis");
    }
    const double tau = ov.get("tau", default_tau);
    const double margin = std::max(100.0, opt.integrator.window_sigma * tau);
    const double t1 = ov.get("t1", margin);
    const auto alphas = ov.list("alpha", {kPi / 2.0, 3.0 * kPi / 8.0, kPi / 4.0});
    const auto separations = linspace(0.0, rabi, kTimePoints);

    SweepSeries s;
    s.name = "P2_vs_separation";
    s.parameter = "ts_ps";
    s.values = separations;
    s.metadata = common_metadata(name, params, opt.integrator);
    s.metadata.push_back("shape = gaussian");
    s.metadata.push_back("tau_ps = " + format_number(tau));
    s.metadata.push_back("t1_ps = " + format_number(t1));
    s.metadata.push_back("tf_ps = t2 + " + format_number(margin));

    const double beta = params.gamma() * tau;
    for (double alpha : alphas) {
        std::vector<double> p2(separations.size()), noi(separations.size()), nos(separations.size());
        parallel_for(separations.size(), opt.jobs, [&](std::size_t i) {
            const double t2 = t1 + separations[i];
            const double tf = t2 + margin;
            const auto seq = PulseSequence::kick_antikick(PulseShape::gaussian, alpha, tau, t1, t2);
            const std::vector<double> times{0.0, tf};
            p2[i] = probabilities_at(seq, params, times, opt.integrator).back();
            const auto no = no_to_probabilities(seq, params, tf, opt.integrator);
            nos[i] = no.schrodinger;
            noi[i] = no.interaction;
        });
        std::vector<double> ka, kc;
        for (double ts : separations) {
            const auto closed = p2_closed_forms_double(alpha, beta, params.gamma() * ts);
            ka.push_back(closed.p2);
            kc.push_back(closed.p2_noto_i);
        }
        const std::string tag = "_alpha=" + alpha_label(alpha);
        s.add_column("P2" + tag, std::move(p2));
        s.add_column("P2_noTO_interaction" + tag, std::move(noi));
        s.add_column("P2_noTO_schrodinger" + tag, std::move(nos));
        s.add_column("P2_kicked" + tag, std::move(ka));
        s.add_column("P2_noTO_interaction_closed" + tag, std::move(kc));
    }
    return {to_string(name), {std::move(s)}, t1 + rabi + margin, tau};
}

} // namespace

std::string to_string(Picture picture)
{
    return picture == Picture::schrodinger ? "schrodinger" : "interaction";
}

TimeOrderingReport time_ordering_report(const Mat2& u, const Mat2& u0, const QubitState& initial,
                                        Picture picture)
{
    TimeOrderingReport r;
    r.picture = picture;
    r.norm_diff = max_norm(u - u0);
    r.delta_p2 = probabilities(u, initial).p2 - probabilities(u0, initial).p2;
    return r;
}

Mat2 to_interaction_picture(const SystemParams& params, const Mat2& u, double t)
{
    return free_propagator(params, -t) * u;
}

SinglePulseProbabilities p2_closed_forms_single(double alpha, double beta, double gamma_tf)
{
    SinglePulseProbabilities r;
    r.p2 = square(std::sin(alpha));
    const double xi = std::hypot(alpha, gamma_tf);
    r.p2_noto_s = square(alpha * sinc(xi));
    r.p2_noto_i = square(std::sin(alpha * std::exp(-beta * beta)));
    return r;
}

DoublePulseProbabilities p2_closed_forms_double(double alpha, double beta, double gamma_ts)
{
    DoublePulseProbabilities r;
    r.p2 = square(std::sin(gamma_ts) * std::sin(2.0 * alpha));
    r.p2_noto_i = square(std::sin(2.0 * alpha * std::exp(-beta * beta) * std::sin(gamma_ts)));
    r.p2_noto_s = 0.0;
    return r;
}

void SweepSeries::add_column(std::string column_name, std::vector<double> data)
{
    if (data.size() != values.size()) {
        throw InputError("column '" + column_name + "' has " + std::to_string(data.size()) +
                         " rows, expected " + std::to_string(values.size()));
    }
    columns.push_back({std::move(column_name), std::move(data)});
}

const std::vector<double>& SweepSeries::column(const std::string& column_name) const
{
    for (const auto& c : columns) {
        if (c.name == column_name) {
            return c.values;
        }
    }
    throw InputError("no column '" + column_name + "' in series '" + name + "'");
}

bool ScalingFit::within(double tolerance) const
{
    return std::abs(slope - expected_slope) <= tolerance;
}

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                         double expected_slope)
{
    if (x.size() != y.size()) {
        throw InputError("power-law fit: x and y differ in length");
    }
    if (x.size() < 3) {
        throw InputError("power-law fit needs at least 3 points");
    }
    const auto n = static_cast<double>(x.size());
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw InputError("power-law fit needs positive data");
        }
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw InputError("power-law fit needs distinct x values");
    }
    ScalingFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.expected_slope = expected_slope;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        ss += square(ly[i] - (f.intercept + f.slope * lx[i]));
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

ScalingFit error_scaling_fit(const SweepSeries& series, double expected_slope,
                             const std::string& column_name)
{
    if (series.columns.empty()) {
        throw InputError("error_scaling_fit: series has no data column");
    }
    const auto& y = column_name.empty() ? series.columns.front().values : series.column(column_name);
    return fit_power_law(series.values, y, expected_slope);
}

std::string to_string(ScenarioName name)
{
    switch (name) {
    case ScenarioName::fig1: return "fig1";
    case ScenarioName::fig2: return "fig2";
    case ScenarioName::fig3: return "fig3";
    case ScenarioName::fig4_left: return "fig4_left";
    case ScenarioName::fig4_right: return "fig4_right";
    case ScenarioName::fig5_left: return "fig5_left";
    case ScenarioName::fig5_right: return "fig5_right";
    }
    return "unknown";
}

const std::vector<ScenarioName>& all_scenarios()
{
    static const std::vector<ScenarioName> names{
        ScenarioName::fig1,      ScenarioName::fig2,       ScenarioName::fig3,
        ScenarioName::fig4_left, ScenarioName::fig4_right, ScenarioName::fig5_left,
        ScenarioName::fig5_right};
    return names;
}

ScenarioName parse_scenario(const std::string& name)
{
    for (auto s : all_scenarios()) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw InputError("unknown scenario '" + name +
                     "' (expected fig1, fig2, fig3, fig4_left, fig4_right, fig5_left or fig5_right)");
}

ScenarioResult run_scenario(ScenarioName name, const ScenarioOptions& options)
{
    const auto& o = options.overrides;
    switch (name) {
    case ScenarioName::fig1:
        return single_pulse_time_scenario(name, Overrides(name, o, {"tau", "alpha", "tk", "tf", "rabi_time"}),
                                          options);
    case ScenarioName::fig2:
    case ScenarioName::fig3: {
        const Overrides ov(name, o, {"tau", "alpha", "t1", "t2", "tf", "rabi_time"});
        return double_pulse_time_scenario(name, ov, options,
                                          name == ScenarioName::fig2 ? kPi / 2.0 : kPi / 4.0);
    }
    case ScenarioName::fig4_left:
        return tau_sweep_scenario(Overrides(name, o, {"alpha", "tk", "tf", "rabi_time"}), options);
    case ScenarioName::fig4_right:
        return tf_sweep_scenario(Overrides(name, o, {"tau", "alpha", "tk", "tf", "rabi_time"}), options);
    case ScenarioName::fig5_left:
    case ScenarioName::fig5_right: {
        const Overrides ov(name, o, {"tau", "alpha", "t1", "rabi_time"});
        return separation_sweep_scenario(name, ov, options,
                                         name == ScenarioName::fig5_left ? 10.0 : 100.0);
    }
    }
    throw InputError("unknown scenario");
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn)
{
    const std::size_t workers = std::min<std::size_t>(std::max(1u, jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(work);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::vector<double> parallel_map(std::size_t n, unsigned jobs,
                                 const std::function<double(std::size_t)>& fn)
{
    std::vector<double> out(n);
    parallel_for(n, jobs, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

std::vector<double> linspace(double a, double b, std::size_t n)
{
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {a};
    }
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    xs.back() = b;
    return xs;
}

std::vector<double> logspace(double a, double b, std::size_t n)
{
    if (!(a > 0.0) || !(b > 0.0)) {
        throw InputError("logspace needs positive bounds");
    }
    auto xs = linspace(std::log(a), std::log(b), n);
    for (auto& x : xs) {
        x = std::exp(x);
    }
    if (!xs.empty()) {
        xs.front() = a;
        xs.back() = b;
    }
    return xs;
}

} // namespace kq
