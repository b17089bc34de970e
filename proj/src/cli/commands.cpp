#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>

#include "CLI11.hpp"

#include "kq/cli.hpp"
#include "kq/errors.hpp"
#include "kq/integrator.hpp"
#include "kq/propagators.hpp"

namespace kq::cli {

namespace {

constexpr double kLifetimeLimitPs = 1600.0;
constexpr double kShortestSafeTauPs = 1e-3;

struct IntegratorFlags {
    double dt{0.0};
    double window_sigma{kDefaultWindowSigma};

    IntegratorConfig config() const
    {
        IntegratorConfig c;
        c.dt = dt;
        c.window_sigma = window_sigma;
        return c;
    }
};

void add_system_flags(CLI::App& app, SystemSpec& spec)
{
    app.add_option_function<std::string>("--preset", [&spec](const std::string& v) { spec.preset = v; },
                                         "hydrogen-2s2p (default) or unit");
    app.add_option_function<double>("--gamma", [&spec](double v) { spec.gamma = v; },
                                    "half splitting in rad/ps");
    app.add_option_function<double>("--rabi-time", [&spec](double v) { spec.rabi_time = v; },
                                    "T = pi/gamma in ps");
    app.add_option_function<double>("--splitting-ev", [&spec](double v) { spec.splitting_ev = v; },
                                    "level splitting in eV");
}

void add_integrator_flags(CLI::App& app, IntegratorFlags& flags)
{
    app.add_option("--dt", flags.dt, "RK4 step in ps (0 = automatic)")->check(CLI::NonNegativeNumber);
    app.add_option("--window-sigma", flags.window_sigma, "gaussian cutoff in units of tau")
        ->check(CLI::PositiveNumber);
}

void warn_physical_limits(std::ostream& err, const SystemSpec& spec, double span,
                          const std::vector<Pulse>& pulses)
{
    if (spec.is_hydrogen() && span > kLifetimeLimitPs) {
        err << "warning: simulated time " << span
            << " ps exceeds the 2p lifetime (1600 ps); decay is not modelled\n";
    }
    for (const auto& p : pulses) {
        if (!p.is_kick() && p.tau < kShortestSafeTauPs) {
            err << "warning: tau = " << p.tau
                << " ps is below 0.001 ps; such pulses also drive transitions to 3p\n";
            break;
        }
    }
}

// ---- propagate ---------------------------------------------------------------

struct PropagateArgs {
    SystemSpec system;
    IntegratorFlags integ;
    std::vector<std::string> pulses;
    double tf{300.0};
    std::size_t samples{401};
    std::string output;
};

void cmd_propagate(const PropagateArgs& a, std::ostream& out, std::ostream& err)
{
    const auto params = a.system.resolve();
    PulseSequence seq;
    for (const auto& text : a.pulses) {
        seq.add(parse_pulse(text));
    }
    if (!(a.tf > 0.0)) {
        throw InputError("--tf must be > 0");
    }
    if (a.samples < 2) {
        throw InputError("--samples must be >= 2");
    }
    warn_physical_limits(err, a.system, a.tf, seq.pulses());

    const auto cfg = a.integ.config();
    const auto times = linspace(0.0, a.tf, a.samples);
    const auto us = rk4_propagator_at(seq, params, times, cfg);

    std::vector<std::string> meta{"command = propagate", a.system.describe(),
                                  "gamma_per_ps = " + format_double(params.gamma()),
                                  "rabi_time_ps = " + format_double(params.rabi_time()),
                                  "dt_ps = " + (cfg.dt > 0.0 ? format_double(cfg.dt) : std::string{"auto"}),
                                  "window_sigma = " + format_double(cfg.window_sigma),
                                  "initial_state = on"};
    for (const auto& p : seq.pulses()) {
        meta.push_back("pulse = " + to_string(p.shape) + ":alpha=" + format_double(p.alpha) +
                       ",tau=" + format_double(p.tau) + ",center=" + format_double(p.center));
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!a.output.empty() && a.output != "-") {
        file.open(a.output, std::ios::binary);
        if (!file) {
            throw InputError("cannot open '" + a.output + "' for writing");
        }
        sink = &file;
    }
    write_metadata(*sink, meta);
    write_header(*sink, {"t_ps", "P1", "P2", "P2_noTO_schrodinger", "P2_noTO_interaction", "Re_U11",
                         "Im_U11", "Re_U12", "Im_U12"});
    const auto on = QubitState::on();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const Mat2& u = us.u[i];
        const auto pop = probabilities(u, on);
        const double nos = probabilities(evolve_no_to_schrodinger_numeric(seq, params, t, cfg), on).p2;
        const double noi = probabilities(evolve_no_to_interaction_numeric(seq, params, t, cfg), on).p2;
        write_row(*sink, {t, pop.p1, pop.p2, nos, noi, u.m11.real(), u.m11.imag(), u.m12.real(),
                          u.m12.imag()});
    }
}

// ---- figure ------------------------------------------------------------------

struct FigureArgs {
    std::string name;
    std::vector<std::string> sets;
    IntegratorFlags integ;
    unsigned jobs{1};
    std::string output_dir{"."};
};

std::string file_stem(const std::string& s)
{
    std::string r;
    for (char c : s) {
        r += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ? c : '_';
    }
    return r;
}

void cmd_figure(const FigureArgs& a, std::ostream& out, std::ostream& err)
{
    const auto name = parse_scenario(a.name);
    ScenarioOptions opt;
    opt.jobs = std::max(1u, a.jobs);
    opt.integrator = a.integ.config();
    for (const auto& s : a.sets) {
        const auto [key, value] = parse_assignment(s);
        opt.overrides[key] = value;
    }
    const auto result = run_scenario(name, opt);
    if (!opt.overrides.contains("rabi_time") && result.max_time > kLifetimeLimitPs) {
        err << "warning: simulated time " << result.max_time
            << " ps exceeds the 2p lifetime (1600 ps); decay is not modelled\n";
    }
    if (result.min_tau < kShortestSafeTauPs) {
        err << "warning: tau below 0.001 ps also drives transitions to 3p\n";
    }
    std::filesystem::create_directories(a.output_dir);
    for (const auto& panel : result.panels) {
        const auto path = std::filesystem::path(a.output_dir) /
                          (result.name + "_" + file_stem(panel.name) + ".csv");
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            throw InputError("cannot write '" + path.string() + "'");
        }
        write_series(file, panel);
        out << path.string() << '\n';
    }
}

// ---- validate ----------------------------------------------------------------

int cmd_validate(const ValidationOptions& opt, std::ostream& out)
{
    const auto results = run_validation(opt);
    std::size_t width = 0;
    for (const auto& r : results) {
        width = std::max(width, r.name.size());
    }
    std::size_t failed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width) + 2)
            << r.name << std::right << std::fixed << std::setprecision(2) << std::setw(7) << r.seconds
            << " s  " << r.detail << '\n';
        failed += r.passed ? 0 : 1;
    }
    out << results.size() - failed << "/" << results.size() << " checks passed\n";
    return failed == 0 ? kExitOk : kExitFailure;
}

// ---- floquet -----------------------------------------------------------------

struct FloquetArgs {
    SystemSpec system;
    std::string alpha{"pi/2"};
    std::optional<double> period;
    std::optional<std::string> gamma_t;
    std::string sweep;
};

void cmd_floquet(const FloquetArgs& a, std::ostream& out)
{
    const double alpha = parse_angle(a.alpha);
    std::vector<double> gts;
    if (!a.sweep.empty()) {
        const auto first = a.sweep.find(':');
        const auto second = a.sweep.find(':', first == std::string::npos ? first : first + 1);
        if (first == std::string::npos || second == std::string::npos) {
            throw InputError("--sweep expects start:stop:count");
        }
        const double lo = parse_angle(a.sweep.substr(0, first));
        const double hi = parse_angle(a.sweep.substr(first + 1, second - first - 1));
        const double n = parse_number(a.sweep.substr(second + 1));
        if (!(n >= 1.0) || n != std::floor(n)) {
            throw InputError("--sweep count must be a positive integer");
        }
        gts = linspace(lo, hi, static_cast<std::size_t>(n));
    } else if (a.gamma_t) {
        if (a.period) {
            throw InputError("give either --period or --gamma-t");
        }
        gts = {parse_angle(*a.gamma_t)};
    } else if (a.period) {
        if (!(*a.period >= 0.0)) {
            throw InputError("--period must be >= 0");
        }
        gts = {a.system.resolve().gamma() * *a.period};
    } else {
        throw InputError("floquet needs --period, --gamma-t or --sweep");
    }

    write_metadata(out, {"command = floquet", "alpha = " + format_double(alpha),
                         "eigenvalues = exp(+i chi), exp(-i chi)"});
    write_header(out, {"gamma_T", "chi", "Re_v1_1", "Im_v1_1", "Re_v1_2", "Im_v1_2", "Re_v2_1",
                       "Im_v2_1", "Re_v2_2", "Im_v2_2"});
    for (double gt : gts) {
        const auto r = floquet_eigenphases(alpha, gt);
        const auto& v = r.eigenvectors;
        write_row(out, {gt, r.chi, v[0].a1.real(), v[0].a1.imag(), v[0].a2.real(), v[0].a2.imag(),
                        v[1].a1.real(), v[1].a1.imag(), v[1].a2.real(), v[1].a2.imag()});
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"kq: driven two-level system simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "kq 0.1.0");

    PropagateArgs prop;
    auto* p = app.add_subcommand("propagate", "integrate a pulse sequence and write a CSV time series");
    add_system_flags(*p, prop.system);
    add_integrator_flags(*p, prop.integ);
    p->add_option("--pulse", prop.pulses, "shape:alpha=<rad>,tau=<ps>,center=<ps> (repeatable)");
    p->add_option("--tf", prop.tf, "end time in ps");
    p->add_option("--samples", prop.samples, "number of output rows")->check(CLI::PositiveNumber);
    p->add_option("-o,--output", prop.output, "CSV path (default stdout)");

    FigureArgs fig;
    auto* f = app.add_subcommand("figure", "run a figure scenario; one CSV per panel");
    f->add_option("name", fig.name, "fig1 fig2 fig3 fig4_left fig4_right fig5_left fig5_right")
        ->required();
    f->add_option("--set", fig.sets, "override key=value (tau alpha tk t1 t2 tf rabi_time)");
    add_integrator_flags(*f, fig.integ);
    f->add_option("--jobs", fig.jobs, "worker threads")->check(CLI::PositiveNumber);
    f->add_option("-o,--output-dir", fig.output_dir, "directory for the CSV files");

    ValidationOptions val;
    auto* v = app.add_subcommand("validate", "run the self-check suite");
    v->add_flag("--quick", val.quick, "fast subset");
    v->add_option("--seed", val.seed, "seed of the randomized checks");
    v->add_option("--inject-fault", val.fault, "deliberately break a formula")
        ->check(CLI::IsMember(known_faults()));

    FloquetArgs flo;
    auto* q = app.add_subcommand("floquet", "Floquet eigenphases of a periodically kicked qubit");
    add_system_flags(*q, flo.system);
    q->add_option("--alpha", flo.alpha, "kick strength (accepts pi fractions)");
    q->add_option("--period", flo.period, "kick period in ps");
    q->add_option_function<std::string>("--gamma-t", [&flo](const std::string& s) { flo.gamma_t = s; },
                                        "gamma times period, in rad");
    q->add_option("--sweep", flo.sweep, "start:stop:count over gamma*T");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (p->parsed()) {
            cmd_propagate(prop, out, err);
        } else if (f->parsed()) {
            cmd_figure(fig, out, err);
        } else if (v->parsed()) {
            return cmd_validate(val, out);
        } else if (q->parsed()) {
            cmd_floquet(flo, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace kq::cli
