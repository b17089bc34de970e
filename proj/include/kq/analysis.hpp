#pragma once

// Time-ordering metrics, closed-form transition probabilities, scaling-law fits
// and the scenario definitions behind the published figures.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kq/integrator.hpp"
#include "kq/pulse.hpp"
#include "kq/su2.hpp"

namespace kq {

enum class Picture { schrodinger, interaction };

std::string to_string(Picture picture);

struct TimeOrderingReport {
    double norm_diff{0.0}; ///< ‖U − U⁰‖_max
    double delta_p2{0.0};  ///< P₂(U) − P₂(U⁰)
    Picture picture{Picture::schrodinger};
};

/// Throws NumericalFailure when either input is not unitary.
TimeOrderingReport time_ordering_report(const Mat2& u, const Mat2& u0, const QubitState& initial,
                                        Picture picture);

/// e^{iH0t} U, i.e. free_propagator(−t)·U.
Mat2 to_interaction_picture(const SystemParams& params, const Mat2& u, double t);

struct SinglePulseProbabilities {
    double p2{0.0};        ///< sin²α, kicked limit
    double p2_noto_s{0.0}; ///< α²/ξ² sin²ξ with ξ² = α² + (γT_f)²
    double p2_noto_i{0.0}; ///< sin²(α e^{−β²})
};

struct DoublePulseProbabilities {
    double p2{0.0};        ///< sin²(γT_s) sin²(2α)
    double p2_noto_i{0.0}; ///< sin²(2α e^{−β²} sin γT_s)
    double p2_noto_s{0.0}; ///< identically 0
};

SinglePulseProbabilities p2_closed_forms_single(double alpha, double beta, double gamma_tf);
DoublePulseProbabilities p2_closed_forms_double(double alpha, double beta, double gamma_ts);

/// A parameter axis with one or more observables sampled on it.
struct SweepSeries {
    struct Column {
        std::string name;
        std::vector<double> values;
    };

    std::string name;
    std::string parameter;
    std::vector<double> values;
    std::vector<Column> columns;
    /// Free-form "key = value" lines recorded with the data.
    std::vector<std::string> metadata;

    /// Throws InputError when the length differs from the parameter axis.
    void add_column(std::string column_name, std::vector<double> data);
    /// Throws InputError for an unknown column.
    const std::vector<double>& column(const std::string& column_name) const;
};

struct ScalingFit {
    double slope{0.0};
    double intercept{0.0};
    /// RMS residual of the log-log fit.
    double residual{0.0};
    double expected_slope{0.0};

    bool within(double tolerance) const;
};

/// Least squares of log|y| against log x for one column (the first by default).
/// Throws InputError for fewer than 3 points or non-positive data.
ScalingFit error_scaling_fit(const SweepSeries& series, double expected_slope,
                             const std::string& column_name = {});

/// Log-log fit of raw arrays, same rules.
ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                         double expected_slope = 0.0);

enum class ScenarioName { fig1, fig2, fig3, fig4_left, fig4_right, fig5_left, fig5_right };

std::string to_string(ScenarioName name);
/// Throws InputError for an unknown name.
ScenarioName parse_scenario(const std::string& name);
const std::vector<ScenarioName>& all_scenarios();

struct ScenarioOptions {
    /// Keys: tau, alpha, tk, t1, t2, tf, rabi_time. Others are rejected.
    std::map<std::string, double> overrides;
    unsigned jobs{1};
    IntegratorConfig integrator{};
};

struct ScenarioResult {
    std::string name;
    std::vector<SweepSeries> panels;
    /// Longest simulated interval and narrowest pulse over all runs.
    double max_time{0.0};
    double min_tau{0.0};
};

/// Runs one figure scenario. Panels come back in a fixed order with rows sorted
/// by the parameter value whatever the job count.
ScenarioResult run_scenario(ScenarioName name, const ScenarioOptions& options = {});

/// Calls fn(0..n-1) on up to `jobs` threads. The first exception is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Evaluates fn(0..n-1) on up to `jobs` threads; results are in index order.
std::vector<double> parallel_map(std::size_t n, unsigned jobs,
                                 const std::function<double(std::size_t)>& fn);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

} // namespace kq
