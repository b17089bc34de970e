#pragma once

// Command-line layer of the kq tool: flag grammar, CSV emission, the
// sub-commands and the self-validation suite.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kq/analysis.hpp"
#include "kq/pulse.hpp"

namespace kq::cli {

// ---- CSV -------------------------------------------------------------------

/// 17 significant digits, locale-independent.
std::string format_double(double x);

void write_row(std::ostream& out, const std::vector<double>& row);
void write_header(std::ostream& out, const std::vector<std::string>& names);
void write_metadata(std::ostream& out, const std::vector<std::string>& lines);

/// Metadata lines, header (parameter then columns), one row per parameter value.
void write_series(std::ostream& out, const SweepSeries& series);

// ---- flag grammar ----------------------------------------------------------

/// Exactly one of the fields may be set; none selects the hydrogen preset.
struct SystemSpec {
    std::optional<std::string> preset;
    std::optional<double> gamma;
    std::optional<double> rabi_time;
    std::optional<double> splitting_ev;

    /// Throws InputError on conflicting or invalid settings.
    SystemParams resolve() const;
    bool is_hydrogen() const;
    std::string describe() const;
};

/// "1.2", "pi", "-pi/2", "3pi/8", "3*pi/4", "0.5pi".
double parse_angle(const std::string& text);

/// Plain decimal with the whole string consumed. Throws InputError.
double parse_number(const std::string& text);

/// "shape:alpha=pi/2,tau=10,center=150". tau is not needed for kicks.
Pulse parse_pulse(const std::string& text);

/// "key=value" with a numeric or angle value.
std::pair<std::string, double> parse_assignment(const std::string& text);

// ---- validation ------------------------------------------------------------

struct ValidationOptions {
    bool quick{false};
    std::uint64_t seed{0};
    /// Mutation used to check that the suite detects a broken formula.
    /// Known: "u0ipulse-sign".
    std::string fault;
};

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;
    double seconds{0.0};
};

std::vector<CheckResult> run_validation(const ValidationOptions& options);
const std::vector<std::string>& known_faults();

// ---- entry point -----------------------------------------------------------

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Parses argv and runs a sub-command. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace kq::cli
