#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "kq/cli.hpp"
#include "kq/errors.hpp"

namespace kq::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        parts.push_back(trim(cur));
    }
    return parts;
}

} // namespace

double parse_number(const std::string& text)
{
    const std::string t = trim(text);
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    if (begin != end && *begin == '+') {
        ++begin;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (t.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw InputError("not a number: '" + text + "'");
    }
    return value;
}

double parse_angle(const std::string& text)
{
    std::string t = trim(text);
    const auto p = t.find("pi");
    if (p == std::string::npos) {
        return parse_number(t);
    }
    std::string coeff = trim(t.substr(0, p));
    std::string rest = trim(t.substr(p + 2));
    if (!coeff.empty() && coeff.back() == '*') {
        coeff = trim(coeff.substr(0, coeff.size() - 1));
    }
    double c = 1.0;
    if (coeff == "-") {
        c = -1.0;
    } else if (coeff == "+" || coeff.empty()) {
        c = 1.0;
    } else {
        c = parse_number(coeff);
    }
    double d = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw InputError("bad angle '" + text + "'");
        }
        d = parse_number(rest.substr(1));
        if (d == 0.0) {
            throw InputError("bad angle '" + text + "': zero denominator");
        }
    }
    return c * std::numbers::pi / d;
}

std::pair<std::string, double> parse_assignment(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw InputError("expected key=value, got '" + text + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    if (key.empty()) {
        throw InputError("empty key in '" + text + "'");
    }
    return {key, parse_angle(text.substr(eq + 1))};
}

Pulse parse_pulse(const std::string& text)
{
    const auto colon = text.find(':');
    const std::string shape_name = trim(text.substr(0, colon));
    Pulse p;
    p.shape = parse_pulse_shape(shape_name);
    p.tau = 0.0;
    bool have_alpha = false;
    bool have_center = false;
    bool have_tau = false;
    if (colon != std::string::npos) {
        for (const auto& field : split(text.substr(colon + 1), ',')) {
            if (field.empty()) {
                continue;
            }
            const auto [key, value] = parse_assignment(field);
            const bool repeated = key == "alpha" ? have_alpha : key == "tau" ? have_tau : have_center;
            if (repeated && (key == "alpha" || key == "tau" || key == "center" || key == "tk")) {
                throw InputError("pulse field '" + key + "' given twice in '" + text + "'");
            }
            if (key == "alpha") {
                p.alpha = value;
                have_alpha = true;
            } else if (key == "tau") {
                p.tau = value;
                have_tau = true;
            } else if (key == "center" || key == "tk") {
                p.center = value;
                have_center = true;
            } else {
                throw InputError("unknown pulse field '" + key + "' in '" + text + "'");
            }
        }
    }
    if (!have_alpha || !have_center) {
        throw InputError("pulse '" + text + "' needs alpha and center");
    }
    if (!p.is_kick() && !have_tau) {
        throw InputError("pulse '" + text + "' needs tau");
    }
    if (p.center < 0.0) {
        throw InputError("pulse center must be >= 0");
    }
    p.validate();
    return p;
}

SystemParams SystemSpec::resolve() const
{
    const int count = int(preset.has_value()) + int(gamma.has_value()) + int(rabi_time.has_value()) +
                      int(splitting_ev.has_value());
    if (count > 1) {
        throw InputError("give exactly one of --preset, --gamma, --rabi-time, --splitting-ev");
    }
    if (gamma) {
        if (!(*gamma >= 0.0)) {
            throw InputError("--gamma must be >= 0");
        }
        return SystemParams::from_gamma(*gamma);
    }
    if (rabi_time) {
        if (!(*rabi_time > 0.0)) {
            throw InputError("--rabi-time must be > 0");
        }
        return SystemParams::from_rabi_time(*rabi_time);
    }
    if (splitting_ev) {
        if (!(*splitting_ev >= 0.0)) {
            throw InputError("--splitting-ev must be >= 0");
        }
        return SystemParams::from_splitting_ev(*splitting_ev);
    }
    if (!preset || *preset == "hydrogen-2s2p" || *preset == "hydrogen") {
        return SystemParams::hydrogen_2s2p();
    }
    if (*preset == "unit") {
        return SystemParams::unit();
    }
    throw InputError("unknown preset '" + *preset + "' (expected hydrogen-2s2p or unit)");
}

bool SystemSpec::is_hydrogen() const
{
    return !gamma && !rabi_time && !splitting_ev &&
           (!preset || *preset == "hydrogen-2s2p" || *preset == "hydrogen");
}

std::string SystemSpec::describe() const
{
    if (gamma) {
        return "gamma = " + format_double(*gamma);
    }
    if (rabi_time) {
        return "rabi_time_ps = " + format_double(*rabi_time);
    }
    if (splitting_ev) {
        return "splitting_ev = " + format_double(*splitting_ev);
    }
    return "preset = " + preset.value_or("hydrogen-2s2p");
}

} // namespace kq::cli
