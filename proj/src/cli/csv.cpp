#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include "kq/cli.hpp"
#include "kq/errors.hpp"

namespace kq::cli {

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                         std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw NumericalFailure("could not format number");
    }
    return {buf.data(), end};
}

void write_row(std::ostream& out, const std::vector<double>& row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) {
            out << ',';
        }
        out << format_double(row[i]);
    }
    out << '\n';
}

void write_header(std::ostream& out, const std::vector<std::string>& names)
{
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) {
            out << ',';
        }
        out << names[i];
    }
    out << '\n';
}

void write_metadata(std::ostream& out, const std::vector<std::string>& lines)
{
    for (const auto& line : lines) {
        out << "# " << line << '\n';
    }
}

void write_series(std::ostream& out, const SweepSeries& series)
{
    write_metadata(out, series.metadata);
    if (!series.name.empty()) {
        out << "# panel = " << series.name << '\n';
    }
    std::vector<std::string> names{series.parameter};
    for (const auto& c : series.columns) {
        names.push_back(c.name);
    }
    write_header(out, names);
    std::vector<double> row(names.size());
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        row[0] = series.values[i];
        for (std::size_t j = 0; j < series.columns.size(); ++j) {
            row[j + 1] = series.columns[j].values[i];
        }
        write_row(out, row);
    }
}

} // namespace kq::cli
