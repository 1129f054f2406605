// output.hpp: CSV, JSON and SVG renderings of sweep results
//
// CSV numbers use printf "%.16e" (17 significant digits) and LF line ends so
// that identical inputs give identical bytes.

#pragma once

#include <filesystem>
#include <string>

#include "rotodyne/sweep.hpp"

namespace rotodyne {

std::string format_number(double x);

std::string csv_header(SweepKind kind);
std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);

struct PlotOptions {
    std::string title;
    bool log_x{true};
    bool log_y{true};
    bool magnitude{true}; // plot |y|, for signed phases and rates
};

// Inertial and non-inertial series against the sweep axis.
std::string to_svg(const SweepResult& result, const PlotOptions& opts);

// Writes `text` verbatim (binary mode); throws InputError if the file cannot
// be opened.
void write_file(const std::filesystem::path& path, const std::string& text);

std::string version_string();

} // namespace rotodyne
