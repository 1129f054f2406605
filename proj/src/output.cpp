#include "rotodyne/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rotodyne/errors.hpp"

#ifndef ROTODYNE_VERSION
#define ROTODYNE_VERSION "0.0.0"
#endif

namespace rotodyne {

namespace {

using json = nlohmann::json;

std::string fixed3(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

struct Series {
    std::string label;
    std::string color;
    std::vector<double> y;
};

// Maps data to pixels on a linear or log axis.
struct Axis {
    double lo{0};
    double hi{1};
    bool log{false};
    double px_lo{0};
    double px_hi{1};

    double map(double v) const {
        const double a = log ? std::log10(lo) : lo;
        const double b = log ? std::log10(hi) : hi;
        const double x = log ? std::log10(v) : v;
        const double t = b > a ? (x - a) / (b - a) : 0.5;
        return px_lo + t * (px_hi - px_lo);
    }
};

bool plottable(double v, bool log) { return std::isfinite(v) && (!log || v > 0); }

// Data range, widened to whole decades on log axes.
std::pair<double, double> data_range(const std::vector<double>& values, bool log) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const double v : values) {
        if (plottable(v, log)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo <= hi)) {
        return log ? std::pair{1.0, 10.0} : std::pair{0.0, 1.0};
    }
    if (log) {
        lo = std::pow(10.0, std::floor(std::log10(lo)));
        hi = std::pow(10.0, std::ceil(std::log10(hi)));
        if (hi <= lo) {
            hi = lo * 10;
        }
    } else if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    return {lo, hi};
}

std::vector<double> ticks(const Axis& axis) {
    std::vector<double> out;
    if (axis.log) {
        const int a = static_cast<int>(std::lround(std::log10(axis.lo)));
        const int b = static_cast<int>(std::lround(std::log10(axis.hi)));
        const int stride = std::max(1, (b - a) / 8);
        for (int e = a; e <= b; e += stride) {
            out.push_back(std::pow(10.0, e));
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            out.push_back(axis.lo + (axis.hi - axis.lo) * i / 5.0);
        }
    }
    return out;
}

std::string tick_label(double v, bool log) {
    char buf[64];
    if (log) {
        std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(std::log10(v))));
    } else {
        std::snprintf(buf, sizeof buf, "%.3g", v);
    }
    return buf;
}

json row_json(const CavityRow& r) {
    return {{"omega_c_rad_per_s", r.omega_c},
            {"gamma_down_total_per_s", r.gamma_down},
            {"gamma_down_inertial_per_s", r.gamma_down_inertial},
            {"gamma_down_noninertial_per_s", r.gamma_down_ni},
            {"gamma_up_per_s", r.gamma_up},
            {"validity", r.validity.to_string()}};
}

json row_json(const GPRow& r) {
    return {{"n", r.n},
            {"phi_unitary_rad", r.phi_unitary},
            {"phi_in_rad", r.phi_in},
            {"phi_ni_rad", r.phi_ni},
            {"phi_nonunitary_total_rad", r.phi_nonunitary},
            {"pi_n_A_over_Omega0", r.pi_n_a_over_omega0},
            {"validity", r.validity.to_string()}};
}

} // namespace

std::string version_string() { return std::string("rotodyne ") + ROTODYNE_VERSION; }

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string csv_header(SweepKind kind) {
    if (kind == SweepKind::cavity) {
        return "omega_c_rad_per_s,gamma_down_total_per_s,gamma_down_inertial_per_s,"
               "gamma_down_noninertial_per_s,gamma_up_per_s,validity";
    }
    return "n,phi_unitary_rad,phi_in_rad,phi_ni_rad,phi_nonunitary_total_rad,pi_n_A_over_Omega0";
}

std::string to_csv(const SweepResult& result) {
    std::string out = csv_header(result.kind) + "\n";
    if (result.kind == SweepKind::cavity) {
        for (const auto& r : result.cavity_rows) {
            out += format_number(r.omega_c) + ',' + format_number(r.gamma_down) + ',' +
                   format_number(r.gamma_down_inertial) + ',' + format_number(r.gamma_down_ni) + ',' +
                   format_number(r.gamma_up) + ',' + r.validity.to_string() + '\n';
        }
    } else {
        for (const auto& r : result.gp_rows) {
            out += format_number(r.n) + ',' + format_number(r.phi_unitary) + ',' + format_number(r.phi_in) + ',' +
                   format_number(r.phi_ni) + ',' + format_number(r.phi_nonunitary) + ',' +
                   format_number(r.pi_n_a_over_omega0) + '\n';
        }
    }
    return out;
}

std::string to_json(const SweepResult& result) {
    json j;
    j["kind"] = result.kind == SweepKind::cavity ? "sweep-cavity" : "gp-vs-n";
    j["metadata"] = {
        {"version", version_string()},
        {"axis", result.axis},
        {"grid", result.grid_note},
        {"points", result.grid.size()},
        {"validity", result.validity.to_string()},
        {"scenario", json::parse(scenario_to_json(result.scenario))},
    };
    json rows = json::array();
    if (result.kind == SweepKind::cavity) {
        for (const auto& r : result.cavity_rows) {
            rows.push_back(row_json(r));
        }
    } else {
        for (const auto& r : result.gp_rows) {
            rows.push_back(row_json(r));
        }
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string to_svg(const SweepResult& result, const PlotOptions& opts) {
    constexpr double width = 720;
    constexpr double height = 480;
    constexpr double left = 90;
    constexpr double right = 30;
    constexpr double top = 50;
    constexpr double bottom = 60;

    std::vector<double> x = result.grid;
    std::vector<Series> series;
    std::string x_label;
    std::string y_label;
    const auto mag = [&](double v) { return opts.magnitude ? std::abs(v) : v; };
    if (result.kind == SweepKind::cavity) {
        Series in{"inertial", "#1f5fa8", {}};
        Series ni{"non-inertial", "#c2471b", {}};
        for (const auto& r : result.cavity_rows) {
            in.y.push_back(mag(r.gamma_down_inertial));
            ni.y.push_back(mag(r.gamma_down_ni));
        }
        series = {in, ni};
        x_label = "omega_c (rad/s)";
        y_label = opts.magnitude ? "|Gamma_down| (1/s)" : "Gamma_down (1/s)";
    } else {
        Series in{"inertial", "#1f5fa8", {}};
        Series ni{"non-inertial", "#c2471b", {}};
        for (const auto& r : result.gp_rows) {
            in.y.push_back(mag(r.phi_in));
            ni.y.push_back(mag(r.phi_ni));
        }
        series = {in, ni};
        x_label = "n (quasi-cycles)";
        y_label = opts.magnitude ? "|phase| (rad)" : "phase (rad)";
    }

    std::vector<double> all_y;
    for (const auto& s : series) {
        all_y.insert(all_y.end(), s.y.begin(), s.y.end());
    }
    const auto [xlo, xhi] = data_range(x, opts.log_x);
    const auto [ylo, yhi] = data_range(all_y, opts.log_y);
    const Axis ax{xlo, xhi, opts.log_x, left, width - right};
    const Axis ay{ylo, yhi, opts.log_y, height - bottom, top};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<metadata>" << version_string() << "; scenario " << result.scenario.name << "; grid " << result.grid_note
        << "</metadata>\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << opts.title
        << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
        << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (const double t : ticks(ax)) {
        const std::string px = fixed3(ax.map(t));
        svg << "<line x1=\"" << px << "\" y1=\"" << height - bottom << "\" x2=\"" << px << "\" y2=\"" << top
            << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << px << "\" y=\"" << height - bottom + 18 << "\" text-anchor=\"middle\">"
            << tick_label(t, ax.log) << "</text>\n";
    }
    for (const double t : ticks(ay)) {
        const std::string py = fixed3(ay.map(t));
        svg << "<line x1=\"" << left << "\" y1=\"" << py << "\" x2=\"" << width - right << "\" y2=\"" << py
            << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << py << "\" text-anchor=\"end\" dominant-baseline=\"middle\">"
            << tick_label(t, ay.log) << "</text>\n";
    }
    svg << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\">"
        << x_label << "</text>\n";
    svg << "<text x=\"18\" y=\"" << (top + height - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (top + height - bottom) / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        // Points that cannot be drawn (zero on a log axis) break the line.
        std::string points;
        const auto flush = [&] {
            if (!points.empty()) {
                svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"" << points
                    << "\"/>\n";
                points.clear();
            }
        };
        for (std::size_t i = 0; i < x.size() && i < s.y.size(); ++i) {
            if (!plottable(x[i], ax.log) || !plottable(s.y[i], ay.log)) {
                flush();
                continue;
            }
            if (!points.empty()) {
                points += ' ';
            }
            points += fixed3(ax.map(x[i])) + ',' + fixed3(ay.map(s.y[i]));
        }
        flush();
        const double ly = top + 16 + 18 * static_cast<double>(k);
        svg << "<line x1=\"" << width - right - 150 << "\" y1=\"" << ly << "\" x2=\"" << width - right - 120
            << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << width - right - 114 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InputError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw InputError("failed writing '" + path.string() + "'");
    }
}

} // namespace rotodyne
