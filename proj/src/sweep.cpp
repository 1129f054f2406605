#include "rotodyne/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "rotodyne/errors.hpp"

namespace rotodyne {

namespace {

double parse_number(std::string_view text, std::string_view what) {
    double value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw InputError("grid: cannot read " + std::string(what) + " from '" + std::string(text) + "'");
    }
    return value;
}

void check_grid(const std::vector<double>& grid, std::string_view what) {
    if (grid.empty()) {
        throw InputError(std::string(what) + ": grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(std::isfinite(grid[i]) && grid[i] > 0)) {
            throw InputError(std::string(what) + ": grid values must be positive and finite");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InputError(std::string(what) + ": grid must be strictly increasing");
        }
    }
}

} // namespace

GridSpec parse_grid(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    while (true) {
        const auto pos = text.find(':', begin);
        parts.push_back(text.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin));
        if (pos == std::string_view::npos) {
            break;
        }
        begin = pos + 1;
    }
    if (parts.size() != 3 && parts.size() != 4) {
        throw InputError("grid: expected start:stop:points[:log], got '" + std::string(text) + "'");
    }
    GridSpec spec;
    spec.start = parse_number(parts[0], "start");
    spec.stop = parse_number(parts[1], "stop");
    const double points = parse_number(parts[2], "points");
    if (!(points >= 1 && points == std::floor(points) && points <= 1e7)) {
        throw InputError("grid: points must be an integer in [1, 1e7]");
    }
    spec.points = static_cast<std::size_t>(points);
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            spec.log = true;
        } else if (parts[3] != "lin") {
            throw InputError("grid: spacing must be 'log' or 'lin', got '" + std::string(parts[3]) + "'");
        }
    }
    if (spec.points > 1 && !(spec.stop > spec.start)) {
        throw InputError("grid: stop must exceed start");
    }
    if (spec.log && !(spec.start > 0)) {
        throw InputError("grid: log spacing needs a positive start");
    }
    return spec;
}

std::vector<double> make_grid(const GridSpec& spec) {
    if (spec.points == 0) {
        throw InputError("grid: no points");
    }
    std::vector<double> grid(spec.points);
    if (spec.points == 1) {
        grid[0] = spec.start;
        return grid;
    }
    const double last = static_cast<double>(spec.points - 1);
    for (std::size_t i = 0; i < spec.points; ++i) {
        const double t = static_cast<double>(i) / last;
        if (spec.log) {
            grid[i] = std::exp(std::log(spec.start) + (std::log(spec.stop) - std::log(spec.start)) * t);
        } else {
            grid[i] = spec.start + (spec.stop - spec.start) * t;
        }
    }
    grid.front() = spec.start;
    grid.back() = spec.stop;
    return grid;
}

std::string to_string(const GridSpec& spec) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g:%.17g:%zu:%s", spec.start, spec.stop, spec.points, spec.log ? "log" : "lin");
    return buf;
}

std::vector<double> with_anchors(std::vector<double> grid, const std::vector<double>& anchors) {
    if (grid.empty()) {
        return grid;
    }
    const double lo = grid.front();
    const double hi = grid.back();
    for (const double a : anchors) {
        if (!(a >= lo && a <= hi)) {
            continue;
        }
        std::erase_if(grid, [a](double g) { return std::abs(g - a) <= 1e-12 * std::abs(a); });
        grid.push_back(a);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<double> cavity_anchors(const Scenario& scn) { return {scn.cavity.omega_c, scn.atom.omega0}; }

GridSpec default_cavity_grid(const Scenario& scn, std::size_t points) {
    const auto kin = kinematics(scn);
    GridSpec spec;
    spec.points = points;
    spec.log = true;
    switch (scn.tuning) {
    case Tuning::omega_plus:
        spec.start = kin.omega0 / 2;
        spec.stop = 2 * kin.omega_plus;
        break;
    case Tuning::obar_plus:
        spec.start = 0.9 * kin.obar_minus;
        spec.stop = 1.1 * kin.obar_plus;
        break;
    default:
        spec.start = std::min(kin.omega0, scn.cavity.omega_c) / 2;
        spec.stop = 2 * std::max(kin.omega_plus, scn.cavity.omega_c);
        break;
    }
    if (!(spec.start > 0)) {
        spec.start = spec.stop * 1e-3;
    }
    return spec;
}

GridSpec default_cycle_grid(const Scenario& scn, std::size_t points) {
    return GridSpec{1.0, scn.n_max, points, true};
}

SweepResult sweep_cavity(const Scenario& scn, const std::vector<double>& omega_c_grid) {
    check_grid(omega_c_grid, "sweep_cavity");
    SweepResult out;
    out.kind = SweepKind::cavity;
    out.axis = "omega_c_rad_per_s";
    out.grid_note = "explicit grid, " + std::to_string(omega_c_grid.size()) + " points";
    out.grid = omega_c_grid;
    out.scenario = scn;
    out.cavity_rows.reserve(omega_c_grid.size());
    const auto kin = kinematics(scn);
    for (const double wc : omega_c_grid) {
        CavitySpec cavity = scn.cavity;
        cavity.omega_c = wc;
        const RateSet r = rates_for(scn.engine, kin, scn.atom, cavity);
        out.cavity_rows.push_back({wc, r.gamma_down, r.gamma_down_inertial, r.gamma_down_ni, r.gamma_up, r.validity});
        out.validity |= r.validity;
    }
    return out;
}

SweepResult gp_vs_n(const Scenario& scn, const std::vector<double>& n_grid) {
    if (n_grid.empty()) {
        throw InputError("gp_vs_n: grid is empty");
    }
    for (const double n : n_grid) {
        if (!(std::isfinite(n) && n > 0)) {
            throw InputError("gp_vs_n: n values must be positive and finite");
        }
    }
    SweepResult out;
    out.kind = SweepKind::cycles;
    out.axis = "n";
    out.grid_note = "explicit grid, " + std::to_string(n_grid.size()) + " points";
    out.grid = n_grid;
    out.scenario = scn;
    out.gp_rows.reserve(n_grid.size());
    const GPEngine engine = default_gp_engine(scn);
    for (const double n : n_grid) {
        const GPResult g = scenario_gp(scn, engine, n, scn.atom.theta0);
        GPRow row;
        row.n = n;
        row.phi_unitary = g.unitary_part;
        row.phi_in = g.inertial_part.value_or(0.0);
        row.phi_ni = g.noninertial_part.value_or(0.0);
        row.phi_nonunitary = g.nonunitary_part;
        row.pi_n_a_over_omega0 = g.pi_n_a_over_omega0;
        row.validity = g.validity;
        out.gp_rows.push_back(row);
        out.validity |= g.validity;
    }
    return out;
}

} // namespace rotodyne
