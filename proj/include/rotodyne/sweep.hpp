// sweep.hpp: parameter sweeps over cavity frequency and cycle count

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rotodyne/scenario.hpp"
#include "rotodyne/validity.hpp"

namespace rotodyne {

struct CavityRow {
    double omega_c{0};
    double gamma_down{0};
    double gamma_down_inertial{0};
    double gamma_down_ni{0};
    double gamma_up{0};
    ValidityFlags validity;
};

struct GPRow {
    double n{0};
    double phi_unitary{0};
    double phi_in{0};
    double phi_ni{0};
    double phi_nonunitary{0};
    double pi_n_a_over_omega0{0};
    ValidityFlags validity;
};

enum class SweepKind { cavity, cycles };

struct SweepResult {
    SweepKind kind{SweepKind::cavity};
    std::string axis;        // "omega_c_rad_per_s" or "n"
    std::string grid_note;   // how the grid was built, for metadata
    std::vector<double> grid;
    std::vector<CavityRow> cavity_rows; // kind == cavity
    std::vector<GPRow> gp_rows;         // kind == cycles
    Scenario scenario;
    ValidityFlags validity; // union over rows
};

// start:stop:points[:log]; throws InputError on malformed text.
struct GridSpec {
    double start{0};
    double stop{0};
    std::size_t points{0};
    bool log{false};
};
GridSpec parse_grid(std::string_view text);
std::vector<double> make_grid(const GridSpec& spec);
std::string to_string(const GridSpec& spec);

// Adds the anchor values inside [front, back] and keeps the grid sorted and
// free of duplicates.
std::vector<double> with_anchors(std::vector<double> grid, const std::vector<double>& anchors);

// Resonance frequencies worth landing on exactly for this scenario: the tuned
// cavity frequency and Omega0.
std::vector<double> cavity_anchors(const Scenario& scn);

// Default grids. Cavity sweeps are log-spaced with the anchors inserted;
// cycle sweeps run log-spaced from 1 to n_max.
GridSpec default_cavity_grid(const Scenario& scn, std::size_t points = 400);
GridSpec default_cycle_grid(const Scenario& scn, std::size_t points = 400);

// Grid must be non-empty, positive and strictly increasing.
SweepResult sweep_cavity(const Scenario& scn, const std::vector<double>& omega_c_grid);
// n values must be positive.
SweepResult gp_vs_n(const Scenario& scn, const std::vector<double>& n_grid);

} // namespace rotodyne
