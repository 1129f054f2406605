// scenario.hpp: named parameter sets and their JSON form
//
// JSON keys carry their units (omega_rad_per_s, radius_m, volume_m3, ...) so
// that a file cannot silently mix Hz and rad/s.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rotodyne/geometric_phase.hpp"
#include "rotodyne/kinematics.hpp"
#include "rotodyne/params.hpp"
#include "rotodyne/rates.hpp"

namespace rotodyne {

// How the cavity frequency is chosen. Anything but `fixed` is recomputed
// from the kinematics whenever the scenario is loaded.
enum class Tuning { fixed, omega_plus, obar_plus, omega0 };
std::string_view to_string(Tuning tuning);
Tuning parse_tuning(std::string_view name); // throws InputError

struct Scenario {
    std::string name{"custom"};
    AtomParams atom;
    TrajectoryParams trajectory;
    CavitySpec cavity;
    Tuning tuning{Tuning::fixed};
    RateFamily engine{RateFamily::general};
    double n_max{1e5};
};

// Validates every field and resolves the tuned cavity frequency.
Scenario finalize(Scenario scn);

std::vector<std::string> preset_names();
std::string preset_description(std::string_view name);
Scenario preset(std::string_view name); // throws InputError

// A preset name or a path to a JSON file.
Scenario load_scenario(std::string_view name_or_path);

std::string scenario_to_json(const Scenario& scn);
Scenario scenario_from_json(std::string_view text); // throws InputError
Scenario read_scenario_file(const std::filesystem::path& path);

KinematicDerived kinematics(const Scenario& scn);

// Co-moving rates of the scenario's family, optionally at another cavity.
RateSet scenario_rates(const Scenario& scn);
RateSet scenario_rates(const Scenario& scn, const CavitySpec& cavity);

// Phase over n quasi-cycles. The quasi-cycle engine uses the scenario's rate
// family and reports the inertial / non-inertial split; tong and
// exact-integral run on (A, B) of that family with T = 2 pi n / Omega0.
GPResult scenario_gp(const Scenario& scn, GPEngine engine, double n, double theta);

// case1 -> case1, case2 -> case2, general -> quasi-cycle.
GPEngine default_gp_engine(const Scenario& scn);

} // namespace rotodyne
