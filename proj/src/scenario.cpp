#include "rotodyne/scenario.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rotodyne/errors.hpp"

namespace rotodyne {

namespace {

using json = nlohmann::json;

constexpr std::array<Tuning, 4> all_tunings{Tuning::fixed, Tuning::omega_plus, Tuning::obar_plus, Tuning::omega0};

double resolve_omega_c(const Scenario& scn) {
    const auto kin = derive_kinematics(scn.trajectory, scn.atom);
    switch (scn.tuning) {
    case Tuning::fixed:
        return scn.cavity.omega_c;
    case Tuning::omega_plus:
        return kin.omega_plus;
    case Tuning::obar_plus:
        return kin.obar_plus;
    case Tuning::omega0:
        return kin.omega0;
    }
    return scn.cavity.omega_c;
}

// Rejects keys outside `allowed`; a misspelt unit suffix should not fall back
// to a default without notice.
void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) {
        throw InputError("scenario: '" + std::string(where) + "' must be a JSON object");
    }
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const auto key : allowed) {
            known = known || item.key() == key;
        }
        if (!known) {
            throw InputError("scenario: unknown key '" + item.key() + "' in '" + std::string(where) + "'");
        }
    }
}

double number_or(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw InputError(std::string("scenario: '") + key + "' must be a number");
    }
    return v.get<double>();
}

std::string string_or(const json& obj, const char* key, std::string fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_string()) {
        throw InputError(std::string("scenario: '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

const json& section(const json& root, const char* key) {
    static const json empty = json::object();
    return root.contains(key) ? root.at(key) : empty;
}

} // namespace

std::string_view to_string(Tuning tuning) {
    switch (tuning) {
    case Tuning::fixed:
        return "fixed";
    case Tuning::omega_plus:
        return "omega_plus";
    case Tuning::obar_plus:
        return "obar_plus";
    case Tuning::omega0:
        return "omega0";
    }
    return "fixed";
}

Tuning parse_tuning(std::string_view name) {
    for (const auto t : all_tunings) {
        if (name == to_string(t)) {
            return t;
        }
    }
    throw InputError("unknown cavity tuning '" + std::string(name) +
                     "' (expected fixed, omega_plus, obar_plus or omega0)");
}

Scenario finalize(Scenario scn) {
    validate(scn.atom);
    validate(scn.trajectory);
    if (!(std::isfinite(scn.n_max) && scn.n_max >= 1)) {
        throw InputError("scenario: n_max must be >= 1");
    }
    if (scn.name.empty()) {
        throw InputError("scenario: name must not be empty");
    }
    scn.cavity.omega_c = resolve_omega_c(scn);
    validate(scn.cavity);
    return scn;
}

std::vector<std::string> preset_names() { return {"case1", "case2"}; }

std::string preset_description(std::string_view name) {
    if (name == "case1") {
        return "fast rotation, omega = 5e9 rad/s >> Omega0 = 1e7 rad/s; R = 1e-6 m, V = 1e-7 m^3, "
               "Q = 1e7, cavity tuned to omega + Omega0_bar";
    }
    if (name == "case2") {
        return "slow rotation, omega = 1e5 rad/s << Omega0 = 1e7 rad/s; R = 1e-3 m, V = 1e-3 m^3, "
               "Q = 1e7, cavity tuned to Omega0_bar + omega";
    }
    throw InputError("unknown preset '" + std::string(name) + "'");
}

Scenario preset(std::string_view name) {
    Scenario scn;
    scn.atom.omega0 = 1e7;
    scn.atom.theta0 = constants::pi / 2;
    scn.cavity.q_factor = 1e7;
    if (name == "case1") {
        scn.name = "case1";
        scn.trajectory.omega = 5e9;
        scn.trajectory.radius = 1e-6;
        scn.cavity.volume = 1e-7;
        scn.tuning = Tuning::omega_plus;
        scn.engine = RateFamily::case1;
        scn.n_max = 1e5;
    } else if (name == "case2") {
        scn.name = "case2";
        scn.trajectory.omega = 1e5;
        scn.trajectory.radius = 1e-3;
        scn.cavity.volume = 1e-3;
        scn.tuning = Tuning::obar_plus;
        scn.engine = RateFamily::case2;
        scn.n_max = 1e7;
    } else {
        throw InputError("unknown preset '" + std::string(name) + "' (expected case1 or case2)");
    }
    return finalize(scn);
}

Scenario load_scenario(std::string_view name_or_path) {
    for (const auto& name : preset_names()) {
        if (name_or_path == name) {
            return preset(name);
        }
    }
    const std::filesystem::path path{std::string(name_or_path)};
    if (!std::filesystem::exists(path)) {
        throw InputError("'" + std::string(name_or_path) + "' is neither a preset nor an existing file");
    }
    return read_scenario_file(path);
}

std::string scenario_to_json(const Scenario& scn) {
    json j;
    j["name"] = scn.name;
    j["engine"] = std::string(to_string(scn.engine));
    j["n_max"] = scn.n_max;
    j["atom"] = {
        {"omega0_rad_per_s", scn.atom.omega0},
        {"dipole_c_m", scn.atom.dipole},
        {"theta0_rad", scn.atom.theta0},
    };
    j["trajectory"] = {
        {"radius_m", scn.trajectory.radius},
        {"omega_rad_per_s", scn.trajectory.omega},
        {"center_x_m", scn.trajectory.center_x},
        {"center_z_m", scn.trajectory.center_z},
    };
    j["cavity"] = {
        {"tuning", std::string(to_string(scn.tuning))},
        {"omega_c_rad_per_s", scn.cavity.omega_c},
        {"q_factor", scn.cavity.q_factor},
        {"volume_m3", scn.cavity.volume},
    };
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("scenario: malformed JSON: ") + e.what());
    }
    check_keys(root, "scenario", {"name", "engine", "n_max", "atom", "trajectory", "cavity"});

    Scenario scn;
    scn.name = string_or(root, "name", scn.name);
    scn.engine = parse_rate_family(string_or(root, "engine", std::string(to_string(scn.engine))));
    scn.n_max = number_or(root, "n_max", scn.n_max);

    const json& atom = section(root, "atom");
    check_keys(atom, "atom", {"omega0_rad_per_s", "dipole_c_m", "theta0_rad"});
    scn.atom.omega0 = number_or(atom, "omega0_rad_per_s", scn.atom.omega0);
    scn.atom.dipole = number_or(atom, "dipole_c_m", scn.atom.dipole);
    scn.atom.theta0 = number_or(atom, "theta0_rad", scn.atom.theta0);

    const json& traj = section(root, "trajectory");
    check_keys(traj, "trajectory", {"radius_m", "omega_rad_per_s", "center_x_m", "center_z_m"});
    scn.trajectory.radius = number_or(traj, "radius_m", scn.trajectory.radius);
    scn.trajectory.omega = number_or(traj, "omega_rad_per_s", scn.trajectory.omega);
    scn.trajectory.center_x = number_or(traj, "center_x_m", scn.trajectory.center_x);
    scn.trajectory.center_z = number_or(traj, "center_z_m", scn.trajectory.center_z);

    const json& cav = section(root, "cavity");
    check_keys(cav, "cavity", {"tuning", "omega_c_rad_per_s", "q_factor", "volume_m3"});
    scn.tuning = parse_tuning(string_or(cav, "tuning", "fixed"));
    if (scn.tuning == Tuning::fixed && !cav.contains("omega_c_rad_per_s")) {
        throw InputError("scenario: fixed cavity tuning needs 'omega_c_rad_per_s'");
    }
    scn.cavity.omega_c = number_or(cav, "omega_c_rad_per_s", scn.cavity.omega_c);
    scn.cavity.q_factor = number_or(cav, "q_factor", scn.cavity.q_factor);
    scn.cavity.volume = number_or(cav, "volume_m3", scn.cavity.volume);
    return finalize(scn);
}

Scenario read_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

KinematicDerived kinematics(const Scenario& scn) { return derive_kinematics(scn.trajectory, scn.atom); }

RateSet scenario_rates(const Scenario& scn) { return scenario_rates(scn, scn.cavity); }

RateSet scenario_rates(const Scenario& scn, const CavitySpec& cavity) {
    return rates_for(scn.engine, kinematics(scn), scn.atom, cavity);
}

GPEngine default_gp_engine(const Scenario& scn) {
    switch (scn.engine) {
    case RateFamily::case1:
        return GPEngine::case1;
    case RateFamily::case2:
        return GPEngine::case2;
    case RateFamily::general:
        return GPEngine::quasi_cycle;
    }
    return GPEngine::quasi_cycle;
}

GPResult scenario_gp(const Scenario& scn, GPEngine engine, double n, double theta) {
    const auto kin = kinematics(scn);
    const double w0 = scn.atom.omega0;
    switch (engine) {
    case GPEngine::case1:
        return gp_case1(kin, scn.atom, scn.cavity, n, theta);
    case GPEngine::case2:
        return gp_case2(kin, scn.atom, scn.cavity, n, theta);
    case GPEngine::quasi_cycle:
        return gp_split(scenario_rates(scn), n, theta, w0);
    case GPEngine::tong:
    case GPEngine::exact_integral: {
        const RateSet rates = scenario_rates(scn);
        const EvolutionParams p{rates.a_coeff, rates.b_coeff, w0, theta};
        const double t = quasi_cycle_time(n, w0);
        GPResult r = engine == GPEngine::tong ? gp_tong(p, t) : gp_exact_integral(p, t);
        r.validity |= rates.validity;
        return r;
    }
    }
    throw InputError("unknown GP engine");
}

} // namespace rotodyne
