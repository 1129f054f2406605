#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rotodyne/cli.hpp"
#include "rotodyne/constants.hpp"
#include "rotodyne/errors.hpp"
#include "rotodyne/output.hpp"
#include "rotodyne/scenario.hpp"
#include "rotodyne/sweep.hpp"

using namespace rotodyne;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    ::unsetenv("ROTODYNE_OUT");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// "key  value" lines of the text format
std::map<std::string, std::string> fields(const std::string& text) {
    std::map<std::string, std::string> m;
    std::istringstream in(text);
    std::string key;
    std::string value;
    while (in >> key >> value) {
        m[key] = value;
    }
    return m;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("rotodyne_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::size_t argmax(const std::vector<CavityRow>& rows, double CavityRow::*field) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].*field > rows[best].*field) {
            best = i;
        }
    }
    return best;
}

std::size_t nearest(const std::vector<double>& grid, double x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (std::abs(grid[i] - x) < std::abs(grid[best] - x)) {
            best = i;
        }
    }
    return best;
}

} // namespace

TEST_CASE("presets carry the published parameters") {
    const Scenario a = preset("case1");
    CHECK(a.trajectory.omega == 5e9);
    CHECK(a.atom.omega0 == 1e7);
    CHECK(a.cavity.volume == 1e-7);
    CHECK(a.trajectory.radius == 1e-6);
    CHECK(a.cavity.q_factor == 1e7);
    CHECK(a.atom.theta0 == constants::pi / 2);
    CHECK(a.tuning == Tuning::omega_plus);
    CHECK(a.cavity.omega_c == kinematics(a).omega_plus);
    CHECK(a.engine == RateFamily::case1);

    const Scenario b = preset("case2");
    CHECK(b.trajectory.omega == 1e5);
    CHECK(b.atom.omega0 == 1e7);
    CHECK(b.cavity.volume == 1e-3);
    CHECK(b.trajectory.radius == 1e-3);
    CHECK(b.cavity.q_factor == 1e7);
    CHECK(b.atom.theta0 == constants::pi / 2);
    CHECK(b.cavity.omega_c == kinematics(b).obar_plus);
    CHECK(b.engine == RateFamily::case2);
    CHECK(kinematics(b).accel == doctest::Approx(1e7).epsilon(1e-15));

    CHECK(preset_names() == std::vector<std::string>{"case1", "case2"});
    CHECK_THROWS_AS(preset("case3"), InputError);
}

TEST_CASE("scenario JSON") {
    SUBCASE("round trip gives identical sweeps") {
        for (const auto& name : preset_names()) {
            const Scenario scn = preset(name);
            const Scenario back = scenario_from_json(scenario_to_json(scn));
            CHECK(scenario_to_json(back) == scenario_to_json(scn));
            const auto grid = with_anchors(make_grid(default_cavity_grid(scn)), cavity_anchors(scn));
            CHECK(to_csv(sweep_cavity(back, grid)) == to_csv(sweep_cavity(scn, grid)));
            const auto ns = make_grid(default_cycle_grid(scn, 50));
            CHECK(to_csv(gp_vs_n(back, ns)) == to_csv(gp_vs_n(scn, ns)));
        }
    }
    SUBCASE("file round trip") {
        const fs::path dir = scratch("json");
        fs::create_directories(dir);
        write_file(dir / "s.json", scenario_to_json(preset("case2")));
        CHECK(scenario_to_json(load_scenario((dir / "s.json").string())) == scenario_to_json(preset("case2")));
        fs::remove_all(dir);
    }
    SUBCASE("defaults and fixed tuning") {
        const Scenario s = scenario_from_json(R"({"cavity": {"tuning": "fixed", "omega_c_rad_per_s": 2e7}})");
        CHECK(s.cavity.omega_c == 2e7);
        CHECK(s.engine == RateFamily::general);
        CHECK(s.atom.omega0 == 1e7);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(scenario_from_json("{"), InputError);
        CHECK_THROWS_AS(scenario_from_json("[]"), InputError);
        CHECK_THROWS_AS(scenario_from_json(R"({"atom": {"omega0_hz": 1e7}})"), InputError);
        CHECK_THROWS_AS(scenario_from_json(R"({"colour": 1})"), InputError);
        CHECK_THROWS_AS(scenario_from_json(R"({"atom": {"omega0_rad_per_s": "fast"}})"), InputError);
        CHECK_THROWS_AS(scenario_from_json(R"({"atom": {"omega0_rad_per_s": -1}})"), InputError);
        CHECK_THROWS_AS(scenario_from_json(R"({"cavity": {"tuning": "fixed"}})"), InputError);
        CHECK_THROWS_AS(scenario_from_json(R"({"cavity": {"tuning": "sideways"}})"), InputError);
        CHECK_THROWS_AS(scenario_from_json(R"({"engine": "case3"})"), InputError);
        CHECK_THROWS_AS(scenario_from_json(R"({"trajectory": {"radius_m": 1, "omega_rad_per_s": 3e8}})"), InputError);
        CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), InputError);
    }
}

TEST_CASE("grids") {
    const auto g = parse_grid("1:100:3:log");
    CHECK(g.start == 1);
    CHECK(g.stop == 100);
    CHECK(g.points == 3);
    CHECK(g.log);
    const auto v = make_grid(g);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(v[2] == 100.0);
    CHECK_FALSE(parse_grid("0:1:5").log);
    CHECK(make_grid(parse_grid("0:1:5:lin"))[2] == 0.5);
    CHECK(parse_grid(to_string(g)).stop == 100);
    for (const char* bad : {"", "1:2", "1:2:3:4:5", "a:2:3", "1:2:0", "1:2:2.5", "2:1:3", "0:1:3:log", "1:2:3:cubic", "1:inf:3"}) {
        CHECK_THROWS_AS(parse_grid(bad), InputError);
    }
    const auto anchored = with_anchors({1.0, 2.0, 3.0}, {2.0 + 1e-13, 2.5, 7.0});
    CHECK(anchored == std::vector<double>{1.0, 2.0 + 1e-13, 2.5, 3.0});
}

TEST_CASE("cavity sweeps") {
    SUBCASE("input errors") {
        const Scenario s = preset("case1");
        CHECK_THROWS_AS(sweep_cavity(s, {}), InputError);
        CHECK_THROWS_AS(sweep_cavity(s, {1e7, -1.0}), InputError);
        CHECK_THROWS_AS(sweep_cavity(s, {2e7, 1e7}), InputError);
        CHECK_THROWS_AS(sweep_cavity(s, {1e7, 1e7}), InputError);
    }
    SUBCASE("single point equals the direct evaluation") {
        for (const auto& name : preset_names()) {
            const Scenario s = preset(name);
            const auto r = sweep_cavity(s, {s.cavity.omega_c});
            REQUIRE(r.cavity_rows.size() == 1);
            const RateSet direct = scenario_rates(s);
            CHECK(r.cavity_rows[0].gamma_down == direct.gamma_down);
            CHECK(r.cavity_rows[0].gamma_down_inertial == direct.gamma_down_inertial);
            CHECK(r.cavity_rows[0].gamma_down_ni == direct.gamma_down_ni);
            CHECK(r.cavity_rows[0].gamma_up == direct.gamma_up);
        }
    }
    SUBCASE("fast orbit: non-inertial peak at omega_plus") {
        const Scenario s = preset("case1");
        const auto grid = with_anchors(make_grid(default_cavity_grid(s)), cavity_anchors(s));
        const auto r = sweep_cavity(s, grid);
        CHECK(r.cavity_rows.size() == grid.size());
        const std::size_t peak = argmax(r.cavity_rows, &CavityRow::gamma_down_ni);
        const std::size_t target = nearest(grid, kinematics(s).omega_plus);
        CHECK(peak == target);
        CHECK(argmax(r.cavity_rows, &CavityRow::gamma_down_inertial) == nearest(grid, 1e7));
    }
    SUBCASE("slow orbit: distinct peaks at Omega0 and Omega0_bar_plus") {
        const Scenario s = preset("case2");
        for (const bool anchors : {true, false}) {
            auto grid = make_grid(default_cavity_grid(s));
            if (anchors) {
                grid = with_anchors(grid, cavity_anchors(s));
            }
            const auto r = sweep_cavity(s, grid);
            const std::size_t in = argmax(r.cavity_rows, &CavityRow::gamma_down_inertial);
            const std::size_t ni = argmax(r.cavity_rows, &CavityRow::gamma_down_ni);
            CHECK(in != ni);
            const auto one_step = [&](std::size_t i, double x) {
                const std::size_t j = nearest(grid, x);
                return (i > j ? i - j : j - i) <= 1;
            };
            CHECK(one_step(in, 1e7));
            CHECK(one_step(ni, kinematics(s).obar_plus));
            CHECK(r.validity.ok());
        }
    }
    SUBCASE("rows carry validity") {
        Scenario s = preset("case1");
        s.trajectory.omega = 1e7;
        s = finalize(s);
        const auto r = sweep_cavity(s, {1e6, 1e7, 1e8});
        for (const auto& row : r.cavity_rows) {
            CHECK(row.validity.has(Flag::regime));
        }
        CHECK(r.validity.has(Flag::regime));
        CHECK(to_csv(r).find(",regime\n") != std::string::npos);
    }
}

TEST_CASE("phase against cycle count") {
    SUBCASE("fast orbit at 1e5 cycles") {
        const auto r = gp_vs_n(preset("case1"), {1e5});
        const auto& row = r.gp_rows.at(0);
        CHECK(std::abs(std::log10(std::abs(row.phi_ni) / 1e-6)) <= 1.0);
        CHECK(std::abs(std::log10(std::abs(row.phi_in) / 1e-13)) <= 1.0);
        CHECK(row.phi_nonunitary == row.phi_in + row.phi_ni);
        CHECK(row.phi_unitary == doctest::Approx(-constants::pi * 1e5).epsilon(1e-15));
    }
    SUBCASE("slow orbit at 1e7 cycles") {
        const auto& row = gp_vs_n(preset("case2"), {1e7}).gp_rows.at(0);
        const double ratio = std::abs(row.phi_ni / row.phi_in);
        CHECK(ratio >= 0.1);
        CHECK(ratio <= 10);
    }
    SUBCASE("doubling n quadruples the correction") {
        for (const auto& name : preset_names()) {
            for (const double n : {3.0, 1e3, 12345.0}) {
                const auto r = gp_vs_n(preset(name), {n, 2 * n});
                CHECK(r.gp_rows[1].phi_ni == 4 * r.gp_rows[0].phi_ni);
                CHECK(r.gp_rows[1].phi_in == 4 * r.gp_rows[0].phi_in);
            }
        }
    }
    SUBCASE("general family goes through the quasi-cycle split") {
        Scenario s = preset("case1");
        s.engine = RateFamily::general;
        const auto& row = gp_vs_n(s, {1e5}).gp_rows.at(0);
        CHECK(row.phi_ni != 0.0);
        CHECK(row.phi_nonunitary == row.phi_in + row.phi_ni);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(gp_vs_n(preset("case1"), {}), InputError);
        CHECK_THROWS_AS(gp_vs_n(preset("case1"), {0.0}), InputError);
        CHECK_THROWS_AS(gp_vs_n(preset("case1"), {NAN}), InputError);
    }
}

TEST_CASE("CSV and JSON output") {
    const Scenario s = preset("case2");
    const auto sweep = sweep_cavity(s, {9e6, 1e7, 1.01e7});
    const std::string csv = to_csv(sweep);
    CHECK(csv.rfind(
              "omega_c_rad_per_s,gamma_down_total_per_s,gamma_down_inertial_per_s,gamma_down_noninertial_per_s,"
              "gamma_up_per_s,validity\n",
              0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.find("9.0000000000000000e+06,") != std::string::npos);
    CHECK(csv == to_csv(sweep_cavity(s, {9e6, 1e7, 1.01e7})));

    const auto cycles = gp_vs_n(s, {1.0, 10.0});
    CHECK(to_csv(cycles).rfind("n,phi_unitary_rad,phi_in_rad,phi_ni_rad,phi_nonunitary_total_rad,pi_n_A_over_Omega0\n", 0) == 0);
    CHECK(format_number(0.1) == "1.0000000000000001e-01");
    CHECK(format_number(-2.5e-300) == "-2.5000000000000000e-300");

    const std::string json = to_json(cycles);
    CHECK(json.find("\"validity\"") != std::string::npos);
    CHECK(json.find("\"scenario\"") != std::string::npos);
    CHECK(json.find(version_string()) != std::string::npos);

    const std::string svg = to_svg(sweep, {"t", true, true, true});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg == to_svg(sweep, {"t", true, true, true}));
}

TEST_CASE("command line") {
    SUBCASE("presets and help") {
        const auto r = cli({"presets"});
        CHECK(r.code == 0);
        CHECK(r.out.find("case1") != std::string::npos);
        CHECK(r.out.find("case2") != std::string::npos);
        CHECK(cli({"--help"}).code == 0);
        CHECK(cli({"--version"}).out == version_string() + "\n");
    }
    SUBCASE("input errors exit with 1") {
        for (const std::vector<std::string>& args :
             std::vector<std::vector<std::string>>{{},
                                                   {"frobnicate"},
                                                   {"rates", "--bogus"},
                                                   {"rates", "--scenario", "case9"},
                                                   {"rates", "--format", "xml"},
                                                   {"gp", "--engine", "berry"},
                                                   {"gp", "--n", "0"},
                                                   {"gp", "--n", "2.5"},
                                                   {"sweep-cavity", "--grid", "1:2"},
                                                   {"sweep-cavity", "--plot"},
                                                   {"gp-vs-n", "--grid", "0:10:5"},
                                                   {"rates", "--config", "/nonexistent.json"}}) {
            const auto r = cli(args);
            CHECK(r.code == 1);
            CHECK_FALSE(r.err.empty());
        }
        const auto r = cli({"frobnicate"});
        CHECK(r.err.find("Usage") != std::string::npos);
    }
    SUBCASE("numerical failure exits with 2") {
        const auto r = cli({"gp", "--scenario", "case2", "--engine", "tong", "--n", "10000000"});
        CHECK(r.code == 2);
        CHECK(r.err.find("max_samples") != std::string::npos);
    }
    SUBCASE("rates of the slow orbit show no absorption") {
        const auto r = cli({"rates", "--scenario", "case2"});
        REQUIRE(r.code == 0);
        const auto f = fields(r.out);
        CHECK(std::stod(f.at("gamma_up_per_s")) == 0.0);
        CHECK(std::stod(f.at("gamma_down_per_s")) == doctest::Approx(2.6792008429304463e-14).epsilon(1e-9));
        CHECK(f.at("validity") == "ok");
    }
    SUBCASE("rates in CSV and JSON") {
        const auto csv = cli({"rates", "--scenario", "case1", "--format", "csv"});
        CHECK(csv.code == 0);
        CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 2);
        const auto json = cli({"rates", "--scenario", "case1", "--format", "json", "--engine", "general"});
        CHECK(json.code == 0);
        CHECK(json.out.find("\"family\": \"general\"") != std::string::npos);
    }
    SUBCASE("integral and quasi-cycle engines agree at n = 100") {
        const auto exact = cli({"gp", "--scenario", "case1", "--engine", "exact-integral", "--n", "100"});
        const auto quasi = cli({"gp", "--scenario", "case1", "--engine", "quasi-cycle", "--n", "100"});
        REQUIRE(exact.code == 0);
        REQUIRE(quasi.code == 0);
        const double a = std::stod(fields(exact.out).at("total_rad"));
        const double b = std::stod(fields(quasi.out).at("total_rad"));
        CHECK(std::abs(a - b) <= 1e-3 * std::abs(b));
        CHECK(fields(quasi.out).count("noninertial_rad") == 1);
    }
    SUBCASE("sweeps to standard output") {
        const auto r = cli({"sweep-cavity", "--scenario", "case2", "--grid", "9e6:1.1e7:5:log"});
        CHECK(r.code == 0);
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
        const auto g = cli({"gp-vs-n", "--scenario", "case1", "--grid", "1:1e5:6:log", "--format", "json"});
        CHECK(g.code == 0);
        CHECK(g.out.find("\"rows\"") != std::string::npos);
    }
    SUBCASE("sweeps to a directory with plots") {
        const fs::path dir = scratch("sweep");
        const auto r = cli({"sweep-cavity", "--scenario", "case1", "--out", dir.string(), "--plot"});
        CHECK(r.code == 0);
        CHECK(fs::exists(dir / "sweep_cavity.csv"));
        CHECK(fs::exists(dir / "sweep_cavity.svg"));
        // default grid plus the two anchors
        const std::string csv = slurp(dir / "sweep_cavity.csv");
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 403);
        fs::remove_all(dir);
    }
    SUBCASE("scenario from a config file") {
        const fs::path dir = scratch("config");
        fs::create_directories(dir);
        Scenario s = preset("case2");
        s.name = "slow-copy";
        write_file(dir / "slow.json", scenario_to_json(s));
        const auto r = cli({"rates", "--config", (dir / "slow.json").string()});
        CHECK(r.code == 0);
        CHECK(fields(r.out).at("scenario") == "slow-copy");
        CHECK(fields(r.out).at("gamma_down_per_s") == fields(cli({"rates", "--scenario", "case2"}).out).at("gamma_down_per_s"));
        fs::remove_all(dir);
    }
    SUBCASE("figure1 writes eight files, identical across runs") {
        const fs::path a = scratch("fig_a");
        const fs::path b = scratch("fig_b");
        REQUIRE(cli({"figure1", "--out", a.string()}).code == 0);
        REQUIRE(cli({"figure1", "--out", b.string()}).code == 0);
        std::size_t count = 0;
        for (const auto& entry : fs::directory_iterator(a)) {
            ++count;
            CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
        }
        CHECK(count == 8);
        for (const char* stem : {"fig1a", "fig1b", "fig1c", "fig1d"}) {
            CHECK(fs::exists(a / (std::string(stem) + ".csv")));
            CHECK(fs::exists(a / (std::string(stem) + ".svg")));
        }
        fs::remove_all(a);
        fs::remove_all(b);
    }
}

#ifdef ROTODYNE_CLI_PATH
TEST_CASE("installed binary") {
    const fs::path dir = scratch("binary");
    fs::create_directories(dir);
    const std::string out = (dir / "out.txt").string();
    const std::string cmd = std::string("\"") + ROTODYNE_CLI_PATH + "\" rates --scenario case2 > \"" + out + "\"";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(slurp(out).find("gamma_up_per_s") != std::string::npos);
    const std::string bad = std::string("\"") + ROTODYNE_CLI_PATH + "\" nope 2> /dev/null";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 1);
    fs::remove_all(dir);
}
#endif
