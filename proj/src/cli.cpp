#include "rotodyne/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotodyne/errors.hpp"
#include "rotodyne/output.hpp"
#include "rotodyne/scenario.hpp"
#include "rotodyne/sweep.hpp"

namespace rotodyne {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Options {
    std::string scenario{"case1"};
    std::string config;
    std::string engine;
    std::string out;
    std::string format;
    std::string grid;
    bool plot{false};
    bool no_anchors{false};
    std::optional<double> n;
    std::optional<double> theta;
};

void add_scenario_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--scenario", o.scenario, "preset name or path to a JSON scenario")->capture_default_str();
    cmd->add_option("--config", o.config, "JSON scenario file (overrides --scenario)");
}

void add_output_flags(CLI::App* cmd, Options& o, bool sweep) {
    cmd->add_option("--out", o.out, "output directory (default: $ROTODYNE_OUT, else standard output)");
    cmd->add_option("--format", o.format, sweep ? "csv or json" : "text, csv or json")
        ->check(sweep ? CLI::IsMember({"csv", "json"}) : CLI::IsMember({"text", "csv", "json"}));
}

Scenario scenario_from(const Options& o) {
    Scenario scn = o.config.empty() ? load_scenario(o.scenario) : read_scenario_file(o.config);
    return scn;
}

std::optional<fs::path> output_dir(const Options& o) {
    if (!o.out.empty()) {
        return fs::path(o.out);
    }
    if (const char* env = std::getenv("ROTODYNE_OUT"); env != nullptr && *env != '\0') {
        return fs::path(env);
    }
    return std::nullopt;
}

fs::path prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw InputError("cannot create output directory '" + dir.string() + "'");
    }
    return dir;
}

std::string plot_title(const SweepResult& r) {
    if (r.kind == SweepKind::cavity) {
        return "Gamma_down vs omega_c (" + r.scenario.name + ")";
    }
    return "non-unitary phase vs n (" + r.scenario.name + ")";
}

void emit_sweep(const SweepResult& r, const Options& o, const std::string& stem, std::ostream& out) {
    const std::string format = o.format.empty() ? "csv" : o.format;
    const std::string body = format == "json" ? to_json(r) : to_csv(r);
    const auto dir = output_dir(o);
    if (!dir) {
        if (o.plot) {
            throw InputError("--plot needs an output directory (--out or ROTODYNE_OUT)");
        }
        out << body;
        return;
    }
    prepare_dir(*dir);
    const fs::path data = *dir / (stem + (format == "json" ? ".json" : ".csv"));
    write_file(data, body);
    out << data.string() << '\n';
    if (o.plot) {
        const fs::path svg = *dir / (stem + ".svg");
        write_file(svg, to_svg(r, {plot_title(r), true, true, true}));
        out << svg.string() << '\n';
    }
}

// Ordered key / value pairs printed as text, one CSV row or a JSON object.
using Record = std::vector<std::pair<std::string, json>>;

void emit_record(const Record& rec, const std::string& format, std::ostream& out) {
    const auto scalar = [](const json& v) {
        if (v.is_number_float()) {
            return format_number(v.get<double>());
        }
        if (v.is_string()) {
            return v.get<std::string>();
        }
        return v.dump();
    };
    if (format == "json") {
        json j = json::object();
        for (const auto& [k, v] : rec) {
            j[k] = v;
        }
        out << j.dump(2) << '\n';
    } else if (format == "csv") {
        std::string head;
        std::string row;
        for (const auto& [k, v] : rec) {
            head += (head.empty() ? "" : ",") + k;
            row += (row.empty() ? "" : ",") + scalar(v);
        }
        out << head << '\n' << row << '\n';
    } else {
        std::size_t w = 0;
        for (const auto& kv : rec) {
            w = std::max(w, kv.first.size());
        }
        for (const auto& [k, v] : rec) {
            out << k << std::string(w + 2 - k.size(), ' ') << scalar(v) << '\n';
        }
    }
}

int cmd_rates(const Options& o, std::ostream& out) {
    Scenario scn = scenario_from(o);
    if (!o.engine.empty()) {
        scn.engine = parse_rate_family(o.engine);
    }
    const auto kin = kinematics(scn);
    const RateSet r = scenario_rates(scn);
    const Record rec{
        {"scenario", scn.name},
        {"family", std::string(to_string(r.family))},
        {"frame", std::string(to_string(r.frame))},
        {"omega_c_rad_per_s", scn.cavity.omega_c},
        {"zeta", kin.zeta},
        {"lorentz_gamma", kin.gamma},
        {"omega0_bar_rad_per_s", kin.omega0_bar},
        {"acceleration_m_per_s2", kin.accel},
        {"eta_per_s", r.eta},
        {"gamma_down_per_s", r.gamma_down},
        {"gamma_up_per_s", r.gamma_up},
        {"gamma_down_inertial_per_s", r.gamma_down_inertial},
        {"gamma_down_noninertial_per_s", r.gamma_down_ni},
        {"gamma_up_inertial_per_s", r.gamma_up_inertial},
        {"gamma_up_noninertial_per_s", r.gamma_up_ni},
        {"A_per_s", r.a_coeff},
        {"B_per_s", r.b_coeff},
        {"B_over_A", r.ratio},
        {"validity", r.validity.to_string()},
    };
    emit_record(rec, o.format.empty() ? "text" : o.format, out);
    return 0;
}

int cmd_gp(const Options& o, std::ostream& out) {
    const Scenario scn = scenario_from(o);
    const GPEngine engine = o.engine.empty() ? default_gp_engine(scn) : parse_gp_engine(o.engine);
    const double n = o.n.value_or(scn.n_max);
    if (!(n >= 1 && n == std::floor(n))) {
        throw InputError("--n must be a positive integer");
    }
    const double theta = o.theta.value_or(scn.atom.theta0);
    const GPResult g = scenario_gp(scn, engine, n, theta);
    Record rec{
        {"scenario", scn.name},
        {"engine", std::string(to_string(g.engine))},
        {"n", g.n_cycles},
        {"theta_rad", theta},
        {"total_rad", g.total},
        {"principal_rad", g.principal},
        {"unitary_rad", g.unitary_part},
        {"nonunitary_rad", g.nonunitary_part},
    };
    if (g.inertial_part && g.noninertial_part) {
        rec.emplace_back("inertial_rad", *g.inertial_part);
        rec.emplace_back("noninertial_rad", *g.noninertial_part);
    }
    rec.emplace_back("pi_n_A_over_Omega0", g.pi_n_a_over_omega0);
    rec.emplace_back("eight_pi2_n_A_over_Omega0", g.eight_pi2_n_a_over_omega0);
    rec.emplace_back("validity", g.validity.to_string());
    emit_record(rec, o.format.empty() ? "text" : o.format, out);
    return 0;
}

int cmd_sweep_cavity(const Options& o, std::ostream& out) {
    Scenario scn = scenario_from(o);
    if (!o.engine.empty()) {
        scn.engine = parse_rate_family(o.engine);
    }
    std::vector<double> grid;
    std::string note;
    if (o.grid.empty()) {
        const GridSpec spec = default_cavity_grid(scn);
        grid = make_grid(spec);
        note = to_string(spec);
        if (!o.no_anchors) {
            grid = with_anchors(grid, cavity_anchors(scn));
            note += " plus anchors at the tuned cavity frequency and Omega0";
        }
    } else {
        const GridSpec spec = parse_grid(o.grid);
        grid = make_grid(spec);
        note = to_string(spec);
    }
    SweepResult r = sweep_cavity(scn, grid);
    r.grid_note = note;
    emit_sweep(r, o, "sweep_cavity", out);
    return 0;
}

int cmd_gp_vs_n(const Options& o, std::ostream& out) {
    Scenario scn = scenario_from(o);
    if (!o.engine.empty()) {
        scn.engine = parse_rate_family(o.engine);
    }
    const GridSpec spec = o.grid.empty() ? default_cycle_grid(scn) : parse_grid(o.grid);
    SweepResult r = gp_vs_n(scn, make_grid(spec));
    r.grid_note = to_string(spec);
    emit_sweep(r, o, "gp_vs_n", out);
    return 0;
}

int cmd_figure1(const Options& o, std::ostream& out) {
    const fs::path dir = prepare_dir(output_dir(o).value_or(fs::path("figure1")));
    const auto panel = [&](const std::string& stem, SweepResult r, const std::string& title) {
        write_file(dir / (stem + ".csv"), to_csv(r));
        write_file(dir / (stem + ".svg"), to_svg(r, {title, true, true, true}));
        out << (dir / (stem + ".csv")).string() << '\n' << (dir / (stem + ".svg")).string() << '\n';
    };
    for (const auto& [name, cav_stem, gp_stem] :
         {std::tuple{"case1", "fig1a", "fig1b"}, std::tuple{"case2", "fig1c", "fig1d"}}) {
        const Scenario scn = preset(name);
        const GridSpec cav_spec = default_cavity_grid(scn);
        SweepResult cav = sweep_cavity(scn, with_anchors(make_grid(cav_spec), cavity_anchors(scn)));
        cav.grid_note = to_string(cav_spec) + " plus anchors at the tuned cavity frequency and Omega0";
        panel(cav_stem, cav, std::string("Gamma_down vs omega_c, ") + name);

        const GridSpec n_spec = default_cycle_grid(scn);
        SweepResult gp = gp_vs_n(scn, make_grid(n_spec));
        gp.grid_note = to_string(n_spec);
        panel(gp_stem, gp, std::string("non-unitary phase vs n, ") + name);
    }
    return 0;
}

int cmd_presets(std::ostream& out) {
    for (const auto& name : preset_names()) {
        out << name << "  " << preset_description(name) << '\n';
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_cli(args, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Transition rates and geometric phase of an atom circling inside a cavity", "rotodyne"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);
    Options o;

    auto* rates = app.add_subcommand("rates", "print the co-moving rates of a scenario");
    add_scenario_flags(rates, o);
    rates->add_option("--engine", o.engine, "rate family: general, case1 or case2");
    add_output_flags(rates, o, false);

    auto* gp = app.add_subcommand("gp", "evaluate the geometric phase once");
    add_scenario_flags(gp, o);
    gp->add_option("--engine", o.engine, "tong, exact-integral, quasi-cycle, case1 or case2");
    gp->add_option("--n", o.n, "number of quasi-cycles (default: the scenario's n_max)");
    gp->add_option("--theta", o.theta, "initial polar angle, rad (default: the scenario's)");
    add_output_flags(gp, o, false);

    auto* sweep = app.add_subcommand("sweep-cavity", "rates across cavity frequencies");
    add_scenario_flags(sweep, o);
    sweep->add_option("--engine", o.engine, "rate family: general, case1 or case2");
    sweep->add_option("--grid", o.grid, "start:stop:points[:log] in rad/s");
    sweep->add_flag("--no-anchors", o.no_anchors, "do not add resonance frequencies to the default grid");
    sweep->add_flag("--plot", o.plot, "also write an SVG plot");
    add_output_flags(sweep, o, true);

    auto* cycles = app.add_subcommand("gp-vs-n", "non-unitary phase against the number of quasi-cycles");
    add_scenario_flags(cycles, o);
    cycles->add_option("--engine", o.engine, "rate family: general, case1 or case2");
    cycles->add_option("--grid", o.grid, "start:stop:points[:log] over n");
    cycles->add_flag("--plot", o.plot, "also write an SVG plot");
    add_output_flags(cycles, o, true);

    auto* fig = app.add_subcommand("figure1", "write the four panels (CSV and SVG) for both presets");
    fig->add_option("--out", o.out, "output directory (default: $ROTODYNE_OUT, else ./figure1)");

    auto* presets = app.add_subcommand("presets", "list built-in scenarios");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << version_string() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (rates->parsed()) {
            return cmd_rates(o, out);
        }
        if (gp->parsed()) {
            return cmd_gp(o, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep_cavity(o, out);
        }
        if (cycles->parsed()) {
            return cmd_gp_vs_n(o, out);
        }
        if (fig->parsed()) {
            return cmd_figure1(o, out);
        }
        if (presets->parsed()) {
            return cmd_presets(out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    err << app.help();
    return 1;
}

} // namespace rotodyne
