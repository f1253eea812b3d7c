#include "slantpath/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "slantpath/analysis.hpp"
#include "slantpath/numformat.hpp"
#include "slantpath/scenario.hpp"

namespace slantpath {

namespace {

constexpr std::size_t kMaxGridPoints = 10'000'000;

/// Shared source-selection and evaluation flags.
struct ProfileArgs {
    int scenario_id = 0;
    std::string file;
    std::string mode;
    double ground_km = 0.0;
    std::optional<double> platform_km;

    CLI::Option* scenario_opt = nullptr;
    CLI::Option* file_opt = nullptr;
};

void add_source_flags(CLI::App* cmd, ProfileArgs& args) {
    args.scenario_opt =
        cmd->add_option("--scenario", args.scenario_id, "Built-in scenario id (1-5)");
    args.file_opt = cmd->add_option("--file", args.file, "Scenario file path");
    args.scenario_opt->excludes(args.file_opt);
    args.file_opt->excludes(args.scenario_opt);
    cmd->add_option("--mode", args.mode, "Evaluation mode (default: the profile's own)")
        ->check(CLI::IsMember({"paper", "physical"}));
}

void add_geometry_flags(CLI::App* cmd, ProfileArgs& args) {
    cmd->add_option("--ground", args.ground_km, "Ground altitude in km");
    cmd->add_option("--platform", args.platform_km,
                    "Platform altitude in km (default: above the atmosphere)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read scenario file \"" + path + "\"");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

ScenarioSpec load_spec(const ProfileArgs& args) {
    if (args.scenario_opt->count() == 0 && args.file_opt->count() == 0) {
        throw CLI::RequiredError("--scenario or --file");
    }
    ScenarioSpec spec = args.scenario_opt->count() > 0
                            ? builtin_scenario(args.scenario_id)
                            : parse_scenario_file(read_file(args.file));
    if (args.mode == "paper") {
        spec.profile.mode = EvalMode::Paper;
    } else if (args.mode == "physical") {
        spec.profile.mode = EvalMode::Physical;
    }
    return spec;
}

AtmosphereProfile load_profile(const ProfileArgs& args, double zenith_deg) {
    AtmosphereProfile profile = load_spec(args).profile;
    if (args.ground_km != 0.0 || args.platform_km) {
        profile = clip_profile(profile,
                               {zenith_deg, args.ground_km, args.platform_km});
    }
    return profile;
}

std::vector<double> make_grid(double from, double to, double step) {
    if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step) ||
        step <= 0.0) {
        throw DomainError("sweep needs finite --from/--to and a positive --step");
    }
    if (to < from) {
        throw DomainError("sweep --to must not be below --from");
    }
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        if (grid.size() > kMaxGridPoints) {
            throw DomainError("sweep grid exceeds " +
                              std::to_string(kMaxGridPoints) + " points");
        }
        const double value = from + static_cast<double>(i) * step;
        if (value > to) {
            // Keep an endpoint that only float drift pushed past --to.
            if (value - to <= step * 1e-9 && (grid.empty() || to > grid.back())) {
                grid.push_back(to);
            }
            break;
        }
        grid.push_back(value);
    }
    return grid;
}

void emit_sweep(const SweepTable& table, std::ostream& out) {
    const std::string axis =
        table.axis == SweepAxis::ZenithDeg ? "zenith_deg" : "wavelength_nm";
    out << "axis,value,transmittance,loss_db\n";
    for (const SweepRow& row : table.rows) {
        out << csv_row({axis, format_compact(row.axis_value),
                        format_sci(row.transmittance), format_sci(row.loss_db)})
            << "\n";
    }
}

void emit_reports(const std::vector<SensitivityReport>& reports, std::ostream& out) {
    out << "perturbation,baseline_loss_db,perturbed_loss_db,delta_db\n";
    for (const SensitivityReport& report : reports) {
        out << csv_row({report.perturbation, format_sci(report.baseline_loss_db),
                        format_sci(report.perturbed_loss_db),
                        format_sci(report.delta_db)})
            << "\n";
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Layered-atmosphere transmittance for free-space optical links"};
    app.name("slantpath");
    app.require_subcommand(1);

    // ---- scenario ----------------------------------------------------------
    CLI::App* scenario = app.add_subcommand("scenario", "Manage scenario profiles");
    scenario->require_subcommand(1);

    CLI::App* scenario_list =
        scenario->add_subcommand("list", "List the built-in scenarios");
    scenario_list->callback([&out] {
        for (int id = 1; id <= kBuiltinScenarioCount; ++id) {
            out << id << ' ' << builtin_scenario_name(id) << '\n';
        }
    });

    int show_id = 0;
    CLI::App* scenario_show =
        scenario->add_subcommand("show", "Print a built-in as a scenario file");
    scenario_show->add_option("--id", show_id, "Built-in scenario id (1-5)")
        ->required();
    scenario_show->callback(
        [&out, &show_id] { out << serialize_scenario(builtin_scenario(show_id)); });

    std::string check_path;
    CLI::App* scenario_check =
        scenario->add_subcommand("check", "Validate a scenario file");
    scenario_check->add_option("--file", check_path, "Scenario file path")->required();
    scenario_check->callback([&out, &check_path] {
        const ScenarioSpec spec = parse_scenario_file_lenient(read_file(check_path));
        const std::vector<Violation> report = validate_profile(spec.profile);
        if (report.empty()) {
            out << "ok\n";
            return;
        }
        for (const Violation& v : report) {
            out << v.rule << ": " << v.message << '\n';
        }
        throw ValidationError(std::to_string(report.size()) +
                              " invariant violation(s)");
    });

    // ---- compute -----------------------------------------------------------
    ProfileArgs compute_args;
    double compute_zenith = 0.0;
    double compute_wavelength = Wavelength::kReferenceNm;
    CLI::App* compute = app.add_subcommand(
        "compute", "Transmittance and loss at one zenith angle and wavelength");
    add_source_flags(compute, compute_args);
    compute->add_option("--zenith", compute_zenith, "Zenith angle in degrees");
    compute->add_option("--wavelength", compute_wavelength, "Wavelength in nm");
    add_geometry_flags(compute, compute_args);
    compute->callback([&] {
        AtmosphereProfile profile = load_profile(compute_args, compute_zenith);
        if (compute_wavelength != Wavelength::kReferenceNm) {
            profile = rescale_profile_to_wavelength(profile,
                                                    Wavelength(compute_wavelength));
        }
        const TransmittanceResult r = effective_transmittance(profile, compute_zenith);
        out << "zenith_deg,wavelength_nm,transmittance,loss_db\n";
        out << csv_row({format_compact(compute_zenith),
                        format_compact(compute_wavelength),
                        format_sci(r.transmittance), format_sci(r.loss_db)})
            << "\n";
    });

    // ---- sweep -------------------------------------------------------------
    ProfileArgs sweep_args;
    std::string sweep_var;
    double sweep_from = 0.0;
    double sweep_to = 0.0;
    double sweep_step = 0.0;
    double sweep_zenith_deg = 0.0;
    double sweep_wavelength_nm = Wavelength::kReferenceNm;
    CLI::App* sweep =
        app.add_subcommand("sweep", "Sweep the zenith angle or the wavelength");
    add_source_flags(sweep, sweep_args);
    sweep->add_option("--var", sweep_var, "Sweep variable")
        ->required()
        ->check(CLI::IsMember({"zenith", "wavelength"}));
    sweep->add_option("--from", sweep_from, "First grid value")->required();
    sweep->add_option("--to", sweep_to, "Last grid value")->required();
    sweep->add_option("--step", sweep_step, "Grid spacing")->required();
    sweep->add_option("--zenith", sweep_zenith_deg,
                      "Zenith angle in degrees (wavelength sweeps)");
    sweep->add_option("--wavelength", sweep_wavelength_nm,
                      "Wavelength in nm (zenith sweeps)");
    add_geometry_flags(sweep, sweep_args);
    sweep->callback([&] {
        AtmosphereProfile profile = load_profile(sweep_args, sweep_zenith_deg);
        const std::vector<double> grid = make_grid(sweep_from, sweep_to, sweep_step);
        if (sweep_var == "zenith") {
            if (sweep_wavelength_nm != Wavelength::kReferenceNm) {
                profile = rescale_profile_to_wavelength(
                    profile, Wavelength(sweep_wavelength_nm));
            }
            emit_sweep(sweep_zenith(profile, grid), out);
        } else {
            emit_sweep(sweep_wavelength(profile, grid, sweep_zenith_deg), out);
        }
    });

    // ---- sensitivity -------------------------------------------------------
    ProfileArgs sens_args;
    std::string sens_kind;
    double sens_delta_km = 1.0;
    double sens_fraction = 0.25;
    double sens_zenith = 0.0;
    CLI::App* sensitivity = app.add_subcommand(
        "sensitivity", "Boundary-shift or probability perturbation reports");
    add_source_flags(sensitivity, sens_args);
    sensitivity->add_option("--kind", sens_kind, "Perturbation kind")
        ->required()
        ->check(CLI::IsMember({"boundary", "probability"}));
    sensitivity->add_option("--delta-km", sens_delta_km,
                            "Boundary shift in km (kind=boundary)");
    sensitivity->add_option("--fraction", sens_fraction,
                            "Probability scale fraction (kind=probability)");
    sensitivity->add_option("--zenith", sens_zenith, "Zenith angle in degrees");
    add_geometry_flags(sensitivity, sens_args);
    sensitivity->callback([&] {
        const AtmosphereProfile profile = load_spec(sens_args).profile;
        const LinkGeometry geometry{sens_zenith, sens_args.ground_km,
                                    sens_args.platform_km};
        if (sens_kind == "boundary") {
            emit_reports(boundary_sensitivity(profile, geometry, sens_delta_km,
                                              sens_zenith),
                         out);
        } else {
            const AtmosphereProfile clipped = clip_profile(profile, geometry);
            for (std::size_t j = 0; j < clipped.slabs.size(); ++j) {
                if (clipped.slabs[j].states.size() < 2) {
                    err << "note: slab " << j
                        << " has a single state; probability perturbation skipped\n";
                }
            }
            emit_reports(probability_sensitivity(profile, geometry, sens_fraction,
                                                 sens_zenith),
                         out);
        }
    });

    // ---- montecarlo --------------------------------------------------------
    ProfileArgs mc_args;
    double mc_zenith = 0.0;
    std::uint64_t mc_samples = 100000;
    std::uint64_t mc_seed = 1;
    CLI::App* montecarlo =
        app.add_subcommand("montecarlo", "Sample per-slab states and summarize");
    add_source_flags(montecarlo, mc_args);
    montecarlo->add_option("--zenith", mc_zenith, "Zenith angle in degrees");
    montecarlo->add_option("--samples", mc_samples, "Number of realizations");
    montecarlo->add_option("--seed", mc_seed, "RNG seed");
    montecarlo->callback([&] {
        const AtmosphereProfile profile = load_spec(mc_args).profile;
        const MonteCarloStats stats = monte_carlo(profile, mc_zenith, mc_samples, mc_seed);
        out << "samples,mean,geometric_mean,p05,p50,p95\n";
        out << csv_row({std::to_string(stats.samples),
                        format_sci(stats.mean_transmittance),
                        format_sci(stats.geometric_mean_transmittance),
                        format_sci(stats.p05), format_sci(stats.p50),
                        format_sci(stats.p95)})
            << "\n";
    });

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace slantpath
