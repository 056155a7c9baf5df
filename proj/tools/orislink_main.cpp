// Command line front end: parses flags, loads the scenario config, runs
// one named experiment and maps failures onto stable exit codes
// (0 success, 1 configuration, 2 numeric, 3 validation).

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "orislink/config.hpp"
#include "orislink/errors.hpp"
#include "orislink/experiments.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitValidation = 3;

orislink::PhiGrid parse_grid_spec(const std::string& text) {
    orislink::PhiGrid g;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%n", &g.start_deg, &g.stop_deg,
                    &g.step_deg, &consumed) != 3 ||
        consumed != static_cast<int>(text.size())) {
        throw orislink::ConfigError(
            "grid-phi: expected start:stop:step, got '" + text + "'");
    }
    return g;
}

std::string experiment_list() {
    std::string out;
    for (const auto& name : orislink::experiment_names()) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Free-space optical link simulator: channel transmittance and "
        "secret-key-rate bounds for a reflector-assisted downlink"};

    std::string experiment;
    app.add_option("experiment", experiment,
                   "One of: " + experiment_list())
        ->required();

    std::string config_path;
    app.add_option("--config", config_path,
                   "Scenario config file (key = value lines); defaults "
                   "apply when omitted");

    std::string out_dir = "out";
    app.add_option("--out", out_dir, "Output directory for CSV and plot "
                                     "scripts (default: out)");

    std::uint64_t seed = 0;
    auto* seed_opt =
        app.add_option("--seed", seed, "Monte Carlo base seed override");

    long long samples = 0;
    auto* samples_opt = app.add_option(
        "--samples", samples, "Monte Carlo sample count override (>= 1000)");

    std::string grid_spec;
    app.add_option("--grid-phi", grid_spec,
                   "Incidence sweep in degrees as start:stop:step");

    bool vacuum = false;
    app.add_flag("--vacuum", vacuum, "Disable turbulence (vacuum channel)");

    std::string profile_spec;
    app.add_option("--profile", profile_spec,
                   "Reflector phase profile: lps, qps:<focal_m> or fps");

    std::string pe_name;
    app.add_option("--pe", pe_name,
                   "Hover error preset: none, weak, moderate or strong");

    int threads = 1;
    app.add_option("--threads", threads, "Worker threads (default 1)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        orislink::ScenarioConfig cfg;
        if (!config_path.empty()) {
            cfg = orislink::parse_config(config_path);
        }

        orislink::RunOptions opt;
        if (*seed_opt) opt.seed = seed;
        if (*samples_opt) opt.samples = samples;
        if (!grid_spec.empty()) opt.grid = parse_grid_spec(grid_spec);
        if (!profile_spec.empty()) {
            opt.profile = orislink::parse_profile_spec(profile_spec);
        }
        if (!pe_name.empty()) {
            const orislink::PePreset preset =
                orislink::pe_preset_from_name(pe_name);
            if (preset == orislink::PePreset::Custom) {
                throw orislink::ConfigError(
                    "pe: custom is config-file only (needs mu/sigma keys)");
            }
            opt.pe = preset;
        }
        opt.vacuum = vacuum;
        opt.threads = threads;

        orislink::run_experiment(experiment, cfg, out_dir, opt);
        std::printf("wrote %s/%s.csv and %s/%s_plot.py\n", out_dir.c_str(),
                    experiment.c_str(), out_dir.c_str(), experiment.c_str());
        return 0;
    } catch (const orislink::ValidationFailure& e) {
        std::fprintf(stderr, "validation failure: %s\n", e.what());
        return kExitValidation;
    } catch (const orislink::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const orislink::InvalidConfig& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const orislink::InvalidAngle& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const orislink::InvalidFocus& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const orislink::Error& e) {
        // NonConvergence, OrderTooLarge, SaturatedChannel and the rest of
        // the numeric family.
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
}
