#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orislink/config.hpp"
#include "orislink/pipeline.hpp"

namespace orislink {

// Incidence-angle sweep in degrees, inclusive of stop (within a step of
// rounding slack).
struct PhiGrid {
    double start_deg = 0.0;
    double stop_deg = 68.0;
    double step_deg = 1.0;
};

// Command-line overrides layered on top of the parsed config. Unset
// optionals keep the config (or per-experiment default) value.
struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<long long> samples;
    std::optional<PhiGrid> grid;
    std::optional<PhaseProfile> profile;
    std::optional<PePreset> pe;
    bool vacuum = false;
    int threads = 1;
};

// The experiment names run_experiment accepts, in display order.
const std::vector<std::string>& experiment_names();

// Runs one named experiment: evaluates its sweep, writes
// <out_dir>/<name>.csv plus a companion <name>_plot.py, both LF-terminated
// with full-precision (17 significant digit) numbers so reruns are
// byte-identical. Throws ConfigError for an unknown name or bad grid,
// ValidationFailure when the validate-mc battery disagrees with the closed
// forms, and lets numeric errors (NonConvergence, OrderTooLarge) propagate.
void run_experiment(const std::string& name, const ScenarioConfig& cfg,
                    const std::string& out_dir, const RunOptions& opt);

} // namespace orislink
