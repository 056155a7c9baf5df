#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "orislink/beam.hpp"
#include "orislink/gml.hpp"

namespace orislink {

// Named hover-error presets. Custom takes the four mu/sigma keys from the
// config file; None pins the receiver exactly on axis.
enum class PePreset { None, Weak, Moderate, Strong, Custom };

struct McConfig {
    long long n = 1000000;
    std::uint64_t seed = 12345;
};

// Full scenario description, defaulted to the reference downlink: 810 nm
// source on a 20 km platform, reflector at 50 m, receiver hovering 250 m
// out at a 45 degree reflection angle.
struct ScenarioConfig {
    double lambda_nm = 810.0;
    double tau_zen = 0.78;
    double beta_l_db_per_km = 0.43;
    double theta_div_urad = 16.5;
    double A = 3e-13;
    double v_g = 5.0;
    double h_oris_m = 50.0;
    double h_hap_m = 20000.0;
    double h_lap_m = 300.0;
    double d_lap_m = 250.0;
    double phi_r_deg = 45.0;
    double aperture_radius_m = 0.045;
    double tau_eff = 0.5;
    double R_E_m = 6.37e6;
    double oris_side_m = 1.0;
    std::optional<double> d_n_threshold_m;

    PePreset pe_preset = PePreset::None;
    double mu_x_m = 0.0;
    double mu_y_m = 0.0;
    double sigma_x_m = 0.0;
    double sigma_y_m = 0.0;

    PhaseProfile profile{ProfileKind::LPS, 0.0, 0.0};
    int quadrature_order = 180;
    bool vacuum_mode = false;
    McConfig mc;
};

// Parses `key = value` lines with '#' comments. Unspecified keys keep the
// defaults above; unknown keys, malformed values and out-of-range values
// raise ConfigError carrying file, line and key context.
ScenarioConfig parse_config(const std::string& path);

// Same grammar, from an in-memory string. `filename` only labels errors.
ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& filename);

// Hover-offset statistics implied by the preset (or the custom fields).
HoverStats hover_from(const ScenarioConfig& cfg);

// Preset <-> name mapping used by the config grammar and the CLI.
const char* pe_preset_name(PePreset preset);
PePreset pe_preset_from_name(const std::string& name);

// Parses "lps", "qps:<focal_length_m>" or "fps" into a PhaseProfile.
// Throws ConfigError on anything else.
PhaseProfile parse_profile_spec(const std::string& text);

// Short display form: "lps", "qps:<f>" or "fps".
std::string profile_spec_string(const PhaseProfile& profile);

} // namespace orislink
