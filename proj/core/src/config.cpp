#include "orislink/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "orislink/errors.hpp"

namespace orislink {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real(const std::string& text) {
    const std::string v = trim(text);
    if (v.empty()) throw ConfigError("expected a real number");
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || errno == ERANGE) {
        throw ConfigError("'" + v + "' is not a real number");
    }
    if (!std::isfinite(x)) throw ConfigError("value must be finite");
    return x;
}

long long parse_int(const std::string& text) {
    const std::string v = trim(text);
    if (v.empty()) throw ConfigError("expected an integer");
    errno = 0;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || errno == ERANGE) {
        throw ConfigError("'" + v + "' is not an integer");
    }
    return x;
}

std::uint64_t parse_uint64(const std::string& text) {
    const std::string v = trim(text);
    if (v.empty() || v[0] == '-') {
        throw ConfigError("expected a non-negative integer");
    }
    errno = 0;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size() || errno == ERANGE) {
        throw ConfigError("'" + v + "' is not a valid seed");
    }
    return static_cast<std::uint64_t>(x);
}

bool parse_bool(const std::string& text) {
    const std::string v = trim(text);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("expected true or false");
}

} // namespace

const char* pe_preset_name(PePreset preset) {
    switch (preset) {
        case PePreset::None: return "none";
        case PePreset::Weak: return "weak";
        case PePreset::Moderate: return "moderate";
        case PePreset::Strong: return "strong";
        case PePreset::Custom: return "custom";
    }
    return "?";
}

PePreset pe_preset_from_name(const std::string& name) {
    if (name == "none") return PePreset::None;
    if (name == "weak") return PePreset::Weak;
    if (name == "moderate") return PePreset::Moderate;
    if (name == "strong") return PePreset::Strong;
    if (name == "custom") return PePreset::Custom;
    throw ConfigError("must be one of none, weak, moderate, strong, custom");
}

PhaseProfile parse_profile_spec(const std::string& text) {
    const std::string v = trim(text);
    if (v == "lps") return PhaseProfile{ProfileKind::LPS, 0.0, 0.0};
    if (v == "fps") return PhaseProfile{ProfileKind::FPS, 0.0, 0.0};
    if (v.rfind("qps:", 0) == 0) {
        const double f = parse_real(v.substr(4));
        if (!(f > 0.0)) {
            throw ConfigError("qps focal length must be > 0 meters");
        }
        return PhaseProfile{ProfileKind::QPS, f, 0.0};
    }
    throw ConfigError("must be lps, qps:<focal_m> or fps");
}

std::string profile_spec_string(const PhaseProfile& profile) {
    switch (profile.kind) {
        case ProfileKind::LPS: return "lps";
        case ProfileKind::FPS: return "fps";
        case ProfileKind::QPS: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "qps:%g", profile.focus_f);
            return buf;
        }
    }
    return "?";
}

HoverStats hover_from(const ScenarioConfig& cfg) {
    switch (cfg.pe_preset) {
        case PePreset::None: return {0.0, 0.0, 0.0, 0.0};
        case PePreset::Weak: return {0.3, 0.2, 0.2, 0.1};
        case PePreset::Moderate: return {0.4, 0.3, 0.25, 0.2};
        case PePreset::Strong: return {0.5, 0.4, 0.3, 0.25};
        case PePreset::Custom:
            return {cfg.mu_x_m, cfg.mu_y_m, cfg.sigma_x_m, cfg.sigma_y_m};
    }
    return {0.0, 0.0, 0.0, 0.0};
}

ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& filename) {
    ScenarioConfig cfg;

    // Line on which each key appeared, for citing cross-field violations.
    std::map<std::string, int> seen;

    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"lambda_nm", [&](const std::string& v) {
             cfg.lambda_nm = parse_real(v);
             if (!(cfg.lambda_nm > 0.0)) throw ConfigError("must be > 0");
         }},
        {"tau_zen", [&](const std::string& v) {
             cfg.tau_zen = parse_real(v);
             if (!(cfg.tau_zen > 0.0 && cfg.tau_zen <= 1.0)) {
                 throw ConfigError("must lie in (0, 1]");
             }
         }},
        {"beta_l_db_per_km", [&](const std::string& v) {
             cfg.beta_l_db_per_km = parse_real(v);
             if (!(cfg.beta_l_db_per_km >= 0.0)) throw ConfigError("must be >= 0");
         }},
        {"theta_div_urad", [&](const std::string& v) {
             cfg.theta_div_urad = parse_real(v);
             if (!(cfg.theta_div_urad > 0.0)) throw ConfigError("must be > 0");
         }},
        {"A", [&](const std::string& v) {
             cfg.A = parse_real(v);
             if (!(cfg.A >= 0.0)) throw ConfigError("must be >= 0");
         }},
        {"v_g", [&](const std::string& v) {
             cfg.v_g = parse_real(v);
             if (!(cfg.v_g >= 0.0)) throw ConfigError("must be >= 0");
         }},
        {"h_oris_m", [&](const std::string& v) {
             cfg.h_oris_m = parse_real(v);
             if (!(cfg.h_oris_m >= 0.0)) throw ConfigError("must be >= 0");
         }},
        {"h_hap_m", [&](const std::string& v) {
             cfg.h_hap_m = parse_real(v);
             if (!(cfg.h_hap_m > 0.0)) throw ConfigError("must be > 0");
         }},
        {"h_lap_m", [&](const std::string& v) {
             cfg.h_lap_m = parse_real(v);
             if (!(cfg.h_lap_m >= 0.0)) throw ConfigError("must be >= 0");
         }},
        {"d_lap_m", [&](const std::string& v) {
             cfg.d_lap_m = parse_real(v);
             if (!(cfg.d_lap_m >= 0.0)) throw ConfigError("must be >= 0");
         }},
        {"phi_r_deg", [&](const std::string& v) {
             cfg.phi_r_deg = parse_real(v);
             if (!(cfg.phi_r_deg >= 0.0)) throw ConfigError("phi_r must be >= 0");
             if (!(cfg.phi_r_deg < 90.0)) throw ConfigError("phi_r must be < 90");
         }},
        {"aperture_radius_m", [&](const std::string& v) {
             cfg.aperture_radius_m = parse_real(v);
             if (!(cfg.aperture_radius_m > 0.0)) throw ConfigError("must be > 0");
         }},
        {"tau_eff", [&](const std::string& v) {
             cfg.tau_eff = parse_real(v);
             if (!(cfg.tau_eff > 0.0 && cfg.tau_eff <= 1.0)) {
                 throw ConfigError("must lie in (0, 1]");
             }
         }},
        {"R_E_m", [&](const std::string& v) {
             cfg.R_E_m = parse_real(v);
             if (!(cfg.R_E_m > 0.0)) throw ConfigError("must be > 0");
         }},
        {"oris_side_m", [&](const std::string& v) {
             cfg.oris_side_m = parse_real(v);
             if (!(cfg.oris_side_m > 0.0)) throw ConfigError("must be > 0");
         }},
        {"d_n_threshold_m", [&](const std::string& v) {
             const double d = parse_real(v);
             if (!(d > 0.0)) throw ConfigError("must be > 0");
             cfg.d_n_threshold_m = d;
         }},
        {"pe_preset", [&](const std::string& v) {
             cfg.pe_preset = pe_preset_from_name(trim(v));
         }},
        {"mu_x_m", [&](const std::string& v) { cfg.mu_x_m = parse_real(v); }},
        {"mu_y_m", [&](const std::string& v) { cfg.mu_y_m = parse_real(v); }},
        {"sigma_x_m", [&](const std::string& v) {
             cfg.sigma_x_m = parse_real(v);
             if (!(cfg.sigma_x_m >= 0.0)) throw ConfigError("must be >= 0");
         }},
        {"sigma_y_m", [&](const std::string& v) {
             cfg.sigma_y_m = parse_real(v);
             if (!(cfg.sigma_y_m >= 0.0)) throw ConfigError("must be >= 0");
         }},
        {"profile", [&](const std::string& v) {
             cfg.profile = parse_profile_spec(v);
         }},
        {"G", [&](const std::string& v) {
             const long long g = parse_int(v);
             if (g < 1 || g > 512) throw ConfigError("must lie in [1, 512]");
             cfg.quadrature_order = static_cast<int>(g);
         }},
        {"vacuum_mode", [&](const std::string& v) {
             cfg.vacuum_mode = parse_bool(v);
         }},
        {"mc_n", [&](const std::string& v) {
             cfg.mc.n = parse_int(v);
             if (cfg.mc.n < 1000) throw ConfigError("must be >= 1000");
         }},
        {"mc_seed", [&](const std::string& v) {
             cfg.mc.seed = parse_uint64(v);
         }},
    };

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(filename, lineno, line,
                              "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(filename, lineno, "", "missing key before '='");
        }

        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError(filename, lineno, key, "unknown key");
        }
        try {
            it->second(value);
        } catch (const ConfigError& e) {
            // Helpers throw with the bare constraint text; attach context.
            throw ConfigError(filename, lineno, key, e.what());
        }
        seen[key] = lineno;
    }

    // Cross-field checks. Cite the line of the key most likely at fault,
    // falling back to line 0 when the value came from a default.
    const auto line_of = [&](const char* key) {
        const auto it = seen.find(key);
        return it == seen.end() ? 0 : it->second;
    };
    if (!(cfg.h_hap_m > cfg.h_oris_m)) {
        throw ConfigError(filename, line_of("h_hap_m"), "h_hap_m",
                          "must exceed h_oris_m");
    }
    if (cfg.d_lap_m == 0.0) {
        if (cfg.phi_r_deg != 0.0) {
            throw ConfigError(filename, line_of("phi_r_deg"), "phi_r_deg",
                              "vertical second leg (d_lap_m = 0) requires phi_r_deg = 0");
        }
        if (!(cfg.h_lap_m > cfg.h_oris_m)) {
            throw ConfigError(filename, line_of("h_lap_m"), "h_lap_m",
                              "must exceed h_oris_m when d_lap_m = 0");
        }
    }

    return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

} // namespace orislink
