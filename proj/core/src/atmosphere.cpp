#include "orislink/atmosphere.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "orislink/numerics.hpp"

namespace orislink {

double wind_profile(double h, double v_g, double h_oris) noexcept {
    const double t = (h - 12448.0 + h_oris) / 4800.0;
    return v_g + 30.0 * std::exp(-t * t);
}

double rms_wind(double v_g, double h_oris) {
    const double integral = integrate_adaptive(
        [v_g, h_oris](double h) {
            const double v = wind_profile(h, v_g, h_oris);
            return v * v;
        },
        5000.0, 20000.0, 1e-11);
    return std::sqrt(integral / 15000.0);
}

double cn2(double h, const AtmosphereSpec& spec, double v_rms) noexcept {
    if (spec.vacuum_mode) return 0.0;
    const double w = v_rms / 27.0;
    const double hh = 1e-5 * h;
    const double h10 = hh * hh * hh * hh * hh * hh * hh * hh * hh * hh;
    return 0.00594 * w * w * h10 * std::exp(-h / 1000.0)
         + 2.7e-16 * std::exp(-h / 1500.0)
         + spec.A * std::exp(-h / 100.0);
}

double rytov_variance(const PathSegment& seg, const AtmosphereSpec& spec,
                      double k, double v_rms) {
    if (!(seg.h_low < seg.h_high)) {
        throw InvalidConfig("rytov_variance: segment requires h_low < h_high");
    }
    if (!(seg.zenith_angle >= 0.0)
        || !(seg.zenith_angle < std::numbers::pi / 2.0)) {
        throw InvalidAngle("rytov_variance: zenith angle must be in [0, pi/2)");
    }
    if (spec.vacuum_mode) return 0.0;

    const double span = seg.h_high - seg.h_low;
    const double integral = integrate_adaptive(
        [&](double u) {
            return cn2(u + seg.h_low, spec, v_rms) * std::pow(u, 5.0 / 6.0);
        },
        0.0, span, 1e-10);
    const double sec = 1.0 / std::cos(seg.zenith_angle);
    return 2.25 * std::pow(k, 7.0 / 6.0) * std::pow(sec, 11.0 / 6.0) * integral;
}

double scintillation_index(double sigma_R1_sq) {
    if (!(sigma_R1_sq >= 0.0)) {
        throw InvalidConfig("scintillation_index: variance must be >= 0");
    }
    if (sigma_R1_sq == 0.0) return 0.0;
    // sigma^(12/5) expressed from the variance to avoid a square root:
    // (sigma^2)^(6/5).
    const double s125 = std::pow(sigma_R1_sq, 1.2);
    const double term1 = 0.49 * sigma_R1_sq / std::pow(1.0 + 1.11 * s125, 7.0 / 6.0);
    const double term2 = 0.51 * sigma_R1_sq / std::pow(1.0 + 0.69 * s125, 5.0 / 6.0);
    return std::expm1(term1 + term2);
}

AtmosphericLoss atmospheric_loss(const LinkGeometry& geom,
                                 const AtmosphereSpec& spec) {
    if (!(geom.phi_i >= 0.0) || !(geom.phi_i < std::numbers::pi / 2.0)) {
        throw InvalidAngle("atmospheric_loss: phi_i must be in [0, pi/2)");
    }
    AtmosphericLoss out;
    const double sec = 1.0 / std::cos(geom.phi_i);
    out.tau_l1 = std::pow(spec.tau_zen, sec);
    // Table values are dB/km; Beer-Lambert wants nepers per meter.
    const double beta_per_m =
        spec.beta_l_db_per_km * std::numbers::ln10 / (10.0 * 1000.0);
    out.tau_l2 = std::exp(-beta_per_m * geom.d2);
    out.tau_l = out.tau_l1 * out.tau_l2;
    return out;
}

} // namespace orislink
