#ifndef ORISLINK_ATMOSPHERE_HPP
#define ORISLINK_ATMOSPHERE_HPP

#include "orislink/errors.hpp"
#include "orislink/geometry.hpp"

namespace orislink {

// Turbulence and attenuation parameters. vacuum_mode forces the structure
// profile to zero everywhere, so every Rytov variance and broadening factor
// built on it evaluates to exactly zero.
struct AtmosphereSpec {
    double A = 3e-13;               // ground structure constant, m^(-2/3)
    double v_g = 5.0;               // ground wind speed, m/s
    double tau_zen = 0.78;          // zenith transmission efficiency
    double beta_l_db_per_km = 0.43; // low-altitude extinction, dB/km
    bool vacuum_mode = false;
};

// Altitude slice of a propagation path with its zenith angle.
struct PathSegment {
    double h_low = 0.0;        // m, lower endpoint (the reflector side)
    double h_high = 0.0;       // m, upper endpoint
    double zenith_angle = 0.0; // rad
};

struct AtmosphericLoss {
    double tau_l1 = 1.0; // slant leg, zenith-transmission power law
    double tau_l2 = 1.0; // low-altitude leg, Beer-Lambert
    double tau_l = 1.0;  // product
};

// Greenwood wind magnitude at altitude h. The bump peaks where
// h + h_oris = 12448 m.
double wind_profile(double h, double v_g, double h_oris) noexcept;

// RMS of the wind profile over the 5..20 km band, the speed the structure
// profile model expects.
double rms_wind(double v_g, double h_oris);

// Hufnagel-Valley refractive-index structure profile at altitude h.
// v_rms comes from rms_wind; pass it in so this stays a pure function.
double cn2(double h, const AtmosphereSpec& spec, double v_rms) noexcept;

// Rytov log-irradiance variance over a path segment:
// 2.25 k^(7/6) sec^(11/6)(zenith) * int Cn2(h) (h - h_low)^(5/6) dh.
// The same kernel is applied to both legs of the link. Integration runs in
// the shifted variable u = h - h_low so the fractional-power endpoint sits
// on a panel boundary.
double rytov_variance(const PathSegment& seg, const AtmosphereSpec& spec,
                      double k, double v_rms);

// Scintillation index from the Rytov variance, valid from weak through
// saturated turbulence.
double scintillation_index(double sigma_R1_sq);

// Deterministic transmission losses for both legs.
AtmosphericLoss atmospheric_loss(const LinkGeometry& geom,
                                 const AtmosphereSpec& spec);

} // namespace orislink

#endif
