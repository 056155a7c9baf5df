#ifndef ORISLINK_BEAM_HPP
#define ORISLINK_BEAM_HPP

#include "orislink/atmosphere.hpp"
#include "orislink/errors.hpp"
#include "orislink/geometry.hpp"

namespace orislink {

// Transmit beam derived quantities. Build through make_tx_beam so the
// fields stay mutually consistent.
struct TxBeam {
    double lambda = 0.0;    // wavelength, m
    double theta_div = 0.0; // half-angle divergence, rad
    double w0 = 0.0;        // waist, lambda/(pi*theta_div)
    double k = 0.0;         // wavenumber, 2*pi/lambda
    double z_R1 = 0.0;      // Rayleigh range, pi*w0^2/lambda
};

TxBeam make_tx_beam(double lambda, double theta_div);

// Beam state where it meets the reflector. Carries the wavenumber it was
// built with so downstream width formulas need no separate beam handle.
struct BeamAtOris {
    double w_d1 = 0.0;    // long-term waist after the slant path, m
    double T = 0.0;       // turbulence broadening factor, 0 in vacuum
    double Lambda0 = 0.0; // 2*d1/(k*w0^2)
    double Lambda = 0.0;  // Lambda0/(1+Lambda0^2)
    double w_ix = 0.0;    // incident footprint semi-width along x, m
    double w_iy = 0.0;    // along y (equals w_d1), m
    double k = 0.0;       // wavenumber, rad/m
    bool fits_oris = true;
};

enum class ProfileKind { LPS, QPS, FPS };

// Reflector phase configuration. focus_f applies to QPS only. The constant
// offset phi_0 shifts every profile globally and defaults to zero; no
// magnitude computed here depends on it.
struct PhaseProfile {
    ProfileKind kind = ProfileKind::LPS;
    double focus_f = 0.0;
    double phi_0 = 0.0;
};

// Equivalent beam description at the receiver plane.
struct RxBeam {
    double w_rx_x = 0.0;   // m
    double w_rx_y = 0.0;   // m
    double epsilon = 1.0;  // 1 + 2*w_d1^2/rho0^2, exactly 1 in vacuum
    double rho0 = 0.0;     // coherence length on the second leg, m (inf in vacuum)
    double Lambda1 = 0.0;  // 2*d2/(k*w_d1^2)
};

// Turbulence-induced broadening factor for the slant leg. Exactly 0 in
// vacuum mode.
double turbulence_T(const TxBeam& tx, const LinkGeometry& geom,
                    const AtmosphereSpec& atm, double v_rms);

// Long-term beam state at the reflector. oris_side is the square surface
// side length; fits_oris compares footprint diameters against it and is a
// flag rather than an error, since an oversized footprint only means the
// large-surface assumption is strained.
BeamAtOris beam_at_oris(const TxBeam& tx, const LinkGeometry& geom,
                        const AtmosphereSpec& atm, double v_rms,
                        double oris_side);

// Spherical-wave coherence length over the reflector-to-receiver segment.
// Returns +infinity in vacuum mode, which propagates to epsilon = 1 exactly
// through the single 1 + 2w^2/rho0^2 formula path.
double coherence_length_rho0(const LinkGeometry& geom,
                             const AtmosphereSpec& atm, double k,
                             double v_rms);

// Equivalent receiver-plane beam widths for the configured phase profile.
//
// The linear and quadratic profiles share one expression with
// q = d2/(2f): the linear case is q = 1 literally, so a quadratic profile
// focused at exactly d2/2 reproduces the linear widths bit for bit. The
// focusing profile is the algebraic f->infinity limit, with the sine ratio
// inverted. Throws InvalidFocus for a non-positive QPS focus.
RxBeam rx_beam_widths(const PhaseProfile& profile, const BeamAtOris& boris,
                      const LinkGeometry& geom, double rho0);

// Phase value the reflector applies at surface point (x_r, y_r), in rad.
// R_d1 is the incident wavefront curvature radius, approximated by d1
// upstream. Throws OutOfSurface outside the +-oris_side/2 square.
double phase_profile_value(const PhaseProfile& profile, double x_r, double y_r,
                           const LinkGeometry& geom, const TxBeam& tx,
                           double R_d1, double oris_side);

} // namespace orislink

#endif
