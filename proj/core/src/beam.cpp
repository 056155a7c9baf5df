#include "orislink/beam.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "orislink/numerics.hpp"

namespace orislink {

TxBeam make_tx_beam(double lambda, double theta_div) {
    if (!(lambda > 0.0)) {
        throw InvalidConfig("make_tx_beam: wavelength must be > 0");
    }
    if (!(theta_div > 0.0)) {
        throw InvalidConfig("make_tx_beam: divergence must be > 0");
    }
    TxBeam tx;
    tx.lambda = lambda;
    tx.theta_div = theta_div;
    tx.w0 = lambda / (std::numbers::pi * theta_div);
    tx.k = 2.0 * std::numbers::pi / lambda;
    tx.z_R1 = std::numbers::pi * tx.w0 * tx.w0 / lambda;
    return tx;
}

double turbulence_T(const TxBeam& tx, const LinkGeometry& geom,
                    const AtmosphereSpec& atm, double v_rms) {
    if (atm.vacuum_mode) return 0.0;
    const double span = geom.h_hap - geom.h_oris;
    // Lambda is formed from the vacuum Fresnel ratio, so no self-consistent
    // iteration is needed.
    const double lambda0 = 2.0 * geom.d1 / (tx.k * tx.w0 * tx.w0);
    const double lambda_c = lambda0 / (1.0 + lambda0 * lambda0);
    const double integral = integrate_adaptive(
        [&](double u) {
            return cn2(u + geom.h_oris, atm, v_rms) * std::pow(u / span, 5.0 / 3.0);
        },
        0.0, span, 1e-10);
    const double sec = 1.0 / std::cos(geom.phi_i);
    return 4.35 * std::pow(lambda_c, 5.0 / 6.0) * std::pow(tx.k, 7.0 / 6.0)
         * std::pow(span, 5.0 / 6.0) * std::pow(sec, 11.0 / 6.0) * integral;
}

BeamAtOris beam_at_oris(const TxBeam& tx, const LinkGeometry& geom,
                        const AtmosphereSpec& atm, double v_rms,
                        double oris_side) {
    BeamAtOris b;
    b.k = tx.k;
    b.Lambda0 = 2.0 * geom.d1 / (tx.k * tx.w0 * tx.w0);
    b.Lambda = b.Lambda0 / (1.0 + b.Lambda0 * b.Lambda0);
    b.T = turbulence_T(tx, geom, atm, v_rms);
    b.w_d1 = tx.w0 * std::sqrt((1.0 + b.Lambda0 * b.Lambda0) * (1.0 + b.T));
    // Oblique incidence stretches the footprint along x only.
    b.w_ix = b.w_d1 / std::sin(geom.theta_i);
    b.w_iy = b.w_d1;
    b.fits_oris = (2.0 * b.w_ix <= oris_side) && (2.0 * b.w_iy <= oris_side);
    return b;
}

double coherence_length_rho0(const LinkGeometry& geom,
                             const AtmosphereSpec& atm, double k,
                             double v_rms) {
    if (atm.vacuum_mode) {
        return std::numeric_limits<double>::infinity();
    }
    const double integral = integrate_adaptive(
        [&](double h) { return cn2(h, atm, v_rms); },
        geom.h_oris, geom.h_lap, 1e-11);
    const double base = 1.45 * k * k * integral;
    return std::pow(base, -0.6) * std::pow(std::cos(geom.phi_r), 0.6);
}

RxBeam rx_beam_widths(const PhaseProfile& profile, const BeamAtOris& boris,
                      const LinkGeometry& geom, double rho0) {
    RxBeam rx;
    rx.rho0 = rho0;
    const double w = boris.w_d1;
    // A vacuum rho0 of +infinity makes the quotient exactly 0 and epsilon
    // exactly 1 through this single formula path.
    rx.epsilon = 1.0 + 2.0 * w * w / (rho0 * rho0);
    rx.Lambda1 = 2.0 * geom.d2 / (boris.k * w * w);
    const double si = std::fabs(std::sin(geom.theta_i));
    const double sr = std::fabs(std::sin(geom.theta_r));

    if (profile.kind == ProfileKind::FPS) {
        // Algebraic f->infinity limit of the quadratic profile; the sine
        // ratio flips relative to the other two.
        const double span = w * std::sqrt(rx.epsilon) * rx.Lambda1;
        rx.w_rx_x = (si / sr) * span;
        rx.w_rx_y = span;
        return rx;
    }

    // Linear and quadratic profiles differ only in q = d2/(2f): the linear
    // profile is q = 1 written literally. Keeping one expression tree makes
    // the f = d2/2 quadratic case equal the linear case to the bit.
    double q2 = 1.0;
    if (profile.kind == ProfileKind::QPS) {
        if (!(profile.focus_f > 0.0)) {
            throw InvalidFocus("rx_beam_widths: QPS focus must be > 0, got "
                               + std::to_string(profile.focus_f));
        }
        const double q = geom.d2 / (2.0 * profile.focus_f);
        q2 = q * q;
    }
    const double tx_ratio = (si * si) / (sr * sr) * rx.Lambda1;
    rx.w_rx_x = w * (sr / si)
              * std::sqrt(rx.epsilon * tx_ratio * tx_ratio + q2);
    rx.w_rx_y = w * std::sqrt(rx.epsilon * rx.Lambda1 * rx.Lambda1 + q2);
    return rx;
}

double phase_profile_value(const PhaseProfile& profile, double x_r, double y_r,
                           const LinkGeometry& geom, const TxBeam& tx,
                           double R_d1, double oris_side) {
    const double half = 0.5 * oris_side;
    if (std::fabs(x_r) > half || std::fabs(y_r) > half) {
        throw OutOfSurface("phase_profile_value: point ("
                           + std::to_string(x_r) + ", " + std::to_string(y_r)
                           + ") lies outside the +-" + std::to_string(half)
                           + " m surface");
    }
    const double cti = std::cos(geom.theta_i);
    const double ctr = std::cos(geom.theta_r);
    const double sti = std::sin(geom.theta_i);
    const double str = std::sin(geom.theta_r);

    switch (profile.kind) {
    case ProfileKind::LPS: {
        // Coplanar setup: the incident azimuth is 0 and the reflected one
        // is pi, so the y gradient vanishes identically.
        const double phi_x = cti - ctr;
        const double phi_y = 0.0;
        return tx.k * (phi_x * x_r + phi_y * y_r + profile.phi_0);
    }
    case ProfileKind::QPS: {
        if (!(profile.focus_f > 0.0)) {
            throw InvalidFocus("phase_profile_value: QPS focus must be > 0");
        }
        const double phi_x = cti - ctr;
        const double phi_y = 0.0;
        const double phi_xx = -sti * sti / (2.0 * R_d1)
                            - str * str / (2.0 * geom.d2)
                            + str * str / (4.0 * profile.focus_f);
        const double phi_yy = -1.0 / (2.0 * R_d1)
                            - 1.0 / (2.0 * geom.d2)
                            + 1.0 / (4.0 * profile.focus_f);
        return tx.k * (phi_x * x_r + phi_y * y_r
                       + phi_xx * x_r * x_r + phi_yy * y_r * y_r
                       + profile.phi_0);
    }
    case ProfileKind::FPS: {
        // Cancel the accumulated incident phase and refocus on the mirror
        // image of the receiver behind the surface.
        const double d1_hat = geom.d1 - x_r * cti;
        const double psi_in = tx.k * (d1_hat
                                      + (x_r * x_r * sti * sti + y_r * y_r)
                                            / (2.0 * R_d1))
                            - std::atan(geom.d1 / tx.z_R1);
        const double ox = -geom.d2 * ctr - x_r;
        const double oy = -y_r;
        const double oz = geom.d2 * str;
        const double dist = std::sqrt(ox * ox + oy * oy + oz * oz);
        return -psi_in - tx.k * dist + tx.k * profile.phi_0;
    }
    }
    throw Error("phase_profile_value: unknown profile kind");
}

} // namespace orislink
