#include <cmath>
#include <numbers>

#include "doctest.h"
#include "orislink/beam.hpp"

using namespace orislink;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Fixture {
    TxBeam tx = make_tx_beam(810e-9, 16.5e-6);
    AtmosphereSpec atm;
    double v_rms = 0.0;
    double rho0 = 0.0;

    Fixture() {
        atm.A = 3e-13;
        atm.v_g = 5.0;
        atm.tau_zen = 0.78;
        atm.beta_l_db_per_km = 0.43;
        v_rms = rms_wind(atm.v_g, 50.0);
    }

    LinkGeometry geom(double phi_i_deg) const {
        GeometryInput in;
        in.phi_i = phi_i_deg * kDeg;
        in.phi_r = 45.0 * kDeg;
        return derive_geometry(in);
    }
};

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

} // namespace

TEST_CASE("transmit beam derived quantities") {
    const TxBeam tx = make_tx_beam(810e-9, 16.5e-6);
    CHECK(rel_err(tx.k, 7757018.8977525756) < 1e-15);
    CHECK(rel_err(tx.w0, 0.015626121685386088) < 1e-15);
    CHECK(rel_err(tx.z_R1, 947.03767790218706) < 1e-14);
}

TEST_CASE("beam state at the reflector, 30 degree incidence") {
    const Fixture fx;
    const LinkGeometry geom = fx.geom(30.0);
    const BeamAtOris b = beam_at_oris(fx.tx, geom, fx.atm, fx.v_rms, 1.0);
    CHECK(rel_err(b.Lambda0, 24.311916972279452) < 1e-12);
    CHECK(rel_err(b.T, 0.012054041839172785) < 1e-8);
    CHECK(rel_err(b.w_d1, 0.38250694744813829) < 1e-9);
    CHECK(rel_err(b.w_ix, 0.44168097815216933) < 1e-9);
    CHECK(b.w_iy == b.w_d1);
    CHECK(b.k == fx.tx.k);
    CHECK(b.fits_oris); // 2*0.44 m within the 1 m side
}

TEST_CASE("footprint flag trips when the surface is too small") {
    const Fixture fx;
    const LinkGeometry geom = fx.geom(30.0);
    const BeamAtOris b = beam_at_oris(fx.tx, geom, fx.atm, fx.v_rms, 0.5);
    CHECK_FALSE(b.fits_oris); // 0.88 m footprint against a 0.5 m side
}

TEST_CASE("vacuum propagation has no turbulent broadening") {
    Fixture fx;
    fx.atm.vacuum_mode = true;
    const LinkGeometry geom = fx.geom(30.0);
    CHECK(turbulence_T(fx.tx, geom, fx.atm, fx.v_rms) == 0.0);
    const BeamAtOris b = beam_at_oris(fx.tx, geom, fx.atm, fx.v_rms, 1.0);
    CHECK(b.T == 0.0);
    // Pure diffraction: w = w0 * sqrt(1 + Lambda0^2).
    const double diffraction =
        fx.tx.w0 * std::sqrt(1.0 + b.Lambda0 * b.Lambda0);
    CHECK(b.w_d1 == diffraction);
}

TEST_CASE("receiver-leg coherence length") {
    const Fixture fx;
    const LinkGeometry geom = fx.geom(0.0);
    const double rho0 =
        coherence_length_rho0(geom, fx.atm, fx.tx.k, fx.v_rms);
    CHECK(rel_err(rho0, 0.010247878597260625) < 1e-8);

    AtmosphereSpec vac = fx.atm;
    vac.vacuum_mode = true;
    CHECK(std::isinf(coherence_length_rho0(geom, vac, fx.tx.k, fx.v_rms)));
}

TEST_CASE("receiver widths for the flat profile at reference angles") {
    const Fixture fx;
    const PhaseProfile lps{ProfileKind::LPS, 0.0, 0.0};
    const struct {
        double deg, wx, wy;
    } want[] = {
        {0.0, 0.23491096997144631, 0.33149864545286073},
        {30.0, 0.31269554310462538, 0.38271382408261423},
        {60.0, 0.93670231585329655, 0.66243815982897347},
    };
    for (const auto& w : want) {
        CAPTURE(w.deg);
        const LinkGeometry geom = fx.geom(w.deg);
        const BeamAtOris b = beam_at_oris(fx.tx, geom, fx.atm, fx.v_rms, 1.0);
        const double rho0 =
            coherence_length_rho0(geom, fx.atm, fx.tx.k, fx.v_rms);
        const RxBeam rx = rx_beam_widths(lps, b, geom, rho0);
        CHECK(rel_err(rx.w_rx_x, w.wx) < 1e-8);
        CHECK(rel_err(rx.w_rx_y, w.wy) < 1e-8);
    }
}

TEST_CASE("receiver widths for the narrowing profile focused at d2") {
    const Fixture fx;
    const struct {
        double deg, wx, wy;
    } want[] = {
        {0.0, 0.11846214077761906, 0.16610713984191913},
        {30.0, 0.15691628422330886, 0.19166689205329288},
        {60.0, 0.46841451493180514, 0.33139822002317909},
    };
    for (const auto& w : want) {
        CAPTURE(w.deg);
        const LinkGeometry geom = fx.geom(w.deg);
        const BeamAtOris b = beam_at_oris(fx.tx, geom, fx.atm, fx.v_rms, 1.0);
        const double rho0 =
            coherence_length_rho0(geom, fx.atm, fx.tx.k, fx.v_rms);
        const PhaseProfile qps{ProfileKind::QPS, geom.d2, 0.0};
        const RxBeam rx = rx_beam_widths(qps, b, geom, rho0);
        CHECK(rel_err(rx.w_rx_x, w.wx) < 1e-8);
        CHECK(rel_err(rx.w_rx_y, w.wy) < 1e-8);
    }
}

TEST_CASE("receiver widths for the focusing profile at reference angles") {
    const Fixture fx;
    const PhaseProfile fps{ProfileKind::FPS, 0.0, 0.0};
    const struct {
        double deg, wx, wy;
    } want[] = {
        {0.0, 0.017794675023163585, 0.012582735377889854},
        {30.0, 0.015409719230671083, 0.012581983064899167},
        {60.0, 0.0088957418702147028, 0.012580478800227834},
    };
    for (const auto& w : want) {
        CAPTURE(w.deg);
        const LinkGeometry geom = fx.geom(w.deg);
        const BeamAtOris b = beam_at_oris(fx.tx, geom, fx.atm, fx.v_rms, 1.0);
        const double rho0 =
            coherence_length_rho0(geom, fx.atm, fx.tx.k, fx.v_rms);
        const RxBeam rx = rx_beam_widths(fps, b, geom, rho0);
        CHECK(rel_err(rx.w_rx_x, w.wx) < 1e-8);
        CHECK(rel_err(rx.w_rx_y, w.wy) < 1e-8);
    }
}

TEST_CASE("epsilon and diffraction parameter at 30 degrees") {
    const Fixture fx;
    const LinkGeometry geom = fx.geom(30.0);
    const BeamAtOris b = beam_at_oris(fx.tx, geom, fx.atm, fx.v_rms, 1.0);
    const double rho0 = coherence_length_rho0(geom, fx.atm, fx.tx.k, fx.v_rms);
    const RxBeam rx =
        rx_beam_widths(PhaseProfile{ProfileKind::LPS, 0.0, 0.0}, b, geom, rho0);
    CHECK(rel_err(rx.epsilon, 2787.3823291294548) < 1e-8);
    CHECK(rel_err(rx.Lambda1, 0.00062303364130372274) < 1e-9);
}

TEST_CASE("quadratic profile rejects a non-positive focus") {
    const Fixture fx;
    const LinkGeometry geom = fx.geom(30.0);
    const BeamAtOris b = beam_at_oris(fx.tx, geom, fx.atm, fx.v_rms, 1.0);
    const double rho0 = coherence_length_rho0(geom, fx.atm, fx.tx.k, fx.v_rms);
    CHECK_THROWS_AS(rx_beam_widths(PhaseProfile{ProfileKind::QPS, 0.0, 0.0},
                                   b, geom, rho0),
                    InvalidFocus);
    CHECK_THROWS_AS(rx_beam_widths(PhaseProfile{ProfileKind::QPS, -5.0, 0.0},
                                   b, geom, rho0),
                    InvalidFocus);
}

TEST_CASE("vacuum epsilon is exactly one") {
    Fixture fx;
    fx.atm.vacuum_mode = true;
    const LinkGeometry geom = fx.geom(30.0);
    const BeamAtOris b = beam_at_oris(fx.tx, geom, fx.atm, fx.v_rms, 1.0);
    const double rho0 = coherence_length_rho0(geom, fx.atm, fx.tx.k, fx.v_rms);
    const RxBeam rx =
        rx_beam_widths(PhaseProfile{ProfileKind::LPS, 0.0, 0.0}, b, geom, rho0);
    CHECK(rx.epsilon == 1.0);
}

TEST_CASE("surface phase: linear profile slope and bounds") {
    const Fixture fx;
    const LinkGeometry geom = fx.geom(30.0);
    const double R = geom.d1;

    const PhaseProfile lps{ProfileKind::LPS, 0.0, 0.0};
    const double at0 = phase_profile_value(lps, 0.0, 0.0, geom, fx.tx, R, 1.0);
    CHECK(at0 == 0.0);
    // Slope along x is k*(cos(theta_i) - cos(theta_r)); no y dependence.
    const double dx = 0.01;
    const double got_slope =
        (phase_profile_value(lps, dx, 0.0, geom, fx.tx, R, 1.0) - at0) / dx;
    const double want_slope =
        fx.tx.k * (std::cos(geom.theta_i) - std::cos(geom.theta_r));
    CHECK(rel_err(got_slope, want_slope) < 1e-9);
    CHECK(phase_profile_value(lps, 0.02, 0.3, geom, fx.tx, R, 1.0) ==
          phase_profile_value(lps, 0.02, -0.3, geom, fx.tx, R, 1.0));

    CHECK_THROWS_AS(phase_profile_value(lps, 0.51, 0.0, geom, fx.tx, R, 1.0),
                    OutOfSurface);
    CHECK_THROWS_AS(phase_profile_value(lps, 0.0, -0.51, geom, fx.tx, R, 1.0),
                    OutOfSurface);
}

TEST_CASE("surface phase: quadratic profile curves both axes") {
    const Fixture fx;
    const LinkGeometry geom = fx.geom(30.0);
    const double R = geom.d1;
    const PhaseProfile qps{ProfileKind::QPS, geom.d2, 0.0};
    const PhaseProfile lps{ProfileKind::LPS, 0.0, 0.0};

    // Quadratic terms: value - linear part must be even in x and follow
    // the curvature coefficients.
    const double x = 0.2;
    const double quad_x =
        phase_profile_value(qps, x, 0.0, geom, fx.tx, R, 1.0) -
        phase_profile_value(lps, x, 0.0, geom, fx.tx, R, 1.0);
    const double sin2_i = std::sin(geom.theta_i) * std::sin(geom.theta_i);
    const double sin2_r = std::sin(geom.theta_r) * std::sin(geom.theta_r);
    const double want_xx =
        fx.tx.k *
        (-sin2_i / (2.0 * R) - sin2_r / (2.0 * geom.d2) +
         sin2_r / (4.0 * qps.focus_f)) *
        x * x;
    CHECK(rel_err(quad_x, want_xx) < 1e-9);

    const double y = 0.2;
    const double quad_y =
        phase_profile_value(qps, 0.0, y, geom, fx.tx, R, 1.0) -
        phase_profile_value(lps, 0.0, y, geom, fx.tx, R, 1.0);
    const double want_yy = fx.tx.k *
                           (-1.0 / (2.0 * R) - 1.0 / (2.0 * geom.d2) +
                            1.0 / (4.0 * qps.focus_f)) *
                           y * y;
    CHECK(rel_err(quad_y, want_yy) < 1e-9);
}

TEST_CASE("surface phase: focusing profile cancels the incident phase") {
    const Fixture fx;
    const LinkGeometry geom = fx.geom(30.0);
    const double R = geom.d1;
    const PhaseProfile fps{ProfileKind::FPS, 0.0, 0.0};

    // At the surface center the profile reduces to minus the incident
    // on-axis phase minus k*d2 (distance to the receiver).
    const double at0 =
        phase_profile_value(fps, 0.0, 0.0, geom, fx.tx, R, 1.0);
    const double psi0 = fx.tx.k * geom.d1 - std::atan(geom.d1 / fx.tx.z_R1);
    const double want = -psi0 - fx.tx.k * geom.d2;
    CHECK(rel_err(at0, want) < 1e-12);
}

TEST_CASE("constant phase offset shifts every profile uniformly") {
    const Fixture fx;
    const LinkGeometry geom = fx.geom(30.0);
    const double R = geom.d1;
    for (const ProfileKind kind :
         {ProfileKind::LPS, ProfileKind::QPS, ProfileKind::FPS}) {
        PhaseProfile p{kind, geom.d2, 0.0};
        PhaseProfile shifted{kind, geom.d2, 0.25};
        const double base =
            phase_profile_value(p, 0.1, 0.1, geom, fx.tx, R, 1.0);
        const double moved =
            phase_profile_value(shifted, 0.1, 0.1, geom, fx.tx, R, 1.0);
        CHECK(rel_err(moved - base, fx.tx.k * 0.25) < 1e-6);
    }
}
