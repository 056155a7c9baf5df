#include "orislink/pipeline.hpp"

#include <cmath>
#include <numbers>

namespace orislink {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

} // namespace

Scenario build_scenario(const ScenarioConfig& cfg) {
    Scenario sc;
    sc.cfg = cfg;
    sc.tx = make_tx_beam(cfg.lambda_nm * 1e-9, cfg.theta_div_urad * 1e-6);

    sc.atm.A = cfg.A;
    sc.atm.v_g = cfg.v_g;
    sc.atm.tau_zen = cfg.tau_zen;
    sc.atm.beta_l_db_per_km = cfg.beta_l_db_per_km;
    sc.atm.vacuum_mode = cfg.vacuum_mode;

    sc.geo.h_hap = cfg.h_hap_m;
    sc.geo.h_oris = cfg.h_oris_m;
    sc.geo.h_lap = cfg.h_lap_m;
    sc.geo.d_lap = cfg.d_lap_m;
    sc.geo.phi_i = 0.0;
    sc.geo.phi_r = cfg.phi_r_deg * kDegToRad;
    sc.geo.earth_radius = cfg.R_E_m;
    sc.geo.d_n_threshold = cfg.d_n_threshold_m;

    sc.hover = hover_from(cfg);
    sc.v_rms = rms_wind(cfg.v_g, cfg.h_oris_m);

    // The receiver leg never changes with the incidence angle; derive it
    // once through the vertical-free geometry at phi_i = 0.
    const LinkGeometry g0 = derive_geometry(sc.geo);
    sc.rho0 = coherence_length_rho0(g0, sc.atm, sc.tx.k, sc.v_rms);
    PathSegment leg2;
    leg2.h_low = g0.h_oris;
    leg2.h_high = g0.h_lap;
    leg2.zenith_angle = g0.phi_r;
    sc.sigma_R2_sq = rytov_variance(leg2, sc.atm, sc.tx.k, sc.v_rms);

    sc.rule = gauss_laguerre(cfg.quadrature_order, -0.5);
    return sc;
}

PointResult evaluate_point(const Scenario& sc, double phi_i,
                           const PhaseProfile& profile) {
    GeometryInput geo = sc.geo;
    geo.phi_i = phi_i;

    PointResult pt;
    pt.geom = derive_geometry(geo);

    PathSegment leg1;
    leg1.h_low = pt.geom.h_oris;
    leg1.h_high = pt.geom.h_hap;
    leg1.zenith_angle = phi_i;
    pt.sigma_R1_sq = rytov_variance(leg1, sc.atm, sc.tx.k, sc.v_rms);
    pt.sigma_R_sq = pt.sigma_R1_sq + sc.sigma_R2_sq;
    pt.scint_index = scintillation_index(pt.sigma_R1_sq);

    pt.boris = beam_at_oris(sc.tx, pt.geom, sc.atm, sc.v_rms,
                            sc.cfg.oris_side_m);
    pt.rx = rx_beam_widths(profile, pt.boris, pt.geom, sc.rho0);
    pt.loss = atmospheric_loss(pt.geom, sc.atm);

    pt.gml = average_gml(pt.rx, sc.hover, sc.cfg.aperture_radius_m);

    ChannelBudget budget;
    budget.tau_eff = sc.cfg.tau_eff;
    budget.tau_l = pt.loss.tau_l;
    budget.tau_p = pt.gml;
    budget.sigma_R_sq = pt.sigma_R_sq;
    pt.skr = plob_average_gl(budget, sc.rule);
    return pt;
}

ChannelBudget budget_of(const Scenario& sc, const PointResult& pt) {
    ChannelBudget budget;
    budget.tau_eff = sc.cfg.tau_eff;
    budget.tau_l = pt.loss.tau_l;
    budget.tau_p = pt.gml;
    budget.sigma_R_sq = pt.sigma_R_sq;
    return budget;
}

FocusScenario focus_scenario(const Scenario& sc, double phi_i) {
    GeometryInput geo = sc.geo;
    geo.phi_i = phi_i;
    const LinkGeometry geom = derive_geometry(geo);

    PathSegment leg1;
    leg1.h_low = geom.h_oris;
    leg1.h_high = geom.h_hap;
    leg1.zenith_angle = phi_i;
    const double sigma_R1_sq =
        rytov_variance(leg1, sc.atm, sc.tx.k, sc.v_rms);

    FocusScenario fs;
    fs.boris = beam_at_oris(sc.tx, geom, sc.atm, sc.v_rms, sc.cfg.oris_side_m);
    fs.geom = geom;
    fs.rho0 = sc.rho0;
    fs.hover = sc.hover;
    fs.aperture_a = sc.cfg.aperture_radius_m;
    fs.tau_eff = sc.cfg.tau_eff;
    fs.tau_l = atmospheric_loss(geom, sc.atm).tau_l;
    fs.sigma_R_sq = sigma_R1_sq + sc.sigma_R2_sq;
    fs.rule = &sc.rule;
    return fs;
}

} // namespace orislink
