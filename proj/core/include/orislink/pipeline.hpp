#pragma once

#include "orislink/atmosphere.hpp"
#include "orislink/beam.hpp"
#include "orislink/config.hpp"
#include "orislink/geometry.hpp"
#include "orislink/numerics.hpp"
#include "orislink/skr.hpp"

namespace orislink {

// Scenario state that does not depend on the incidence angle, precomputed
// once per sweep: transmit beam, atmosphere, RMS wind, the second-leg
// coherence length, Rytov variance and absorption (the receiver leg is
// fixed while the incidence angle sweeps), and the quadrature rule for
// fading averages.
struct Scenario {
    ScenarioConfig cfg;
    TxBeam tx;
    AtmosphereSpec atm;
    GeometryInput geo;   // phi_i is overwritten per evaluation
    HoverStats hover;
    double v_rms = 0.0;
    double rho0 = 0.0;
    double sigma_R2_sq = 0.0;
    QuadratureRule rule;
};

Scenario build_scenario(const ScenarioConfig& cfg);

// Everything the experiments report about one sweep point.
struct PointResult {
    LinkGeometry geom;
    BeamAtOris boris;
    RxBeam rx;
    AtmosphericLoss loss;
    double sigma_R1_sq = 0.0;  // slant leg
    double sigma_R_sq = 0.0;   // both legs combined
    double scint_index = 0.0;  // slant-leg scintillation, the d1-dependent part
    double gml = 0.0;          // hover-averaged collection fraction
    double skr = 0.0;          // bits per channel use
};

// Full chain at one incidence angle (radians) and phase profile.
PointResult evaluate_point(const Scenario& sc, double phi_i,
                           const PhaseProfile& profile);

// Transmittance budget of an evaluated point, for external cross-checks.
ChannelBudget budget_of(const Scenario& sc, const PointResult& pt);

// Cached per-angle state for focus sweeps. The returned value points at
// sc.rule; keep the scenario alive while using it.
FocusScenario focus_scenario(const Scenario& sc, double phi_i);

} // namespace orislink
