#ifndef ORISLINK_SKR_HPP
#define ORISLINK_SKR_HPP

#include <utility>
#include <vector>

#include "orislink/beam.hpp"
#include "orislink/gml.hpp"
#include "orislink/numerics.hpp"

namespace orislink {

// End-to-end transmittance decomposition plus the turbulence strength that
// drives the intensity fading statistics.
struct ChannelBudget {
    double tau_eff = 1.0;   // receiver efficiency
    double tau_l = 1.0;     // atmospheric absorption, both legs
    double tau_p = 1.0;     // geometric and misalignment loss
    double sigma_R_sq = 0.0; // combined log-irradiance variance, both legs
};

// Repeaterless secret-key capacity bound -log2(1 - tau) for a fixed
// transmittance. Throws SaturatedChannel at tau >= 1 where the bound
// diverges, std::invalid_argument for tau < 0.
double plob_pointwise(double tau);

// Truncated per-realization bound used inside every average: zero at or
// past saturation (c*intensity >= 1) instead of diverging. Total function.
double plob_truncated(double c, double intensity) noexcept;

// Fading-averaged bound: expectation of -log2(1 - c*I) over the mean-one
// log-normal intensity I, with c = tau_eff*tau_l*tau_p and realizations
// c*I >= 1 truncated to zero contribution. Evaluated by adaptive
// integration; this is the reference the quadrature form is tested against.
double plob_average_exact(const ChannelBudget& budget, double rel_tol = 1e-7);

// Same average by Gauss-Laguerre quadrature.
//
// The substitution u = (ln I - mu)^2 / (2 sigma^2) maps each half of the
// Gaussian in log-intensity onto the generalized Laguerre weight
// u^(-1/2) e^(-u), so a rule with alpha = -1/2 integrates both halves
// spectrally; the sum is normalized by the total weight so constants come
// out exact. Pass gauss_laguerre(G, -0.5); a rule with any other alpha is
// accepted and triggers construction of the matching half-order rule of the
// same G. Accuracy holds while the saturation point I = 1/c sits in the far
// tail of the density (c below roughly 0.1 for this channel); for larger c
// use plob_average_exact. sigma_R_sq below 1e-14 short-circuits to the
// pointwise bound.
double plob_average_gl(const ChannelBudget& budget, const QuadratureRule& rule);

// Everything optimize_focus needs to re-evaluate the width -> loss -> rate
// chain at a trial focus distance. Non-owning pointer to the quadrature
// rule; keep it alive across the call.
struct FocusScenario {
    BeamAtOris boris;
    LinkGeometry geom;
    double rho0 = 0.0;
    HoverStats hover;
    double aperture_a = 0.0;
    double tau_eff = 1.0;
    double tau_l = 1.0;
    double sigma_R_sq = 0.0;
    const QuadratureRule* rule = nullptr;
};

struct FocusResult {
    double f_opt = 0.0;
    double skr_opt = 0.0;
    std::vector<std::pair<double, double>> curve; // (f, skr) per grid point
};

// Rate of the quadratic profile focused at f: widths, hover-averaged
// collection, fading-averaged bound, all from the scenario's cached state.
double focus_rate(const FocusScenario& sc, double f);

// Scans the focus grid with the full quadratic-profile pipeline, keeping
// the best rate. With refine, a golden-section pass around the best grid
// point tightens f to 1e-3 m. Rates within 1e-6 bits/use of the optimum
// count as ties and resolve toward the smallest f, so a flat-topped curve
// reports the least aggressive focus. Throws std::invalid_argument on an
// empty grid; grid points below d2/2 are rejected (outside the narrowing
// regime the width formulas cover).
FocusResult optimize_focus(const FocusScenario& sc,
                           const std::vector<double>& f_grid, bool refine);

// Log-spaced default focus grid, 60 points spanning [d2/2, 100*d2].
std::vector<double> default_focus_grid(double d2);

} // namespace orislink

#endif
