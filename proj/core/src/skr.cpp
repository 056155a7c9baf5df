#include "orislink/skr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace orislink {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

double budget_scale(const ChannelBudget& b) {
    const double c = b.tau_eff * b.tau_l * b.tau_p;
    if (!(c >= 0.0) || !(c <= 1.0)) {
        throw InvalidConfig("plob: transmittance product must lie in [0, 1]");
    }
    if (!(b.sigma_R_sq >= 0.0)) {
        throw InvalidConfig("plob: sigma_R_sq must be >= 0");
    }
    return c;
}

} // namespace

double plob_truncated(double c, double intensity) noexcept {
    const double tau = c * intensity;
    if (tau <= 0.0) return 0.0;
    if (tau >= 1.0) return 0.0;
    // -log2(1 - tau) via log1p for small-tau accuracy.
    return -std::log1p(-tau) / kLn2;
}

double plob_pointwise(double tau) {
    if (tau < 0.0) {
        throw std::invalid_argument("plob_pointwise: tau must be >= 0");
    }
    if (tau >= 1.0) {
        throw SaturatedChannel("plob_pointwise: bound diverges at tau >= 1");
    }
    return -std::log1p(-tau) / kLn2;
}

double plob_average_exact(const ChannelBudget& budget, double rel_tol) {
    const double c = budget_scale(budget);
    if (c == 0.0) return 0.0;
    if (budget.sigma_R_sq < 1e-14) return plob_pointwise(c);
    return lognormal_expectation(
        [c](double intensity) { return plob_truncated(c, intensity); },
        budget.sigma_R_sq, 1.0 / c, rel_tol);
}

double plob_average_gl(const ChannelBudget& budget, const QuadratureRule& rule) {
    const double c = budget_scale(budget);
    if (c == 0.0) return 0.0;
    if (budget.sigma_R_sq < 1e-14) return plob_pointwise(c);
    if (rule.order < 1) {
        throw std::invalid_argument("plob_average_gl: rule order must be >= 1");
    }

    const QuadratureRule* r = &rule;
    QuadratureRule local;
    if (rule.alpha != -0.5) {
        local = gauss_laguerre(rule.order, -0.5);
        r = &local;
    }

    const double sigma = std::sqrt(budget.sigma_R_sq);
    const double mu = -0.5 * budget.sigma_R_sq;
    double num = 0.0, den = 0.0;
    for (int g = 0; g < r->order; ++g) {
        const double x = r->nodes[g];
        // Raw weight; harmless underflow to 0 for far-tail nodes.
        const double w = r->scaled_weights[g] * std::exp(-x);
        if (w == 0.0) continue;
        const double step = sigma * std::sqrt(2.0 * x);
        const double up = plob_truncated(c, std::exp(mu + step));
        const double dn = plob_truncated(c, std::exp(mu - step));
        num += w * 0.5 * (up + dn);
        den += w;
    }
    return num / den;
}

double focus_rate(const FocusScenario& sc, double f) {
    PhaseProfile profile;
    profile.kind = ProfileKind::QPS;
    profile.focus_f = f;
    const RxBeam rx = rx_beam_widths(profile, sc.boris, sc.geom, sc.rho0);
    const double tau_p = average_gml(rx, sc.hover, sc.aperture_a);
    ChannelBudget budget;
    budget.tau_eff = sc.tau_eff;
    budget.tau_l = sc.tau_l;
    budget.tau_p = tau_p;
    budget.sigma_R_sq = sc.sigma_R_sq;
    return plob_average_gl(budget, *sc.rule);
}

std::vector<double> default_focus_grid(double d2) {
    constexpr int kPoints = 60;
    std::vector<double> grid(kPoints);
    const double lo = d2 / 2.0;
    const double hi = 100.0 * d2;
    const double step = std::log(hi / lo) / (kPoints - 1);
    for (int i = 0; i < kPoints; ++i) {
        grid[i] = lo * std::exp(i * step);
    }
    grid.front() = lo; // keep the endpoints exact
    grid.back() = hi;
    return grid;
}

FocusResult optimize_focus(const FocusScenario& sc,
                           const std::vector<double>& f_grid, bool refine) {
    if (f_grid.empty()) {
        throw std::invalid_argument("optimize_focus: focus grid is empty");
    }
    if (sc.rule == nullptr) {
        throw std::invalid_argument("optimize_focus: quadrature rule not set");
    }
    const double f_min = sc.geom.d2 / 2.0;
    for (double f : f_grid) {
        // Allow an ulp of slack so a grid built from the same d2/2 passes.
        if (f < f_min * (1.0 - 1e-12)) {
            throw std::invalid_argument(
                "optimize_focus: focus grid point below d2/2");
        }
    }
    constexpr double kTie = 1e-6; // bits/use

    FocusResult out;
    out.curve.reserve(f_grid.size());
    std::size_t best_idx = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < f_grid.size(); ++i) {
        const double rate = focus_rate(sc, f_grid[i]);
        out.curve.emplace_back(f_grid[i], rate);
        if (rate > best) {
            best = rate;
            best_idx = i;
        }
    }

    double f_best = f_grid[best_idx];
    double r_best = best;

    if (refine && f_grid.size() > 1) {
        // Golden-section over the bracket spanned by the neighbors of the
        // best grid point.
        const std::size_t lo_i = best_idx > 0 ? best_idx - 1 : best_idx;
        const std::size_t hi_i =
            best_idx + 1 < f_grid.size() ? best_idx + 1 : best_idx;
        double lo = f_grid[lo_i], hi = f_grid[hi_i];
        constexpr double kGolden = 0.61803398874989485;
        double x1 = hi - kGolden * (hi - lo);
        double x2 = lo + kGolden * (hi - lo);
        double r1 = focus_rate(sc, x1);
        double r2 = focus_rate(sc, x2);
        while (hi - lo > 1e-3) {
            if (r1 < r2) {
                lo = x1;
                x1 = x2;
                r1 = r2;
                x2 = lo + kGolden * (hi - lo);
                r2 = focus_rate(sc, x2);
            } else {
                hi = x2;
                x2 = x1;
                r2 = r1;
                x1 = hi - kGolden * (hi - lo);
                r1 = focus_rate(sc, x1);
            }
        }
        const double f_mid = 0.5 * (lo + hi);
        const double r_mid = focus_rate(sc, f_mid);
        if (r_mid > r_best) {
            r_best = r_mid;
            f_best = f_mid;
        }
        if (r1 > r_best) {
            r_best = r1;
            f_best = x1;
        }
        if (r2 > r_best) {
            r_best = r2;
            f_best = x2;
        }
    }

    // Tie rule: any evaluated focus whose rate comes within kTie of the
    // optimum wins if it is smaller; scanning every curve point keeps this
    // correct for unsorted grids too.
    out.f_opt = f_best;
    out.skr_opt = r_best;
    for (const auto& [f, rate] : out.curve) {
        if (f < out.f_opt && rate >= r_best - kTie) {
            out.f_opt = f;
            out.skr_opt = rate;
        }
    }
    return out;
}

} // namespace orislink
