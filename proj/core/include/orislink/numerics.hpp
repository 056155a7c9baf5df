#ifndef ORISLINK_NUMERICS_HPP
#define ORISLINK_NUMERICS_HPP

#include <functional>
#include <vector>

#include "orislink/errors.hpp"

namespace orislink {

// Gauss-Laguerre quadrature rule for weight x^alpha * exp(-x) on (0, inf).
// alpha = 0 is the classic rule. Weights are stored pre-multiplied by
// exp(x_g): the raw weights underfall below double range for large orders
// (w_g ~ 1e-300 already at order 180), while w_g*exp(x_g) stays O(1).
// Recover a raw weight as scaled_weights[g] * exp(-nodes[g]) when the node
// is small enough for that product to be representable.
struct QuadratureRule {
    int order = 0;
    double alpha = 0.0;
    std::vector<double> nodes;          // ascending, all > 0
    std::vector<double> scaled_weights; // w_g * exp(x_g), same length as nodes
};

// Error function with absolute error below 1e-14 for all finite x and odd
// symmetry exact to the bit (erf(-x) == -erf(x) always).
double erf_accurate(double x) noexcept;

// Adaptive Simpson integration of f over [a, b] to a relative tolerance.
// The tolerance is applied against a coarse whole-interval magnitude
// estimate, so intervals where f nearly cancels do not trigger runaway
// subdivision. Throws NonConvergence if the recursion depth or evaluation
// budget is exhausted first, std::invalid_argument for a >= b or a
// tolerance outside (0, 1e-2].
double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b, double rel_tol);

// Classic Gauss-Laguerre rule of the given order (weight exp(-x)).
// Exact for polynomials up to degree 2G-1. Throws OrderTooLarge above 512,
// std::invalid_argument below 1.
QuadratureRule gauss_laguerre(int G);

// Generalized rule for weight x^alpha * exp(-x), alpha > -1. The alpha=-1/2
// variant integrates the half-Gaussian substitution used by the key-rate
// average. Same order limits as the classic rule.
QuadratureRule gauss_laguerre(int G, double alpha);

// Expectation of g(I) under the mean-one log-normal intensity distribution
// (location -sigma_R_sq/2, scale sigma_R_sq), truncated at upper_clamp.
// Integrates in z = ln I over [mu-10sigma, min(ln(upper_clamp), mu+10sigma)]
// so the Gaussian weight is explicit; when the clamp binds, the endpoint is
// nudged inward by 1e-12 so integrands singular exactly at the clamp stay
// finite at every evaluation point.
double lognormal_expectation(const std::function<double(double)>& g,
                             double sigma_R_sq, double upper_clamp,
                             double rel_tol);

} // namespace orislink

#endif
