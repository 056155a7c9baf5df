#pragma once

#include <cstdint>

#include "orislink/gml.hpp"
#include "orislink/skr.hpp"

namespace orislink {

// Outcome of one Monte Carlo estimate. stderr_of_mean is the sample
// standard deviation divided by sqrt(n); it is exactly zero when every
// draw produced the same value (degenerate hover spread, sigma_R_sq = 0).
struct McResult {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    long long n = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo mean of the conditional beam-capture fraction under Gaussian
// hover jitter. Each draw displaces the receiver centroid by
// (mu_x + sigma_x*Z1, mu_y + sigma_y*Z2) and evaluates conditional_gml.
//
// Draws are generated in fixed 16384-sample chunks, each chunk with its own
// counter-derived generator, and chunk statistics merge in index order, so
// the result is bit-identical for any thread count. Throws
// std::invalid_argument for n < 1 or threads < 1; width validation follows
// conditional_gml.
McResult mc_average_gml(const RxBeam& rx, const HoverStats& hover,
                        double aperture_radius, long long n,
                        std::uint64_t seed, int threads = 1);

// Monte Carlo mean of the truncated secret-key-rate bound over log-normal
// fading: draws I = exp(mu + sigma*Z) with the mean-one parametrization
// mu = -sigma^2/2 and averages plob_truncated(c, I) where
// c = tau_eff * tau_l * tau_p. Same determinism contract as above.
McResult mc_plob(const ChannelBudget& budget, long long n,
                 std::uint64_t seed, int threads = 1);

// Monte Carlo mean of the fading intensity itself. The mean-one
// parametrization makes the exact answer 1 for every sigma_R_sq, which
// turns this into a self-test of the sampler.
McResult mc_lognormal_mean(double sigma_R_sq, long long n,
                           std::uint64_t seed, int threads = 1);

} // namespace orislink
