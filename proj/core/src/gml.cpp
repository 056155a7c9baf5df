#include "orislink/gml.hpp"

#include <cmath>
#include <string>

#include "orislink/numerics.hpp"

namespace orislink {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;

void check_widths(const RxBeam& rx, double a) {
    if (!(rx.w_rx_x > 0.0) || !(rx.w_rx_y > 0.0)) {
        throw InvalidConfig("gml: receiver beam widths must be > 0");
    }
    if (!(a > 0.0)) {
        throw InvalidConfig("gml: aperture radius must be > 0");
    }
}

// One axis of the displaced-window integral:
// (1/2)[erf(delta/(sqrt(2)w) + s) - erf(delta/(sqrt(2)w) - s)],
// s = a*sqrt(pi)/(2w) the half-window in beam-width units.
double axis_window(double delta, double w, double a) {
    const double s = a * kSqrtPi / (2.0 * w);
    const double m = delta / (kSqrt2 * w);
    return 0.5 * (erf_accurate(m + s) - erf_accurate(m - s));
}

// Gaussian-averaged axis window, using the identity
// E[erf(alpha*x + beta)] = erf((alpha*mu + beta)/sqrt(1 + 2*alpha^2*sigma^2))
// for x ~ N(mu, sigma^2). With alpha = 1/(sqrt(2)w) both erf arguments of
// axis_window simply divide by sqrt(1 + sigma^2/w^2). sigma = 0 divides by
// exactly 1, so the degenerate case matches axis_window to the bit.
double axis_window_avg(double mu, double sigma, double w, double a) {
    const double s = a * kSqrtPi / (2.0 * w);
    const double m = mu / (kSqrt2 * w);
    const double den = std::sqrt(1.0 + (sigma * sigma) / (w * w));
    return 0.5 * (erf_accurate((m + s) / den) - erf_accurate((m - s) / den));
}

} // namespace

double conditional_gml(double offset_x, double offset_y, const RxBeam& rx,
                       double a) {
    check_widths(rx, a);
    return axis_window(offset_x, rx.w_rx_x, a)
         * axis_window(offset_y, rx.w_rx_y, a);
}

double average_gml(const RxBeam& rx, const HoverStats& hover, double a) {
    check_widths(rx, a);
    if (hover.sigma_x < 0.0 || hover.sigma_y < 0.0) {
        throw InvalidConfig("average_gml: hover sigmas must be >= 0");
    }
    return axis_window_avg(hover.mu_x, hover.sigma_x, rx.w_rx_x, a)
         * axis_window_avg(hover.mu_y, hover.sigma_y, rx.w_rx_y, a);
}

double deterministic_gml(const RxBeam& rx, double a) {
    check_widths(rx, a);
    return erf_accurate(a * kSqrtPi / (2.0 * rx.w_rx_x))
         * erf_accurate(a * kSqrtPi / (2.0 * rx.w_rx_y));
}

} // namespace orislink
