#ifndef ORISLINK_GML_HPP
#define ORISLINK_GML_HPP

#include "orislink/beam.hpp"

namespace orislink {

// Receiver hovering statistics: independent, non-identically distributed
// Gaussian offsets per axis. Zero sigmas are allowed and make the average
// collapse to the fixed-offset value exactly.
struct HoverStats {
    double mu_x = 0.0;
    double mu_y = 0.0;
    double sigma_x = 0.0;
    double sigma_y = 0.0;
};

// Fraction of beam power collected by a square aperture of side a*sqrt(pi)
// (the equal-area square of a radius-a circle), with the beam center
// displaced by (offset_x, offset_y). Product of two per-axis erf windows.
double conditional_gml(double offset_x, double offset_y, const RxBeam& rx,
                       double a);

// Hovering-averaged collection fraction in closed form. The Gaussian
// average of each erf window is again an erf pair with the width inflated
// to sqrt(w^2 + sigma^2); with sigma = 0 the expressions reduce bit for bit
// to the conditional value at the mean offset.
double average_gml(const RxBeam& rx, const HoverStats& hover, double a);

// Collection fraction with the beam dead-centered (no pointing error).
double deterministic_gml(const RxBeam& rx, double a);

} // namespace orislink

#endif
