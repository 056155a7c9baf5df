#include "orislink/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace orislink {

double slant_distance_d1(double phi_i, double h_hap, double h_oris,
                         double earth_radius) {
    if (!(phi_i >= 0.0) || !(phi_i < std::numbers::pi / 2.0)) {
        throw InvalidAngle("slant_distance_d1: phi_i must be in [0, pi/2), got "
                           + std::to_string(phi_i));
    }
    if (!(h_hap > h_oris)) {
        throw InvalidConfig("slant_distance_d1: h_hap must exceed h_oris");
    }
    // Law of cosines on the Earth-center triangle, written so phi_i = 0
    // collapses to the plain altitude difference without cancellation:
    // cos^2(phi) - 1 is exactly 0 there.
    const double rb = earth_radius + h_hap;
    const double rc = earth_radius + h_oris;
    const double c = std::cos(phi_i);
    return std::sqrt(rb * rb + rc * rc * (c * c - 1.0)) - rc * c;
}

LinkGeometry derive_geometry(const GeometryInput& in) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!(in.h_hap > in.h_oris)) {
        throw InvalidConfig("derive_geometry: h_hap must exceed h_oris");
    }
    if (!(in.phi_i >= 0.0) || !(in.phi_i < half_pi)) {
        throw InvalidAngle("derive_geometry: phi_i must be in [0, pi/2)");
    }
    if (!(in.phi_r >= 0.0) || !(in.phi_r < half_pi)) {
        throw InvalidAngle("derive_geometry: phi_r must be in [0, pi/2)");
    }
    if (in.d_lap < 0.0) {
        throw InvalidConfig("derive_geometry: d_lap must be >= 0");
    }
    if (!(in.earth_radius > 0.0)) {
        throw InvalidConfig("derive_geometry: earth_radius must be > 0");
    }

    LinkGeometry g;
    g.h_hap = in.h_hap;
    g.h_oris = in.h_oris;
    g.d_lap = in.d_lap;
    g.phi_i = in.phi_i;
    g.phi_r = in.phi_r;
    g.theta_i = half_pi - in.phi_i;
    g.theta_r = half_pi - in.phi_r;
    g.earth_radius = in.earth_radius;
    g.d_n_threshold = in.d_n_threshold;

    if (in.d_lap > 0.0) {
        g.d2 = in.d_lap / std::cos(g.theta_r);
        g.h_lap = in.d_lap * std::tan(g.theta_r) + in.h_oris;
    } else {
        // Vertical link: the receiver sits directly above the reflector.
        if (in.phi_r != 0.0) {
            throw InvalidConfig("derive_geometry: d_lap = 0 requires phi_r = 0");
        }
        if (!(in.h_lap > in.h_oris)) {
            throw InvalidConfig("derive_geometry: h_lap must exceed h_oris");
        }
        g.h_lap = in.h_lap;
        g.d2 = in.h_lap - in.h_oris;
    }

    if (!(g.h_lap > g.h_oris)) {
        throw InvalidConfig("derive_geometry: derived h_lap must exceed h_oris");
    }
    g.d1 = slant_distance_d1(in.phi_i, in.h_hap, in.h_oris, in.earth_radius);
    if (in.d_n_threshold && !(g.d2 > *in.d_n_threshold)) {
        throw InvalidConfig("derive_geometry: d2 = " + std::to_string(g.d2)
                            + " m does not clear d_n_threshold = "
                            + std::to_string(*in.d_n_threshold) + " m");
    }
    return g;
}

} // namespace orislink
