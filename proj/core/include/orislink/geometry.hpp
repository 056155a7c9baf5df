#ifndef ORISLINK_GEOMETRY_HPP
#define ORISLINK_GEOMETRY_HPP

#include <optional>

#include "orislink/errors.hpp"

namespace orislink {

// Scenario geometry inputs. Angles in radians, lengths in meters.
struct GeometryInput {
    double h_hap = 20000.0;   // transmitter platform altitude
    double h_oris = 50.0;     // reflector altitude
    double h_lap = 300.0;     // receiver altitude; input only for the vertical link
    double d_lap = 250.0;     // horizontal reflector-to-receiver projection
    double phi_i = 0.0;       // incidence zenith angle
    double phi_r = 0.0;       // reflection zenith angle
    double earth_radius = 6.37e6;
    std::optional<double> d_n_threshold; // minimum allowed reflector-receiver distance
};

// Fully derived link geometry. Immutable after construction.
struct LinkGeometry {
    double h_hap = 0.0;
    double h_oris = 0.0;
    double h_lap = 0.0;
    double d_lap = 0.0;
    double phi_i = 0.0;   // zenith angles
    double phi_r = 0.0;
    double theta_i = 0.0; // elevation angles, pi/2 - phi
    double theta_r = 0.0;
    double d1 = 0.0;      // slant distance, transmitter to reflector
    double d2 = 0.0;      // reflector to receiver
    double earth_radius = 0.0;
    std::optional<double> d_n_threshold;
};

// Slant distance from a platform at altitude h_hap down to a surface point
// at altitude h_oris, seen under zenith angle phi_i on a spherical Earth.
// Throws InvalidAngle outside [0, pi/2), InvalidConfig if h_hap <= h_oris.
double slant_distance_d1(double phi_i, double h_hap, double h_oris,
                         double earth_radius);

// Populates the full geometry from scenario inputs.
//
// With d_lap > 0 the receiver altitude follows from the reflection angle:
// h_lap = d_lap*tan(theta_r) + h_oris, and d2 = d_lap/cos(theta_r). The
// d_lap = 0 case is the vertical link: phi_r must be 0 and h_lap is taken
// from the input, with d2 = h_lap - h_oris.
// Throws InvalidConfig naming the offending field.
LinkGeometry derive_geometry(const GeometryInput& in);

} // namespace orislink

#endif
