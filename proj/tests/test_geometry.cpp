#include <cmath>
#include <numbers>

#include "doctest.h"
#include "orislink/errors.hpp"
#include "orislink/geometry.hpp"

using namespace orislink;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

GeometryInput table_defaults() {
    GeometryInput in;
    in.h_hap = 20000.0;
    in.h_oris = 50.0;
    in.h_lap = 300.0;
    in.d_lap = 250.0;
    in.phi_i = 0.0;
    in.phi_r = 45.0 * kDeg;
    in.earth_radius = 6.37e6;
    return in;
}

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

} // namespace

TEST_CASE("vertical slant distance is the altitude difference, exactly") {
    // cos(0) = 1 makes the law-of-cosines root collapse to B - C with no
    // rounding: both squares are exact integers well under 2^53.
    CHECK(slant_distance_d1(0.0, 20000.0, 50.0, 6.37e6) == 19950.0);
}

TEST_CASE("slant distance at reference angles") {
    CHECK(rel_err(slant_distance_d1(30.0 * kDeg, 20000.0, 50.0, 6.37e6),
                  23024.301394778304) < 1e-13);
    CHECK(rel_err(slant_distance_d1(68.0 * kDeg, 20000.0, 50.0, 6.37e6),
                  52756.091995025985) < 1e-13);
}

TEST_CASE("slant distance grows with the zenith angle") {
    double prev = 0.0;
    for (int deg = 0; deg <= 85; deg += 5) {
        const double d = slant_distance_d1(deg * kDeg, 20000.0, 50.0, 6.37e6);
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("angle and altitude guards") {
    CHECK_THROWS_AS(slant_distance_d1(-0.1, 20000.0, 50.0, 6.37e6),
                    InvalidAngle);
    CHECK_THROWS_AS(
        slant_distance_d1(std::numbers::pi / 2.0, 20000.0, 50.0, 6.37e6),
        InvalidAngle);
    CHECK_THROWS_AS(slant_distance_d1(0.0, 50.0, 50.0, 6.37e6),
                    InvalidConfig);
    CHECK_THROWS_AS(slant_distance_d1(0.0, 40.0, 50.0, 6.37e6),
                    InvalidConfig);
}

TEST_CASE("reference geometry derivation") {
    const LinkGeometry g = derive_geometry(table_defaults());
    CHECK(g.d1 == 19950.0);
    CHECK(rel_err(g.d2, 353.55339059327372) < 1e-15);
    // 250*tan(pi/4) + 50; tan(pi/4) rounds a hair under 1, so allow the
    // one-ulp slack instead of demanding 300 bitwise.
    CHECK(std::fabs(g.h_lap - 300.0) < 1e-9);
    CHECK(g.theta_i == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(g.theta_r ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
}

TEST_CASE("elevation angles complement the zenith angles exactly") {
    GeometryInput in = table_defaults();
    in.phi_i = 33.0 * kDeg;
    const LinkGeometry g = derive_geometry(in);
    CHECK(g.theta_i == std::numbers::pi / 2.0 - g.phi_i);
    CHECK(g.theta_r == std::numbers::pi / 2.0 - g.phi_r);
}

TEST_CASE("vertical second leg takes the receiver altitude as given") {
    GeometryInput in = table_defaults();
    in.d_lap = 0.0;
    in.phi_r = 0.0;
    in.h_lap = 700.0;
    const LinkGeometry g = derive_geometry(in);
    CHECK(g.d2 == 650.0);
    CHECK(g.h_lap == 700.0);
}

TEST_CASE("vertical second leg rejects a nonzero reflection angle") {
    GeometryInput in = table_defaults();
    in.d_lap = 0.0;
    in.phi_r = 0.1;
    CHECK_THROWS_AS(derive_geometry(in), InvalidConfig);
}

TEST_CASE("reflector-receiver distance floor is enforced when set") {
    GeometryInput in = table_defaults();
    in.d_n_threshold = 400.0; // above the derived 353.55 m
    CHECK_THROWS_AS(derive_geometry(in), InvalidConfig);
    in.d_n_threshold = 300.0;
    CHECK_NOTHROW(derive_geometry(in));
}

TEST_CASE("second leg is independent of the incidence angle") {
    GeometryInput in = table_defaults();
    in.phi_i = 0.0;
    const LinkGeometry a = derive_geometry(in);
    in.phi_i = 55.0 * kDeg;
    const LinkGeometry b = derive_geometry(in);
    CHECK(a.d2 == b.d2);
    CHECK(a.h_lap == b.h_lap);
    CHECK(a.d1 != b.d1);
}
