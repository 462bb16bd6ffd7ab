#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evtol/errors.hpp"
#include "evtol/wind.hpp"
#include "support.hpp"

using namespace evtol;
using doctest::Approx;

TEST_CASE("normalize_angle wraps into (-pi, pi]") {
  CHECK(normalize_angle(kPi) == Approx(kPi));
  CHECK(normalize_angle(-kPi) == Approx(kPi));
  CHECK(normalize_angle(3 * kPi / 2) == Approx(-kPi / 2));
  CHECK(normalize_angle(deg2rad(725)) == Approx(deg2rad(5)));
}

TEST_CASE("WindSpec rejects negative speed and normalizes heading") {
  CHECK_THROWS_AS(WindSpec::make(-1, 0), EnvelopeError);
  CHECK(WindSpec::make(4, deg2rad(270)).heading == Approx(deg2rad(-90)));
}

TEST_CASE("air_from_ground examples") {
  const WindSpec north = WindSpec::make(4, 0);
  SUBCASE("hover points into the wind") {
    for (double chi : {0.0, 1.0, -2.5}) {
      const AirState a = air_from_ground({0, chi}, north);
      CHECK(a.airspeed == Approx(4));
      CHECK(a.heading == Approx(kPi));
    }
  }
  SUBCASE("crosswind cruise crab") {
    const AirState a = air_from_ground({11.314, deg2rad(90)}, north);
    CHECK(a.airspeed == Approx(12.0).epsilon(1e-4));
    CHECK(rad2deg(a.heading) == Approx(109.47).epsilon(1e-4));
  }
  SUBCASE("tailwind subtracts") {
    const AirState a = air_from_ground({5, deg2rad(90)}, WindSpec::make(4, deg2rad(90)));
    CHECK(a.airspeed == Approx(1));
    CHECK(a.heading == Approx(deg2rad(90)));
    const GroundState g = ground_from_air(a, WindSpec::make(4, deg2rad(90)));
    CHECK(g.ground_speed == Approx(5));
    CHECK(g.course == Approx(deg2rad(90)));
  }
  SUBCASE("calm hover falls back to the default heading") {
    const AirState a = air_from_ground({0, 0}, WindSpec{}, 0.7);
    CHECK(a.airspeed == 0);
    CHECK(a.heading == Approx(0.7));
  }
}

TEST_CASE("ground_from_air examples") {
  const WindSpec north = WindSpec::make(4, 0);
  const GroundState hover = ground_from_air({4, kPi}, north, 1.25);
  CHECK(hover.ground_speed == Approx(0).epsilon(1e-12));
  CHECK(hover.course == Approx(1.25));

  const GroundState g = ground_from_air({12, deg2rad(109.47)}, north);
  CHECK(g.ground_speed == Approx(11.314).epsilon(1e-4));
  CHECK(rad2deg(g.course) == Approx(90.0).epsilon(1e-4));

  const GroundState tail = ground_from_air({12, deg2rad(90)}, WindSpec::make(4, deg2rad(90)));
  CHECK(tail.ground_speed == Approx(16));
  CHECK(tail.course == Approx(deg2rad(90)));
}

TEST_CASE("required_heading_rate examples") {
  const WindSpec w = WindSpec::make(4, 0);
  CHECK(required_heading_rate(12, 1.0, kPi, w) == Approx(0).epsilon(1e-15));
  CHECK(required_heading_rate(7, -2.0, kPi, w) == Approx(0).epsilon(1e-15));
  // -V^w a / (V^a sqrt(V^a^2 - V^w^2)) at 90 deg
  const double expect = -4.0 / (12.0 * std::sqrt(144.0 - 16.0));
  CHECK(required_heading_rate(12, 1.0, deg2rad(90), w) == Approx(expect).epsilon(1e-12));
  CHECK(required_heading_rate(12, 1.0, deg2rad(90), w) == Approx(-0.02946).epsilon(1e-3));
  CHECK(std::abs(required_heading_rate(4.001, 1.0, deg2rad(90), w)) > 10.0);
  CHECK_THROWS_AS(required_heading_rate(3.9, 1.0, deg2rad(90), w), InfeasibleAirspeedError);
  CHECK_THROWS_AS(required_heading_rate(4.0, 1.0, deg2rad(90), w), InfeasibleAirspeedError);
}

TEST_CASE("cruise_ground_speed and minimum airspeed") {
  const WindSpec w = WindSpec::make(4, 0);
  CHECK(cruise_ground_speed(12, deg2rad(90), w) == Approx(std::sqrt(128.0)));
  CHECK(cruise_ground_speed(12, 0, w) == Approx(16));
  CHECK(cruise_ground_speed(12, kPi, w) == Approx(8));
  CHECK(min_airspeed_for_course(deg2rad(90), w) == Approx(4));
  CHECK_THROWS_AS(cruise_ground_speed(3, deg2rad(90), w), InfeasibleAirspeedError);
}

TEST_CASE("straightline_course examples") {
  const SegmentCourse a = straightline_course({0, 0, -15}, {0, 500, -15});
  CHECK(rad2deg(a.course) == Approx(90));
  CHECK(a.length == Approx(500));
  const SegmentCourse b = straightline_course({0, 0, 0}, {100, 0, 0});
  CHECK(b.course == Approx(0));
  CHECK(b.length == Approx(100));
  const SegmentCourse c = straightline_course({0, 0, 0}, {-300, -400, 0});
  CHECK(rad2deg(c.course) == Approx(-126.8699).epsilon(1e-6));
  CHECK(c.length == Approx(500));
  CHECK_THROWS_AS(straightline_course({1, 2, 0}, {1, 2, -10}), DegenerateSegmentError);
}

TEST_CASE("property: ground -> air -> ground round trip") {
  for (int i = 0; i < 5000; ++i) {
    const GroundState g{testing::uniform(0, 20), testing::uniform(-kPi, kPi)};
    const WindSpec w = WindSpec::make(testing::uniform(0, 5), testing::uniform(-kPi, kPi));
    const AirState a = air_from_ground(g, w);
    const GroundState back = ground_from_air(a, w, g.course);
    CHECK(back.ground_speed == Approx(g.ground_speed).epsilon(1e-9).scale(1));
    if (g.ground_speed > 1e-6) {
      CHECK(std::abs(normalize_angle(back.course - g.course)) < 1e-9);
    }
  }
}

TEST_CASE("property: airspeed never below the crosswind component") {
  for (int i = 0; i < 5000; ++i) {
    const GroundState g{testing::uniform(0, 20), testing::uniform(-kPi, kPi)};
    const WindSpec w = WindSpec::make(testing::uniform(0, 5), testing::uniform(-kPi, kPi));
    const AirState a = air_from_ground(g, w);
    CHECK(a.airspeed >= w.speed * std::abs(std::sin(g.course - w.heading)) - 1e-9);
  }
}

TEST_CASE("property: heading rate is odd in the crosswind term and linear in a^a") {
  for (int i = 0; i < 2000; ++i) {
    const WindSpec w = WindSpec::make(testing::uniform(0.1, 5), testing::uniform(-kPi, kPi));
    const double rel = testing::uniform(-kPi, kPi);
    const double va = testing::uniform(w.speed + 0.1, 16.9);
    const double aa = testing::uniform(-2.5, 2.5);
    const double r = required_heading_rate(va, aa, w.heading + rel, w);
    CHECK(required_heading_rate(va, aa, w.heading - rel, w) == Approx(-r).scale(1e-12));
    CHECK(required_heading_rate(va, 2 * aa, w.heading + rel, w) == Approx(2 * r).scale(1e-12));
    // headwind/tailwind mirror: same |sin| on the other side of the wind axis
    CHECK(std::abs(required_heading_rate(va, aa, w.heading + kPi - rel, w)) == Approx(std::abs(r)).scale(1e-12));
  }
}
