#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evtol/errors.hpp"
#include "evtol/spline.hpp"
#include "support.hpp"

using namespace evtol;
using doctest::Approx;
using testing::quadplane;

namespace {

// Composite Simpson over the clamped spline, independent of the closed form.
double simpson_distance(const SpeedSpline& s, int n = 2000) {
  const double h = s.duration / n;
  double acc = s.speed(0) + s.speed(s.duration);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * s.speed(i * h);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("build_spline examples") {
  SUBCASE("0 -> 12 at 1.5") {
    const SpeedSpline s = build_spline(0, 12, 1.5);
    CHECK(s.duration == Approx(12));
    CHECK(s.distance() == Approx(72));
    CHECK(simpson_distance(s) == Approx(72).epsilon(1e-9));
    CHECK(s.coeffs[0] == 0);
    CHECK(s.coeffs[1] == 0);
    CHECK(s.coeffs[2] == Approx(3 * 12.0 / 144.0));
    CHECK(s.coeffs[3] == Approx(-2 * 12.0 / 1728.0));
  }
  SUBCASE("0 -> 2 at 1.5 gives the 4 m minimum hop") {
    const SpeedSpline up = build_spline(0, 2, 1.5);
    const SpeedSpline down = build_spline(2, 0, -1.5);
    CHECK(up.duration == Approx(2));
    CHECK(up.distance() == Approx(2));
    CHECK(std::abs(up.distance() + down.distance() - 4.0) < 1e-9);
  }
  SUBCASE("0 -> 12 at 0.5 gives 432 m paired") {
    const SpeedSpline up = build_spline(0, 12, 0.5);
    const SpeedSpline down = build_spline(12, 0, -0.5);
    CHECK(up.distance() == Approx(216));
    CHECK(std::abs(up.distance() + down.distance() - 432.0) < 1e-9);
  }
  SUBCASE("invalid") {
    CHECK_THROWS_AS(build_spline(0, 12, 0), InvalidSplineError);
    CHECK_THROWS_AS(build_spline(0, 12, -1), InvalidSplineError);
    CHECK_THROWS_AS(build_spline(12, 0, 1), InvalidSplineError);
    CHECK_THROWS_AS(build_spline(5, 5, 1), InvalidSplineError);
  }
}

TEST_CASE("spline boundary conditions") {
  for (auto [v0, v1, a] : {std::tuple{0.0, 12.0, 1.5}, {12.0, 0.0, -0.7}, {3.0, 7.5, 2.2}, {16.9, 2.0, -2.5}}) {
    const SpeedSpline s = build_spline(v0, v1, a);
    CHECK(std::abs(s.speed(0) - v0) < 1e-9);
    CHECK(std::abs(s.speed(s.duration) - v1) < 1e-9);
    CHECK(std::abs(s.accel(0)) < 1e-9);
    CHECK(std::abs(s.accel(s.duration)) < 1e-9);
    CHECK(std::abs(s.accel(s.duration / 2) - a) < 1e-9);
    CHECK(s.duration == Approx(3 * std::abs(v1 - v0) / (2 * std::abs(a))));
  }
}

TEST_CASE("mode_switch_times") {
  const auto& m = quadplane();
  SUBCASE("0 -> 12 at 1.5") {
    const SpeedSpline s = build_spline(0, 12, 1.5);
    const ModeSwitchTimes t = mode_switch_times(s, m);
    REQUIRE(t.t_qh);
    // dense-sampling oracle: first sample with v >= 2
    double oracle = 0;
    for (int i = 0; i <= 1200000; ++i) {
      if (s.speed(i * 1e-5) >= 2.0) {
        oracle = i * 1e-5;
        break;
      }
    }
    CHECK(*t.t_qh == Approx(oracle).epsilon(1e-5));
    CHECK(*t.t_qh == Approx(3.109).epsilon(1e-3));
    CHECK(*t.a_qh == Approx(s.accel(*t.t_qh)));
    REQUIRE(t.t_hp);
    CHECK(*t.t_hp == Approx(12));
    CHECK(std::abs(*t.a_hp) < 1e-9);
  }
  SUBCASE("0 -> 2 ends exactly at the Quad/Hybrid switch") {
    const ModeSwitchTimes t = mode_switch_times(build_spline(0, 2, 1.5), m);
    REQUIRE(t.t_qh);
    CHECK(*t.t_qh == Approx(2));
    CHECK_FALSE(t.t_hp.has_value());
  }
  SUBCASE("deceleration crosses in reverse order") {
    const SpeedSpline s = build_spline(12, 0, -1.5);
    const ModeSwitchTimes t = mode_switch_times(s, m);
    REQUIRE(t.t_qh);
    CHECK(*t.t_qh == Approx(12 - 3.109).epsilon(1e-3));
    CHECK(*t.a_qh < 0);
  }
}

TEST_CASE("v_max_achievable examples") {
  CHECK(v_max_achievable(10, 0.5, -0.5) == Approx(1.826).epsilon(1e-3));
  CHECK(std::abs(v_max_achievable(10, 0.5, -0.5) - 1.83) <= 0.01);
  CHECK(v_max_achievable(144, 1.5, -1.5) == Approx(12));
  CHECK(v_max_achievable(100, 1.0, -1.0) == Approx(8.165).epsilon(1e-4));
}

TEST_CASE("cruise_length examples") {
  CHECK(cruise_length(500, 12, 1.5, -1.5) == Approx(356));
  CHECK(std::abs(cruise_length(144, 12, 1.5, -1.5)) < 1e-9);
  CHECK(cruise_length(100, 12, 1.5, -1.5) == Approx(-44));
  const SegmentGeometry g = segment_geometry(500, 12, 1.5, -0.5);
  CHECK(g.l_plus == Approx(72));
  CHECK(g.l_minus == Approx(216));
  CHECK(g.l_cruise == Approx(212));
}

TEST_CASE("minimum segment lengths are exact") {
  CHECK(std::abs(accel_distance(2, 1.5) + accel_distance(2, -1.5) - 4.0) < 1e-9);
  CHECK(std::abs(accel_distance(12, 0.5) + accel_distance(12, -0.5) - 432.0) < 1e-9);
}

TEST_CASE("sample_spline lands on the endpoint") {
  const SpeedSpline s = build_spline(0, 12, 1.7);  // 10.588... s
  const SampledSpline smp = sample_spline(s, 0.01);
  CHECK(smp.t.back() == s.duration);
  CHECK(smp.v.back() == 12.0);
  CHECK(smp.grid.step <= 0.01);
  CHECK(smp.grid.intervals == static_cast<std::size_t>(std::ceil(s.duration / 0.01)));
}

TEST_CASE("property: integrated speed reproduces the closed-form distance") {
  for (int i = 0; i < 300; ++i) {
    const double v = testing::uniform(1e-3, 16.9);
    const double a = testing::uniform(0.1, 2.5);
    const SpeedSpline up = build_spline(0, v, a);
    const SpeedSpline down = build_spline(v, 0, -a);
    CHECK(simpson_distance(up) == Approx(accel_distance(v, a)).epsilon(1e-6));
    CHECK(simpson_distance(down) == Approx(accel_distance(v, -a)).epsilon(1e-6));
  }
}

TEST_CASE("property: peak acceleration at the midpoint, speed strictly monotone") {
  for (int i = 0; i < 200; ++i) {
    const double v0 = testing::uniform(0, 16.9);
    double v1 = testing::uniform(0, 16.9);
    if (std::abs(v1 - v0) < 1e-3) v1 = v0 + 1;
    const double a = std::copysign(testing::uniform(0.1, 2.5), v1 - v0);
    const SpeedSpline s = build_spline(v0, v1, a);
    double peak = 0, t_peak = 0, prev = s.speed(0);
    bool monotone = true;
    for (int k = 1; k <= 1000; ++k) {
      const double t = s.duration * k / 1000.0;
      const double acc = s.accel(t);
      if (std::abs(acc) > std::abs(peak)) {
        peak = acc;
        t_peak = t;
      }
      const double v = s.speed(t);
      if (k < 1000 && !((v - prev) * a > 0)) monotone = false;
      prev = v;
    }
    CHECK(peak == Approx(a).epsilon(1e-9));
    CHECK(t_peak == Approx(s.duration / 2).epsilon(1e-9));
    CHECK(monotone);
  }
}

TEST_CASE("property: V_max round trip gives zero cruise") {
  for (int i = 0; i < 500; ++i) {
    const double v = testing::uniform(0.5, 16.9);
    const double ap = testing::uniform(0.1, 2.5);
    const double am = -testing::uniform(0.1, 2.5);
    const double l = accel_distance(v, ap) + accel_distance(v, am);
    CHECK(v_max_achievable(l, ap, am) == Approx(v).epsilon(1e-9));
    CHECK(std::abs(cruise_length(l, v, ap, am)) < 1e-9 * l);
  }
}
