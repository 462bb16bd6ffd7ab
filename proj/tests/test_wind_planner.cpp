#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "evtol/errors.hpp"
#include "evtol/spline.hpp"
#include "evtol/wind_planner.hpp"
#include "support.hpp"

using namespace evtol;
using doctest::Approx;
using testing::kEnd;
using testing::kStart;
using testing::quadplane;

namespace {

const double kCourse = deg2rad(90);

WindTraversal cross_plan(ModeSchedule schedule = ModeSchedule::Full) {
  const WindSpec w = WindSpec::make(4, 0);
  WindTraversalConfig cfg;
  cfg.schedule = schedule;
  return straight_traversal_in_wind(kStart, kEnd, ground_speed_for_airspeed(12, kCourse, w), w, cfg, quadplane());
}

}  // namespace

TEST_CASE("comp_acc_seg: headwind needs no heading change") {
  const auto& m = quadplane();
  const WindSpec w = WindSpec::make(4, deg2rad(-90));
  // airspeed rate equals the ground acceleration here, so only the a^a limit can bind
  for (double a : {2.5, -2.5, 0.5}) {
    const AccelSegment s = comp_acc_seg(8, a, kCourse, w, WindTraversalConfig{}, m);
    CHECK(s.constraints_met);
    CHECK(s.a_g_max <= m.a_lim_plus());
    CHECK(s.a_g_max >= m.a_lim_minus());
    CHECK(std::abs(s.a_g_max) > 0.9 * std::min(std::abs(a), m.a_lim_plus()));
    if (a == 0.5) CHECK(s.attempts == 1);
    for (double sd : s.sigma_dot) CHECK(std::abs(sd) < 1e-12);
  }
}

TEST_CASE("comp_acc_seg: crosswind backs off and meets limits") {
  const auto& m = quadplane();
  const WindSpec w = WindSpec::make(4, 0);
  const AccelSegment s = comp_acc_seg(std::sqrt(128.0), 2.5, kCourse, w, WindTraversalConfig{}, m);
  CHECK(s.constraints_met);
  CHECK(s.a_g_max == Approx(2.25));
  CHECK(s.attempts == 2);
  const double peak = *std::max_element(s.sigma_dot.begin(), s.sigma_dot.end(),
                                        [](double a, double b) { return std::abs(a) < std::abs(b); });
  CHECK(std::abs(rad2deg(peak)) == Approx(20.25).epsilon(0.5 / 20.25));
}

TEST_CASE("comp_acc_seg: pure tailwind exhausts the backoff") {
  WindTraversalConfig cfg;
  const AccelSegment s = comp_acc_seg(16, 2.5, kCourse, WindSpec::make(4, kCourse), cfg, quadplane());
  CHECK_FALSE(s.constraints_met);
  CHECK(s.a_g_max >= cfg.min_a_g);
  CHECK(s.a_g_max * cfg.backoff < cfg.min_a_g);
  // heading flips by ~180 deg when the ground speed passes the wind speed
  const double sd = *std::max_element(s.sigma_dot.begin(), s.sigma_dot.end(),
                                      [](double a, double b) { return std::abs(a) < std::abs(b); });
  CHECK(std::abs(sd) > quadplane().sigma_dot_lim());
}

TEST_CASE("comp_acc_seg rejects bad arguments") {
  const WindSpec w = WindSpec::make(4, 0);
  CHECK_THROWS_AS(comp_acc_seg(0, 2.5, kCourse, w, WindTraversalConfig{}, quadplane()), InvalidSplineError);
  CHECK_THROWS_AS(comp_acc_seg(10, 0.1, kCourse, w, WindTraversalConfig{}, quadplane()), InvalidSplineError);
}

TEST_CASE("crosswind 500 m straight traversal") {
  const WindTraversal p = cross_plan();
  CHECK(p.stf);
  CHECK(p.v_gc == Approx(std::sqrt(128.0)));
  CHECK(p.v_ac == Approx(12));
  CHECK(std::abs(rad2deg(p.crab) - 19.5) <= 0.1);
  CHECK(p.series.total_energy() == Approx(13910).epsilon(0.05));
  CHECK(p.peak_power == Approx(630.4).epsilon(0.05));
  CHECK(std::abs(rad2deg(p.max_sigma_dot) - 20.25) <= 0.5);
  CHECK(p.phases.e_cruise == Approx(quadplane().cruise_power(12) * p.phases.t_cruise));
  CHECK(p.phases.energy() == Approx(p.series.total_energy()).epsilon(1e-3));
}

TEST_CASE("mode-capped crosswind traversals") {
  const WindTraversal qh = cross_plan(ModeSchedule::QuadHybrid);
  CHECK(qh.series.total_energy() == Approx(26740).epsilon(0.05));
  for (FlightMode mode : qh.series.mode) CHECK(mode != FlightMode::Plane);

  const WindSpec w = WindSpec::make(4, 0);
  WindTraversalConfig cfg;
  cfg.schedule = ModeSchedule::QuadOnly;
  const WindTraversal q =
      straight_traversal_in_wind(kStart, kEnd, ground_speed_for_airspeed(6, kCourse, w), w, cfg, quadplane());
  CHECK(std::abs(rad2deg(q.crab) - 41.8) <= 0.1);
  CHECK(q.series.total_energy() == Approx(48500).epsilon(0.05));
}

TEST_CASE("tailwind 5 degrees off the course is not straight-line feasible") {
  const WindSpec w = WindSpec::make(4, deg2rad(95));
  const WindTraversal p = straight_traversal_in_wind(kStart, kEnd, ground_speed_for_airspeed(12, kCourse, w), w,
                                                     WindTraversalConfig{}, quadplane());
  CHECK_FALSE(p.stf);
  CHECK(p.series.size() > 0);  // diagnostics still returned
}

TEST_CASE("pure headwind is always feasible") {
  const WindSpec w = WindSpec::make(4, deg2rad(270));
  for (double va : {6.0, 9.0, 12.0, 16.0}) {
    const WindTraversal p = straight_traversal_in_wind(kStart, kEnd, ground_speed_for_airspeed(va, kCourse, w), w,
                                                       WindTraversalConfig{}, quadplane());
    CHECK(p.stf);
    CHECK(p.max_sigma_dot == Approx(0).scale(1));
  }
}

TEST_CASE("entry checks") {
  const auto& m = quadplane();
  WindTraversalConfig cfg;
  CHECK_THROWS_AS(straight_traversal_in_wind(kStart, {0, 500, -20}, 10, WindSpec::make(1, 0), cfg, m),
                  DegenerateSegmentError);
  CHECK_THROWS_AS(straight_traversal_in_wind(kStart, kEnd, 10, WindSpec::make(16.9, 0), cfg, m), WindLimitError);
  cfg.strict_hover_gate = true;
  CHECK_THROWS_AS(straight_traversal_in_wind(kStart, kEnd, 10, WindSpec::make(4, 0), cfg, m), WindLimitError);
  CHECK_NOTHROW(straight_traversal_in_wind(kStart, kEnd, 10, WindSpec::make(2, 0), cfg, m));
}

TEST_CASE("segment too short at the minimum ground speed") {
  WindTraversalConfig cfg;
  cfg.min_v_gc = 1.0;
  CHECK_THROWS_AS(straight_traversal_in_wind({0, 0, 0}, {0, 0.5, 0}, 10, WindSpec{}, cfg, quadplane()),
                  InfeasibleSegmentError);
}

TEST_CASE("cruise ground speed backs off until the segment fits") {
  const WindTraversal p =
      straight_traversal_in_wind({0, 0, 0}, {0, 60, 0}, 12, WindSpec::make(1, deg2rad(-90)), WindTraversalConfig{},
                                 quadplane());
  CHECK(p.v_gc < 12);
  CHECK(p.phases.length() == Approx(60).epsilon(1e-3));
}

TEST_CASE("config validation") {
  WindTraversalConfig c;
  c.backoff = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.dt = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.a_g_plus0 = 0.1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("feasibility band at 4 m/s wind") {
  std::vector<double> ds;
  for (int d = -180; d <= 180; d += 5) ds.push_back(d);
  const std::vector<double> mags{0.1, 0.2, 0.3, 0.4, 0.5};
  const auto band = feasibility_band(4, kStart, kEnd, 12, ds, mags, WindTraversalConfig{}, quadplane());
  REQUIRE(band.size() == ds.size() * mags.size());
  // ordered by (dsigma, min_a_g)
  for (std::size_t i = 1; i < band.size(); ++i) {
    CHECK((band[i - 1].dsigma_deg < band[i].dsigma_deg ||
           (band[i - 1].dsigma_deg == band[i].dsigma_deg && band[i - 1].min_a_g < band[i].min_a_g)));
  }
  std::map<double, std::vector<double>> infeasible;
  for (const auto& c : band) {
    if (c.dsigma_deg == 0) CHECK_FALSE(c.stf);
    if (std::abs(c.dsigma_deg) == 180) CHECK(c.stf);
    if (!c.stf) infeasible[c.min_a_g].push_back(c.dsigma_deg);
  }
  std::size_t prev_width = 0;
  for (double mag : mags) {
    const auto& cells = infeasible[mag];
    CAPTURE(mag);
    CHECK(cells.size() >= prev_width);
    prev_width = cells.size();
    // contiguous and containing 0
    REQUIRE_FALSE(cells.empty());
    CHECK(cells.front() <= 0);
    CHECK(cells.back() >= 0);
    CHECK(cells.size() == static_cast<std::size_t>((cells.back() - cells.front()) / 5 + 1));
  }
}

TEST_CASE("property: STF=true plans satisfy every limit at every sample") {
  const auto& m = quadplane();
  int feasible = 0;
  for (int i = 0; i < 40; ++i) {
    const WindSpec w = WindSpec::make(testing::uniform(0.5, 5), testing::uniform(-kPi, kPi));
    const double va = testing::uniform(6, 14);
    WindTraversal p;
    try {
      p = straight_traversal_in_wind(kStart, kEnd, ground_speed_for_airspeed(va, kCourse, w), w,
                                     WindTraversalConfig{}, m);
    } catch (const EnvelopeError&) {
      continue;  // leaves the power envelope (V^a > V_lim): not a returned plan
    }
    CHECK(p.phases.length() == Approx(500).epsilon(1e-3));
    CHECK(p.series.v_g.front() == 0);
    CHECK(p.series.v_g.back() == 0);
    for (std::size_t k = 1; k < p.series.size(); ++k) CHECK(p.series.energy_cum[k] >= p.series.energy_cum[k - 1]);
    if (!p.stf) continue;
    ++feasible;
    for (std::size_t k = 0; k < p.series.size(); ++k) {
      CHECK(std::abs(p.series.sigma_dot[k]) <= m.sigma_dot_lim() + 1e-9);
      CHECK(p.series.a_a[k] <= m.a_lim_plus() + 1e-9);
      CHECK(p.series.a_a[k] >= m.a_lim_minus() - 1e-9);
      CHECK(p.series.v_a[k] <= m.v_lim());
      CHECK(p.series.v_a[k] > w.speed * std::abs(std::sin(kCourse - w.heading)) - 1e-9);
    }
  }
  CHECK(feasible > 5);
}

TEST_CASE("property: zero wind reproduces the plain spline profile") {
  const auto& m = quadplane();
  for (double v : {3.0, 8.0, 12.0}) {
    const WindTraversal p = straight_traversal_in_wind(kStart, kEnd, v, WindSpec{}, WindTraversalConfig{}, m);
    CHECK(p.stf);
    const SpeedSpline up = build_spline(0, v, p.a_g_plus);
    for (std::size_t k = 0; k < p.series.size() && p.series.t[k] <= up.duration; ++k) {
      CHECK(std::abs(p.series.v_a[k] - up.speed(p.series.t[k])) < 1e-6);
    }
  }
}

TEST_CASE("property: differenced heading rate matches the closed form") {
  const WindSpec w = WindSpec::make(4, 0);
  const AccelSegment s =
      comp_acc_seg(std::sqrt(128.0), 2.5, kCourse, w, WindTraversalConfig{}, quadplane());
  int compared = 0;
  for (std::size_t k = 1; k + 1 < s.t.size(); ++k) {
    if (std::abs(rad2deg(s.sigma_dot[k])) <= 0.1) continue;
    const double analytic = required_heading_rate(s.v_a[k], s.a_a[k], kCourse, w);
    CHECK(s.sigma_dot[k] == Approx(analytic).epsilon(0.05));
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("property: headwind costs more than calm air at the same cruise airspeed") {
  const auto& m = quadplane();
  const WindTraversal calm = straight_traversal_in_wind(kStart, kEnd, 12, WindSpec{}, WindTraversalConfig{}, m);
  for (double ws : {1.0, 2.0, 4.0}) {
    const WindSpec w = WindSpec::make(ws, deg2rad(-90));
    const WindTraversal head = straight_traversal_in_wind(kStart, kEnd, ground_speed_for_airspeed(12, kCourse, w), w,
                                                          WindTraversalConfig{}, m);
    CHECK(head.series.total_energy() > calm.series.total_energy());
  }
}
