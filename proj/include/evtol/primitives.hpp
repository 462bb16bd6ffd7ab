#pragma once

#include <optional>
#include <vector>

#include "evtol/spline.hpp"
#include "evtol/trajectory.hpp"
#include "evtol/vehicle_model.hpp"
#include "evtol/wind.hpp"

namespace evtol {

enum class PrimitiveKind { Accel, Decel };

struct PrimitiveConfig {
  double a_g = 2.5;           // peak ground acceleration magnitude, m/s^2
  double min_a_g = 0.25;      // floor when backing a_g off for the airspeed-rate limit
  double chi_dot_max0 = 0.0;  // initial course-rate limit, rad/s; <= 0 means the vehicle heading-rate limit
  double chi_dot_min = deg2rad(1.0);
  double backoff = 0.9;
  double dt = 0.01;
  double eps = 1e-4;          // course fixpoint tolerance, rad
  int max_iterations = 50;
  // When positive, the cruise ground speed is re-solved for this airspeed on
  // every fixpoint pass instead of holding the v_gc argument.
  double cruise_airspeed = 0.0;
  ModeSchedule schedule = ModeSchedule::Full;

  void validate() const;
};

struct ManeuverPrimitive {
  PrimitiveKind kind = PrimitiveKind::Accel;
  SpeedSpline speed_spline;
  std::optional<SpeedSpline> course_spline;  // absent when the course does not change
  double t_g = 0.0;
  double t_chi = 0.0;
  double duration = 0.0;
  double speed_delay = 0.0;  // decel: speed spline starts here
  double a_g = 0.0;          // value actually used
  double chi_dot_max = 0.0;  // value actually used
  double dx = 0.0;           // north displacement, m
  double dy = 0.0;           // east displacement, m
  TrajectoryTimeSeries series;  // t, v_g, chi, v_a, sigma, a_a, sigma_dot, power, mode
};

// Course at a hover waypoint: pointing into the wind, expressed on the side
// (+pi or -pi from the wind heading) the accel turn should start from.
double initial_hover_course(double chi_st, const WindSpec& w);

// Two independent cubics in ground speed and course. The course change is
// chi_to - chi_from without wrapping, so the caller picks the turn direction.
// Backs the course-rate limit off until heading-rate and airspeed-rate limits
// hold; throws PrimitiveInfeasibleError at cfg.chi_dot_min.
ManeuverPrimitive build_primitive(PrimitiveKind kind, double v_gc, double chi_from, double chi_to,
                                  const WindSpec& w, const PrimitiveConfig& cfg, const VehicleModel& m);

struct PrimitivePlan {
  ManeuverPrimitive accel;
  ManeuverPrimitive decel;
  double cruise_course = 0.0;
  Waypoint w_m1;
  Waypoint w_m2;
  double cruise_length = 0.0;
  double v_gc = 0.0;
  double v_ac = 0.0;
  double sigma_c = 0.0;
  int iterations = 0;
  std::vector<double> residuals;  // |delta chi| per iteration
  PhaseSummary phases;
  TrajectoryTimeSeries series;
  double total_energy() const { return phases.energy(); }
  double max_sigma_dot = 0.0;
};

// Cruise-course fixpoint: rebuild both primitives for the current cruise course
// until the course between their end points changes by less than cfg.eps.
// Throws FixpointError on non-convergence and InfeasibleSegmentError when the
// primitives leave no forward cruise leg.
PrimitivePlan plan_with_primitives(const Waypoint& from, const Waypoint& to, double v_gc, const WindSpec& w,
                                   const PrimitiveConfig& cfg, const VehicleModel& m);

}  // namespace evtol
