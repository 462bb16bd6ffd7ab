#pragma once

#include <vector>

#include "evtol/trajectory.hpp"
#include "evtol/vehicle_model.hpp"
#include "evtol/wind.hpp"

namespace evtol {

struct WindTraversalConfig {
  double dt = 0.01;            // s
  double min_v_gc = 0.01;      // m/s
  double min_a_g = 0.25;       // m/s^2, applied to both signs
  double backoff = 0.9;
  double a_g_plus0 = 2.5;      // initial peak ground acceleration
  double a_g_minus0 = -2.5;    // initial peak ground deceleration
  // Reject winds above the Quad/Hybrid switch speed (hover must stay in Quad mode).
  bool strict_hover_gate = false;
  ModeSchedule schedule = ModeSchedule::Full;

  void validate() const;
};

// One ground-speed spline (hover -> v_gc or v_gc -> hover) flown along a fixed course.
struct AccelSegment {
  std::vector<double> t;
  std::vector<double> v_g;
  std::vector<double> v_a;
  std::vector<double> sigma;
  std::vector<double> a_a;
  std::vector<double> sigma_dot;
  double duration = 0.0;
  double length = 0.0;
  double a_g_max = 0.0;  // value actually used
  int attempts = 0;
  bool constraints_met = false;
};

// Builds the segment, backing a_g_max off until airspeed-rate and heading-rate
// limits hold or the next step would fall below cfg.min_a_g. Sign of a_g_max
// selects acceleration (> 0) or deceleration (< 0).
AccelSegment comp_acc_seg(double v_gc, double a_g_max, double chi, const WindSpec& w,
                          const WindTraversalConfig& cfg, const VehicleModel& m);

struct WindTraversal {
  bool stf = false;
  TrajectoryTimeSeries series;
  PhaseSummary phases;
  double course = 0.0;
  double v_gc = 0.0;
  double v_ac = 0.0;
  double sigma_c = 0.0;
  double crab = 0.0;  // sigma_c - course, rad
  double a_g_plus = 0.0;
  double a_g_minus = 0.0;
  double peak_power = 0.0;
  double max_sigma_dot = 0.0;
  double max_abs_a_a = 0.0;
};

// Cruise ground speed along `course` that gives airspeed v_ac.
double ground_speed_for_airspeed(double v_ac, double course, const WindSpec& w);

// Straight-line traversal between hover waypoints. Throws InfeasibleSegmentError
// if the cruise ground speed falls below cfg.min_v_gc before the segment fits.
WindTraversal straight_traversal_in_wind(const Waypoint& from, const Waypoint& to, double v_gc_star,
                                         const WindSpec& w, const WindTraversalConfig& cfg,
                                         const VehicleModel& m);

struct BandCell {
  double dsigma_deg = 0.0;  // course minus wind heading
  double min_a_g = 0.0;
  bool stf = false;
};

// STF over relative wind angles, ordered by (dsigma, min_a_g).
std::vector<BandCell> feasibility_band(double wind_speed, const Waypoint& from, const Waypoint& to,
                                       double v_ac, const std::vector<double>& dsigma_deg,
                                       const std::vector<double>& min_a_g, const WindTraversalConfig& cfg,
                                       const VehicleModel& m);

}  // namespace evtol
