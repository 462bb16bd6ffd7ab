#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace evtol {

class VehicleModel;

// v(t) = c0 + c1 t + c2 t^2 + c3 t^3 on [0, duration], zero slope at both ends,
// peak slope a_max at the midpoint.
struct SpeedSpline {
  double v_start = 0.0;
  double v_end = 0.0;
  double duration = 0.0;
  double a_max = 0.0;
  std::array<double, 4> coeffs{};

  // Both clamp t to [0, duration].
  double speed(double t) const;
  double accel(double t) const;
  // Integral of v over [0, t].
  double distance_at(double t) const;
  double distance() const { return 0.5 * (v_start + v_end) * duration; }
};

// Throws InvalidSplineError when a_max is zero or its sign disagrees with
// v_end - v_start.
SpeedSpline build_spline(double v_start, double v_end, double a_max);

struct ModeSwitchTimes {
  std::optional<double> t_qh;
  std::optional<double> t_hp;
  std::optional<double> a_qh;
  std::optional<double> a_hp;
};

// Times where the spline crosses the Quad/Hybrid and Hybrid/Plane switch speeds.
ModeSwitchTimes mode_switch_times(const SpeedSpline& s, const VehicleModel& m);
// Bisection on the monotone spline; nullopt if `v` is not spanned.
std::optional<double> time_at_speed(const SpeedSpline& s, double v, double tol = 1e-9);

// Distance flown on a hover <-> v_c spline with peak acceleration a (either sign).
double accel_distance(double v_c, double a);

double v_max_achievable(double length, double a_plus, double a_minus);

// Negative results mean v_c is not reachable within `length`.
double cruise_length(double length, double v_c, double a_plus, double a_minus);

struct SegmentGeometry {
  double l_plus = 0.0;
  double l_minus = 0.0;
  double l_cruise = 0.0;
  double v_max_achievable = 0.0;
};

SegmentGeometry segment_geometry(double length, double v_c, double a_plus, double a_minus);

// Uniform grid of ceil(duration / dt) intervals that lands exactly on `duration`.
struct SampleGrid {
  std::size_t intervals = 0;
  double step = 0.0;
  double time(std::size_t i) const { return static_cast<double>(i) * step; }
  std::size_t size() const { return intervals + 1; }
};

SampleGrid sample_grid(double duration, double dt);

struct SampledSpline {
  SampleGrid grid;
  std::vector<double> t;
  std::vector<double> v;
  std::vector<double> a;
};

SampledSpline sample_spline(const SpeedSpline& s, double dt);

}  // namespace evtol
