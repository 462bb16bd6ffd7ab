#include "evtol/spline.hpp"

#include <algorithm>
#include <cmath>

#include "evtol/errors.hpp"
#include "evtol/vehicle_model.hpp"

namespace evtol {

double SpeedSpline::speed(double t) const {
  t = std::clamp(t, 0.0, duration);
  const auto& c = coeffs;
  return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
}

double SpeedSpline::accel(double t) const {
  t = std::clamp(t, 0.0, duration);
  const auto& c = coeffs;
  return c[1] + t * (2.0 * c[2] + t * 3.0 * c[3]);
}

double SpeedSpline::distance_at(double t) const {
  t = std::clamp(t, 0.0, duration);
  const auto& c = coeffs;
  return t * (c[0] + t * (c[1] / 2.0 + t * (c[2] / 3.0 + t * c[3] / 4.0)));
}

SpeedSpline build_spline(double v_start, double v_end, double a_max) {
  const double dv = v_end - v_start;
  if (a_max == 0.0 || !std::isfinite(a_max)) throw InvalidSplineError("a_max must be non-zero");
  if (dv == 0.0) throw InvalidSplineError("spline endpoints are equal");
  if ((dv > 0.0) != (a_max > 0.0)) {
    throw InvalidSplineError("sign of a_max does not match the speed change");
  }
  SpeedSpline s;
  s.v_start = v_start;
  s.v_end = v_end;
  s.a_max = a_max;
  s.duration = 1.5 * dv / a_max;
  const double t = s.duration;
  s.coeffs = {v_start, 0.0, 3.0 * dv / (t * t), -2.0 * dv / (t * t * t)};
  return s;
}

std::optional<double> time_at_speed(const SpeedSpline& s, double v, double tol) {
  const double lo_v = std::min(s.v_start, s.v_end);
  const double hi_v = std::max(s.v_start, s.v_end);
  if (v < lo_v || v > hi_v) return std::nullopt;
  if (v == s.v_start) return 0.0;
  if (v == s.v_end) return s.duration;
  const bool rising = s.v_end > s.v_start;
  double lo = 0.0;
  double hi = s.duration;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((s.speed(mid) < v) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ModeSwitchTimes mode_switch_times(const SpeedSpline& s, const VehicleModel& m) {
  ModeSwitchTimes out;
  out.t_qh = time_at_speed(s, m.v_qh());
  out.t_hp = time_at_speed(s, m.v_hp());
  if (out.t_qh) out.a_qh = s.accel(*out.t_qh);
  if (out.t_hp) out.a_hp = s.accel(*out.t_hp);
  return out;
}

double accel_distance(double v_c, double a) { return 0.75 * v_c * v_c / std::abs(a); }

namespace {
void check_limits(double a_plus, double a_minus) {
  if (!(a_plus > 0.0) || !(a_minus < 0.0)) {
    throw InvalidSplineError("need a_plus > 0 > a_minus");
  }
}
}  // namespace

double v_max_achievable(double length, double a_plus, double a_minus) {
  check_limits(a_plus, a_minus);
  if (!(length > 0.0)) throw DegenerateSegmentError("segment length must be positive");
  return std::sqrt((4.0 * length / 3.0) / (1.0 / a_plus - 1.0 / a_minus));
}

double cruise_length(double length, double v_c, double a_plus, double a_minus) {
  check_limits(a_plus, a_minus);
  return length - 0.75 * v_c * v_c * (1.0 / a_plus - 1.0 / a_minus);
}

SegmentGeometry segment_geometry(double length, double v_c, double a_plus, double a_minus) {
  SegmentGeometry g;
  g.l_plus = accel_distance(v_c, a_plus);
  g.l_minus = accel_distance(v_c, a_minus);
  g.l_cruise = cruise_length(length, v_c, a_plus, a_minus);
  g.v_max_achievable = v_max_achievable(length, a_plus, a_minus);
  return g;
}

SampleGrid sample_grid(double duration, double dt) {
  if (!(dt > 0.0)) throw PlannerError("dt must be positive");
  if (!(duration >= 0.0)) throw PlannerError("duration must be non-negative");
  if (duration == 0.0) return SampleGrid{0, dt};
  // The small slack keeps durations that are whole multiples of dt from
  // picking up an extra interval through rounding.
  const auto n = static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
  const std::size_t intervals = std::max<std::size_t>(n, 1);
  return SampleGrid{intervals, duration / static_cast<double>(intervals)};
}

SampledSpline sample_spline(const SpeedSpline& s, double dt) {
  SampledSpline out;
  out.grid = sample_grid(s.duration, dt);
  const std::size_t n = out.grid.size();
  out.t.resize(n);
  out.v.resize(n);
  out.a.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i == out.grid.intervals ? s.duration : out.grid.time(i);
    out.t[i] = t;
    out.v[i] = i == out.grid.intervals ? s.v_end : s.speed(t);
    out.a[i] = i == out.grid.intervals ? 0.0 : s.accel(t);
  }
  return out;
}

}  // namespace evtol
