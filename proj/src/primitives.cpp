#include "evtol/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evtol/errors.hpp"

namespace evtol {

namespace {

constexpr double kLimitTol = 1e-9;

struct LimitCheck {
  bool heading_rate = true;
  bool airspeed_rate = true;
  bool airspeed = true;
  bool ok() const { return heading_rate && airspeed_rate && airspeed; }
};

LimitCheck check_limits(const TrajectoryTimeSeries& s, const VehicleModel& m) {
  LimitCheck c;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s.sigma_dot[i]) > m.sigma_dot_lim() + kLimitTol) c.heading_rate = false;
    if (s.a_a[i] > m.a_lim_plus() + kLimitTol || s.a_a[i] < m.a_lim_minus() - kLimitTol) c.airspeed_rate = false;
    if (s.v_a[i] > m.v_lim()) c.airspeed = false;
  }
  return c;
}

}  // namespace

void PrimitiveConfig::validate() const {
  if (!(a_g > 0.0)) throw ConfigError("primitive.a_g: must be positive");
  if (!(min_a_g > 0.0 && min_a_g <= a_g)) throw ConfigError("primitive.min_a_g: must lie in (0, a_g]");
  if (!(chi_dot_min > 0.0)) throw ConfigError("primitive.chi_dot_min: must be positive");
  if (!(backoff > 0.0 && backoff < 1.0)) throw ConfigError("primitive.backoff: must lie in (0, 1)");
  if (!(dt > 0.0)) throw ConfigError("primitive.dt: must be positive");
  if (!(eps > 0.0)) throw ConfigError("primitive.eps: must be positive");
  if (max_iterations < 1) throw ConfigError("primitive.max_iterations: must be at least 1");
}

double initial_hover_course(double chi_st, const WindSpec& w) {
  if (!(w.speed > 0.0)) throw PlannerError("hover course is undefined without wind");
  const double delta = normalize_angle(chi_st - w.heading);
  return normalize_angle(delta > 0.0 ? w.heading + kPi : w.heading - kPi);
}

ManeuverPrimitive build_primitive(PrimitiveKind kind, double v_gc, double chi_from, double chi_to,
                                  const WindSpec& w, const PrimitiveConfig& cfg, const VehicleModel& m) {
  cfg.validate();
  if (!(v_gc > 0.0)) throw InvalidSplineError("cruise ground speed must be positive");
  const bool accel = kind == PrimitiveKind::Accel;
  const double dchi = chi_to - chi_from;
  const double hover_heading = w.speed > 0.0 ? w.heading + kPi : (accel ? chi_from : chi_to);

  ManeuverPrimitive p;
  p.kind = kind;
  double a_g = cfg.a_g;
  double chi_dot = cfg.chi_dot_max0 > 0.0 ? cfg.chi_dot_max0 : m.sigma_dot_lim();

  while (true) {
    p.speed_spline = accel ? build_spline(0.0, v_gc, a_g) : build_spline(v_gc, 0.0, -a_g);
    p.t_g = p.speed_spline.duration;
    p.a_g = a_g;
    p.chi_dot_max = chi_dot;
    if (dchi != 0.0) {
      p.course_spline = build_spline(chi_from, chi_to, std::copysign(chi_dot, dchi));
      p.t_chi = p.course_spline->duration;
    } else {
      p.course_spline.reset();
      p.t_chi = 0.0;
    }
    p.duration = std::max(p.t_g, p.t_chi);
    p.speed_delay = accel ? 0.0 : p.duration - p.t_g;

    const SampleGrid g = sample_grid(p.duration, cfg.dt);
    TrajectoryTimeSeries s;
    s.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const bool last = i == g.intervals;
      const double t = last ? p.duration : g.time(i);
      double v = last ? p.speed_spline.v_end : p.speed_spline.speed(t - p.speed_delay);
      double chi = p.course_spline ? (last ? chi_to : p.course_spline->speed(t)) : chi_from;
      if (i == 0) v = p.speed_spline.v_start;
      const AirState air = air_from_ground(GroundState{v, chi}, w, hover_heading);
      s.t.push_back(t);
      s.v_g.push_back(v);
      s.chi.push_back(chi);
      s.v_a.push_back(air.airspeed);
      s.sigma.push_back(air.heading);
    }
    s.a_a = differentiate(s.t, s.v_a);
    s.sigma_dot = differentiate_angle(s.t, s.sigma);
    p.series = std::move(s);
    const LimitCheck c = check_limits(p.series, m);
    if (c.ok()) break;
    // Ground acceleration is the only lever on the airspeed rate; the course
    // rate handles everything else.
    if (!c.airspeed_rate && a_g * cfg.backoff >= cfg.min_a_g) {
      a_g *= cfg.backoff;
      continue;
    }
    if (dchi == 0.0) {
      throw PrimitiveInfeasibleError("limits violated with no course change to slow down");
    }
    chi_dot *= cfg.backoff;
    if (chi_dot < cfg.chi_dot_min) {
      throw PrimitiveInfeasibleError("course-rate limit fell below " + std::to_string(rad2deg(cfg.chi_dot_min)) +
                                     " deg/s without meeting vehicle limits");
    }
  }

  TrajectoryTimeSeries& s = p.series;
  s.power = m.power_series(s.v_a, s.a_a, cfg.schedule);
  for (double v : s.v_a) s.mode.push_back(m.flight_mode(v, cfg.schedule));
  s.finish(0.0, 0.0);
  p.dx = s.x.back();
  p.dy = s.y.back();
  return p;
}

PrimitivePlan plan_with_primitives(const Waypoint& from, const Waypoint& to, double v_gc, const WindSpec& w,
                                   const PrimitiveConfig& cfg, const VehicleModel& m) {
  cfg.validate();
  if (!(w.speed > 0.0)) throw PlannerError("maneuver primitives need wind; use the straight-line planner");
  if (std::abs(from.z - to.z) > 1e-6) throw DegenerateSegmentError("waypoints must share the same altitude");
  const SegmentCourse sc = straightline_course(from, to);
  const double chi_st = sc.course;
  const double delta = normalize_angle(chi_st - w.heading);
  // Unwrapped hover courses: start and end on the side of the wind the course lies on.
  const double accel_from = w.heading + (delta > 0.0 ? kPi : -kPi);
  const double decel_to = w.heading + (delta >= 0.0 ? kPi : -kPi);
  const double ux = std::cos(chi_st);
  const double uy = std::sin(chi_st);

  PrimitivePlan plan;
  double chi_c = chi_st;
  auto cruise_speed = [&](double course) {
    return cfg.cruise_airspeed > 0.0 ? cruise_ground_speed(cfg.cruise_airspeed, course, w) : v_gc;
  };
  // Each pass starts from the limits the previous pass settled on. Without the
  // ratchet the backoff can flip between two limit pairs and the course cycles.
  PrimitiveConfig cfg_acc = cfg;
  PrimitiveConfig cfg_dec = cfg;
  bool converged = false;
  double residual = 0.0;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    const double target = w.heading + delta + normalize_angle(chi_c - chi_st);
    plan.v_gc = cruise_speed(chi_c);
    plan.accel = build_primitive(PrimitiveKind::Accel, plan.v_gc, accel_from, target, w, cfg_acc, m);
    plan.decel = build_primitive(PrimitiveKind::Decel, plan.v_gc, target, decel_to, w, cfg_dec, m);
    cfg_acc.a_g = plan.accel.a_g;
    cfg_acc.chi_dot_max0 = plan.accel.chi_dot_max;
    cfg_dec.a_g = plan.decel.a_g;
    cfg_dec.chi_dot_max0 = plan.decel.chi_dot_max;
    plan.w_m1 = Waypoint{from.x + plan.accel.dx, from.y + plan.accel.dy, from.z};
    plan.w_m2 = Waypoint{to.x - plan.decel.dx, to.y - plan.decel.dy, to.z};
    const double ox = plan.w_m2.x - plan.w_m1.x;
    const double oy = plan.w_m2.y - plan.w_m1.y;
    if (ox * ux + oy * uy <= 0.0) {
      throw InfeasibleSegmentError("segment too short for the maneuver primitives");
    }
    const double chi_m = std::atan2(oy, ox);
    residual = std::abs(normalize_angle(chi_m - chi_c));
    plan.residuals.push_back(residual);
    plan.iterations = iter;
    chi_c = chi_m;
    if (residual < cfg.eps) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw FixpointError("cruise course did not converge in " + std::to_string(cfg.max_iterations) + " iterations",
                        residual);
  }

  plan.cruise_course = chi_c;
  // The primitives were built for the previous course; the gap is below eps.
  plan.v_gc = cruise_speed(chi_c);
  plan.cruise_length = std::hypot(plan.w_m2.x - plan.w_m1.x, plan.w_m2.y - plan.w_m1.y);
  const AirState air = air_from_ground(GroundState{plan.v_gc, chi_c}, w, chi_c);
  plan.v_ac = air.airspeed;
  plan.sigma_c = air.heading;

  const double t_c = plan.cruise_length / plan.v_gc;
  const double p_c = m.cruise_power(plan.v_ac, cfg.schedule);
  plan.series = plan.accel.series;
  if (t_c > 0.0) {
    const SampleGrid g = sample_grid(t_c, cfg.dt);
    TrajectoryTimeSeries cruise;
    const FlightMode mode = m.flight_mode(plan.v_ac, cfg.schedule);
    for (std::size_t i = 0; i < g.size(); ++i) {
      cruise.t.push_back(i == g.intervals ? t_c : g.time(i));
      cruise.v_g.push_back(plan.v_gc);
      cruise.v_a.push_back(plan.v_ac);
      cruise.sigma.push_back(plan.sigma_c);
      cruise.chi.push_back(chi_c);
      cruise.a_a.push_back(0.0);
      cruise.sigma_dot.push_back(0.0);
      cruise.power.push_back(p_c);
      cruise.mode.push_back(mode);
    }
    plan.series.append(cruise);
  }
  plan.series.append(plan.decel.series);
  plan.series.finish(from.x, from.y);

  const auto& a = plan.accel.series;
  const auto& d = plan.decel.series;
  plan.phases.t_plus = plan.accel.duration;
  plan.phases.t_cruise = t_c;
  plan.phases.t_minus = plan.decel.duration;
  plan.phases.l_plus = trapezoid(a.t, a.v_g);
  plan.phases.l_cruise = plan.cruise_length;
  plan.phases.l_minus = trapezoid(d.t, d.v_g);
  plan.phases.e_plus = a.total_energy();
  plan.phases.e_cruise = p_c * t_c;
  plan.phases.e_minus = d.total_energy();
  plan.max_sigma_dot = plan.series.max_abs_sigma_dot();
  return plan;
}

}  // namespace evtol
