#include "evtol/wind_planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evtol/errors.hpp"
#include "evtol/spline.hpp"

namespace evtol {

namespace {

constexpr double kLimitTol = 1e-9;

TrajectoryTimeSeries to_series(const AccelSegment& seg, double chi, const WindTraversalConfig& cfg,
                               const VehicleModel& m) {
  TrajectoryTimeSeries ts;
  ts.t = seg.t;
  ts.v_g = seg.v_g;
  ts.v_a = seg.v_a;
  ts.sigma = seg.sigma;
  ts.chi.assign(seg.t.size(), chi);
  ts.a_a = seg.a_a;
  ts.sigma_dot = seg.sigma_dot;
  ts.power = m.power_series(seg.v_a, seg.a_a, cfg.schedule);
  for (double v : seg.v_a) ts.mode.push_back(m.flight_mode(v, cfg.schedule));
  return ts;
}

}  // namespace

void WindTraversalConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("planner.dt: must be positive");
  if (!(min_v_gc > 0.0)) throw ConfigError("planner.min_v_gc: must be positive");
  if (!(min_a_g > 0.0)) throw ConfigError("planner.min_a_g: must be positive");
  if (!(backoff > 0.0 && backoff < 1.0)) throw ConfigError("planner.backoff: must lie in (0, 1)");
  if (!(a_g_plus0 >= min_a_g)) throw ConfigError("planner.a_g_plus0: must be at least min_a_g");
  if (!(-a_g_minus0 >= min_a_g)) throw ConfigError("planner.a_g_minus0: magnitude must be at least min_a_g");
}

AccelSegment comp_acc_seg(double v_gc, double a_g_max, double chi, const WindSpec& w,
                          const WindTraversalConfig& cfg, const VehicleModel& m) {
  if (!(v_gc > 0.0)) throw InvalidSplineError("cruise ground speed must be positive");
  if (std::abs(a_g_max) < cfg.min_a_g) {
    throw InvalidSplineError("|a_g_max| below the configured minimum");
  }
  const bool accel = a_g_max > 0.0;
  AccelSegment seg;
  double a = a_g_max;
  while (true) {
    ++seg.attempts;
    const SpeedSpline s = accel ? build_spline(0.0, v_gc, a) : build_spline(v_gc, 0.0, a);
    const SampledSpline smp = sample_spline(s, cfg.dt);
    const std::size_t n = smp.t.size();
    seg.t = smp.t;
    seg.v_g = smp.v;
    seg.v_a.resize(n);
    seg.sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const AirState air = air_from_ground(GroundState{smp.v[i], chi}, w, chi);
      seg.v_a[i] = air.airspeed;
      seg.sigma[i] = air.heading;
    }
    seg.a_a = differentiate(seg.t, seg.v_a);
    seg.sigma_dot = differentiate_angle(seg.t, seg.sigma);
    seg.duration = s.duration;
    seg.length = s.distance();
    seg.a_g_max = a;

    seg.constraints_met = true;
    for (std::size_t i = 0; i < n && seg.constraints_met; ++i) {
      const bool a_ok = seg.a_a[i] <= m.a_lim_plus() + kLimitTol && seg.a_a[i] >= m.a_lim_minus() - kLimitTol;
      const bool s_ok = std::abs(seg.sigma_dot[i]) <= m.sigma_dot_lim() + kLimitTol;
      seg.constraints_met = a_ok && s_ok;
    }
    if (seg.constraints_met) return seg;
    const double next = a * cfg.backoff;
    if (std::abs(next) < cfg.min_a_g) return seg;
    a = next;
  }
}

double ground_speed_for_airspeed(double v_ac, double course, const WindSpec& w) {
  return cruise_ground_speed(v_ac, course, w);
}

WindTraversal straight_traversal_in_wind(const Waypoint& from, const Waypoint& to, double v_gc_star,
                                         const WindSpec& w, const WindTraversalConfig& cfg,
                                         const VehicleModel& m) {
  cfg.validate();
  if (std::abs(from.z - to.z) > 1e-6) {
    throw DegenerateSegmentError("waypoints must share the same altitude");
  }
  if (w.speed >= m.v_lim()) throw WindLimitError("wind speed reaches the airspeed limit");
  if (cfg.strict_hover_gate && w.speed > m.v_qh()) {
    throw WindLimitError("wind speed " + std::to_string(w.speed) + " m/s exceeds the Quad/Hybrid switch speed");
  }
  if (!(v_gc_star > 0.0)) throw PlannerError("target cruise ground speed must be positive");

  const SegmentCourse sc = straightline_course(from, to);
  const double chi = sc.course;

  double v_gc = v_gc_star;
  AccelSegment acc, dec;
  double lc = 0.0;
  while (true) {
    acc = comp_acc_seg(v_gc, cfg.a_g_plus0, chi, w, cfg, m);
    dec = comp_acc_seg(v_gc, cfg.a_g_minus0, chi, w, cfg, m);
    lc = sc.length - acc.length - dec.length;
    if (lc >= -1e-9 * sc.length) break;
    v_gc *= cfg.backoff;
    if (v_gc < cfg.min_v_gc) {
      throw InfeasibleSegmentError("segment of " + std::to_string(sc.length) +
                                   " m too short at the minimum cruise ground speed");
    }
  }
  lc = std::max(lc, 0.0);

  WindTraversal out;
  out.course = chi;
  out.v_gc = v_gc;
  const AirState cruise_air = air_from_ground(GroundState{v_gc, chi}, w, chi);
  out.v_ac = cruise_air.airspeed;
  out.sigma_c = cruise_air.heading;
  out.crab = normalize_angle(cruise_air.heading - chi);
  out.a_g_plus = acc.a_g_max;
  out.a_g_minus = dec.a_g_max;

  const TrajectoryTimeSeries acc_ts = to_series(acc, chi, cfg, m);
  const TrajectoryTimeSeries dec_ts = to_series(dec, chi, cfg, m);
  const double t_c = lc / v_gc;
  const double p_c = m.cruise_power(out.v_ac, cfg.schedule);

  out.series = acc_ts;
  if (t_c > 0.0) {
    const SampleGrid g = sample_grid(t_c, cfg.dt);
    TrajectoryTimeSeries cruise;
    const FlightMode mode = m.flight_mode(out.v_ac, cfg.schedule);
    for (std::size_t i = 0; i < g.size(); ++i) {
      cruise.t.push_back(i == g.intervals ? t_c : g.time(i));
      cruise.v_g.push_back(v_gc);
      cruise.v_a.push_back(out.v_ac);
      cruise.sigma.push_back(out.sigma_c);
      cruise.chi.push_back(chi);
      cruise.a_a.push_back(0.0);
      cruise.sigma_dot.push_back(0.0);
      cruise.power.push_back(p_c);
      cruise.mode.push_back(mode);
    }
    out.series.append(cruise);
  }
  out.series.append(dec_ts);
  out.series.finish(from.x, from.y);

  out.phases.t_plus = acc.duration;
  out.phases.t_cruise = t_c;
  out.phases.t_minus = dec.duration;
  out.phases.l_plus = acc.length;
  out.phases.l_cruise = lc;
  out.phases.l_minus = dec.length;
  out.phases.e_plus = trapezoid(acc_ts.t, acc_ts.power);
  out.phases.e_cruise = p_c * t_c;
  out.phases.e_minus = trapezoid(dec_ts.t, dec_ts.power);

  out.stf = acc.constraints_met && dec.constraints_met;
  out.peak_power = out.series.peak_power();
  out.max_sigma_dot = out.series.max_abs_sigma_dot();
  for (double a : out.series.a_a) out.max_abs_a_a = std::max(out.max_abs_a_a, std::abs(a));
  return out;
}

std::vector<BandCell> feasibility_band(double wind_speed, const Waypoint& from, const Waypoint& to,
                                       double v_ac, const std::vector<double>& dsigma_deg,
                                       const std::vector<double>& min_a_g, const WindTraversalConfig& cfg,
                                       const VehicleModel& m) {
  const double chi = straightline_course(from, to).course;
  std::vector<BandCell> out;
  out.reserve(dsigma_deg.size() * min_a_g.size());
  for (double ds : dsigma_deg) {
    const WindSpec w = WindSpec::make(wind_speed, chi - deg2rad(ds));
    for (double mag : min_a_g) {
      WindTraversalConfig c = cfg;
      c.min_a_g = mag;
      bool stf = false;
      try {
        stf = straight_traversal_in_wind(from, to, ground_speed_for_airspeed(v_ac, chi, w), w, c, m).stf;
      } catch (const InfeasibleSegmentError&) {
        stf = false;
      }
      out.push_back(BandCell{ds, mag, stf});
    }
  }
  return out;
}

}  // namespace evtol
