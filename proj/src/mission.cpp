#include "evtol/mission.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "evtol/errors.hpp"
#include "evtol/spline.hpp"

namespace evtol {

using nlohmann::json;

namespace {

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path + ": must be finite");
  return v;
}

double required_number(const json& obj, const char* key, const std::string& path) {
  const json* v = find(obj, key);
  if (v == nullptr) throw ConfigError(path + "." + key + ": missing");
  return number_at(*v, path + "." + key);
}

void optional_number(const json& obj, const char* key, const std::string& path, double& out) {
  if (const json* v = find(obj, key)) out = number_at(*v, path + "." + key);
}

void optional_number(const json& obj, const char* key, const std::string& path, std::optional<double>& out) {
  if (const json* v = find(obj, key); v != nullptr && !v->is_null()) out = number_at(*v, path + "." + key);
}

void positive(double v, const std::string& path) {
  if (!(v > 0.0)) throw ConfigError(path + ": must be positive");
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path + ": expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_at(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Waypoint waypoint(const json& j, const std::string& path) {
  expect_object(j, path);
  return Waypoint{required_number(j, "x", path), required_number(j, "y", path), required_number(j, "z", path)};
}

PlannerOptions planner_options(const json& j, const std::string& path) {
  expect_object(j, path);
  PlannerOptions p;
  optional_number(j, "dt", path, p.dt);
  optional_number(j, "min_v_gc", path, p.min_v_gc);
  optional_number(j, "min_a_g", path, p.min_a_g);
  optional_number(j, "backoff", path, p.backoff);
  optional_number(j, "eps", path, p.eps);
  optional_number(j, "a_g_max", path, p.a_g_max);
  optional_number(j, "cruise_airspeed", path, p.cruise_airspeed);
  optional_number(j, "a_lim_plus", path, p.a_lim_plus);
  optional_number(j, "a_lim_minus", path, p.a_lim_minus);
  if (const json* v = find(j, "max_iterations")) {
    if (!v->is_number_integer() || v->get<int>() < 1) {
      throw ConfigError(path + ".max_iterations: expected a positive integer");
    }
    p.max_iterations = v->get<int>();
  }
  if (const json* v = find(j, "strict_hover_gate")) {
    if (!v->is_boolean()) throw ConfigError(path + ".strict_hover_gate: expected a boolean");
    p.strict_hover_gate = v->get<bool>();
  }

  positive(p.dt, path + ".dt");
  positive(p.min_v_gc, path + ".min_v_gc");
  positive(p.min_a_g, path + ".min_a_g");
  positive(p.eps, path + ".eps");
  if (!(p.backoff > 0.0 && p.backoff < 1.0)) throw ConfigError(path + ".backoff: must lie in (0, 1)");
  if (!(p.a_g_max >= p.min_a_g)) throw ConfigError(path + ".a_g_max: must be at least min_a_g");
  if (p.cruise_airspeed) positive(*p.cruise_airspeed, path + ".cruise_airspeed");
  if (p.a_lim_plus) positive(*p.a_lim_plus, path + ".a_lim_plus");
  if (p.a_lim_minus && !(*p.a_lim_minus < 0.0)) throw ConfigError(path + ".a_lim_minus: must be negative");
  return p;
}

SweepOptions sweep_options(const json& j, const std::string& path) {
  expect_object(j, path);
  SweepOptions s;
  if (const json* v = find(j, "lengths")) s.lengths = number_list(*v, path + ".lengths");
  if (const json* v = find(j, "accels")) s.accels = number_list(*v, path + ".accels");
  if (const json* v = find(j, "min_a_g")) s.min_a_g = number_list(*v, path + ".min_a_g");
  optional_number(j, "v_step", path, s.v_step);
  optional_number(j, "a_step", path, s.a_step);
  optional_number(j, "dsigma_step_deg", path, s.dsigma_step_deg);
  optional_number(j, "quad_only_airspeed", path, s.quad_only_airspeed);
  for (std::size_t i = 0; i < s.lengths.size(); ++i) positive(s.lengths[i], path + ".lengths[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < s.accels.size(); ++i) positive(s.accels[i], path + ".accels[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < s.min_a_g.size(); ++i) positive(s.min_a_g[i], path + ".min_a_g[" + std::to_string(i) + "]");
  positive(s.v_step, path + ".v_step");
  positive(s.a_step, path + ".a_step");
  positive(s.dsigma_step_deg, path + ".dsigma_step_deg");
  positive(s.quad_only_airspeed, path + ".quad_only_airspeed");
  return s;
}

// lo, lo + step, ... up to hi inclusive (within a small slack), without accumulating error.
std::vector<double> lattice(double lo, double hi, double step) {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

// Trapezoid over the samples that fall inside [t0, t1]; phase joins are sample points.
double slice_energy(const TrajectoryTimeSeries& s, double t0, double t1) {
  double e = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s.t[i - 1] >= t0 - 1e-9 && s.t[i] <= t1 + 1e-9) e += 0.5 * (s.power[i] + s.power[i - 1]) * (s.t[i] - s.t[i - 1]);
  }
  return e;
}

double target_airspeed(const MissionConfig& cfg, const VehicleModel& m) {
  if (cfg.planner.cruise_airspeed) return *cfg.planner.cruise_airspeed;
  return optimize(cfg.traversal_query(m), m).v_c;
}

void fill_from_straight(PlanReport& r, const WindTraversal& wt) {
  r.phases = wt.phases;
  r.v_gc = wt.v_gc;
  r.v_ac = wt.v_ac;
  r.sigma_c = wt.sigma_c;
  r.crab = wt.crab;
  r.stf = wt.stf;
  r.peak_power = wt.peak_power;
  r.total_energy = wt.series.total_energy();
  r.max_sigma_dot = wt.max_sigma_dot;
}

json phase_json(double t, double l, double e) {
  return json{{"duration_s", t}, {"length_m", l}, {"energy_j", e}};
}

json waypoint_json(const Waypoint& w) { return json{{"x", w.x}, {"y", w.y}, {"z", w.z}}; }

}  // namespace

MissionConfig MissionConfig::parse(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  expect_object(root, "config");

  MissionConfig cfg;
  const json* wps = find(root, "waypoints");
  if (wps == nullptr) throw ConfigError("config.waypoints: missing");
  if (!wps->is_array() || wps->size() != 2) throw ConfigError("config.waypoints: expected exactly two waypoints");
  cfg.from = waypoint((*wps)[0], "config.waypoints[0]");
  cfg.to = waypoint((*wps)[1], "config.waypoints[1]");
  if (std::abs(cfg.from.z - cfg.to.z) > 1e-6) {
    throw ConfigError("config.waypoints[1].z: must equal waypoints[0].z (level segments only)");
  }
  if (std::hypot(cfg.to.x - cfg.from.x, cfg.to.y - cfg.from.y) < 1e-9) {
    throw ConfigError("config.waypoints: the two waypoints coincide");
  }

  if (const json* w = find(root, "wind")) {
    expect_object(*w, "config.wind");
    const double speed = required_number(*w, "speed", "config.wind");
    const double heading = required_number(*w, "heading_deg", "config.wind");
    if (speed < 0.0) throw ConfigError("config.wind.speed: must be non-negative");
    cfg.wind = WindSpec::make(speed, deg2rad(heading));
  }

  if (const json* v = find(root, "vehicle")) {
    if (!v->is_string()) throw ConfigError("config.vehicle: expected a file path");
    std::filesystem::path p = v->get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    cfg.vehicle_path = p;
  }
  if (const json* p = find(root, "planner")) cfg.planner = planner_options(*p, "config.planner");
  if (const json* s = find(root, "sweep")) cfg.sweep = sweep_options(*s, "config.sweep");
  return cfg;
}

MissionConfig MissionConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

VehicleModel MissionConfig::load_vehicle() const {
  return vehicle_path ? VehicleModel::load(*vehicle_path) : VehicleModel::load_default();
}

WindTraversalConfig MissionConfig::wind_config(ModeSchedule schedule) const {
  WindTraversalConfig c;
  c.dt = planner.dt;
  c.min_v_gc = planner.min_v_gc;
  c.min_a_g = planner.min_a_g;
  c.backoff = planner.backoff;
  c.a_g_plus0 = planner.a_g_max;
  c.a_g_minus0 = -planner.a_g_max;
  c.strict_hover_gate = planner.strict_hover_gate;
  c.schedule = schedule;
  return c;
}

PrimitiveConfig MissionConfig::primitive_config(double cruise_airspeed) const {
  PrimitiveConfig c;
  c.a_g = planner.a_g_max;
  c.min_a_g = planner.min_a_g;
  c.backoff = planner.backoff;
  c.dt = planner.dt;
  c.eps = planner.eps;
  c.max_iterations = planner.max_iterations;
  c.cruise_airspeed = cruise_airspeed;
  return c;
}

TraversalQuery MissionConfig::traversal_query(const VehicleModel& m) const {
  TraversalQuery q;
  q.length = straightline_course(from, to).length;
  q.a_lim_plus = planner.a_lim_plus.value_or(m.a_lim_plus());
  q.a_lim_minus = planner.a_lim_minus.value_or(m.a_lim_minus());
  q.dt = planner.dt;
  return q;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Straight:
      return "straight";
    case Verdict::Primitive:
      return "primitive";
    case Verdict::Infeasible:
      return "infeasible";
  }
  return "?";
}

PlanResult plan(const MissionConfig& cfg, const VehicleModel& m) {
  const SegmentCourse sc = straightline_course(cfg.from, cfg.to);
  PlanResult out;
  PlanReport& r = out.report;
  r.course = sc.course;

  if (cfg.wind.speed == 0.0) {
    const OptimalTraversal opt = optimize(cfg.traversal_query(m), m);
    out.series = render_nowind(opt, sc.course, cfg.planner.dt, m, cfg.from.x, cfg.from.y);
    r.verdict = Verdict::Straight;
    r.method = "no_wind_optimizer";
    r.optimum = opt;
    r.v_gc = r.v_ac = opt.v_c;
    r.sigma_c = sc.course;
    r.phases.t_plus = build_spline(0.0, opt.v_c, opt.a_plus).duration;
    r.phases.t_minus = build_spline(opt.v_c, 0.0, opt.a_minus).duration;
    r.phases.t_cruise = opt.l_cruise / opt.v_c;
    r.phases.l_plus = accel_distance(opt.v_c, opt.a_plus);
    r.phases.l_cruise = opt.l_cruise;
    r.phases.l_minus = accel_distance(opt.v_c, opt.a_minus);
    const double t1 = r.phases.t_plus;
    const double t2 = t1 + r.phases.t_cruise;
    r.phases.e_plus = slice_energy(out.series, 0.0, t1);
    r.phases.e_cruise = slice_energy(out.series, t1, t2);
    r.phases.e_minus = slice_energy(out.series, t2, out.series.t.back());
    r.peak_power = out.series.peak_power();
    r.total_energy = out.series.total_energy();
    return out;
  }

  const double va = target_airspeed(cfg, m);
  double v_gc = 0.0;
  try {
    v_gc = cruise_ground_speed(va, sc.course, cfg.wind);
  } catch (const InfeasibleAirspeedError& e) {
    r.verdict = Verdict::Infeasible;
    r.method = "straight_in_wind";
    r.reason = e.what();
    return out;
  }

  std::optional<WindTraversal> straight;
  try {
    straight = straight_traversal_in_wind(cfg.from, cfg.to, v_gc, cfg.wind, cfg.wind_config(), m);
  } catch (const InfeasibleSegmentError& e) {
    r.verdict = Verdict::Infeasible;
    r.method = "straight_in_wind";
    r.reason = e.what();
    return out;
  } catch (const EnvelopeError& e) {
    // The straight profile leaves the power-model envelope; primitives may not.
    r.reason = std::string("straight-line profile: ") + e.what();
  }
  if (straight && straight->stf) {
    r.verdict = Verdict::Straight;
    r.method = "straight_in_wind";
    fill_from_straight(r, *straight);
    out.series = std::move(straight->series);
    return out;
  }
  if (straight) {
    r.reason = "straight-line traversal violates the airspeed-rate or heading-rate limit";
    fill_from_straight(r, *straight);
  }

  try {
    PrimitivePlan pp = plan_with_primitives(cfg.from, cfg.to, v_gc, cfg.wind, cfg.primitive_config(va), m);
    r.verdict = Verdict::Primitive;
    r.method = "maneuver_primitives";
    r.phases = pp.phases;
    r.course = pp.cruise_course;
    r.v_gc = pp.v_gc;
    r.v_ac = pp.v_ac;
    r.sigma_c = pp.sigma_c;
    r.crab = normalize_angle(pp.sigma_c - pp.cruise_course);
    r.peak_power = pp.series.peak_power();
    r.total_energy = pp.series.total_energy();
    r.max_sigma_dot = pp.max_sigma_dot;
    out.series = std::move(pp.series);
    pp.accel.series = {};
    pp.decel.series = {};
    r.primitives = std::move(pp);
  } catch (const PlannerError& e) {
    const bool expected = dynamic_cast<const PrimitiveInfeasibleError*>(&e) != nullptr ||
                          dynamic_cast<const FixpointError*>(&e) != nullptr ||
                          dynamic_cast<const InfeasibleSegmentError*>(&e) != nullptr ||
                          dynamic_cast<const EnvelopeError*>(&e) != nullptr;
    if (!expected) throw;
    r.verdict = Verdict::Infeasible;
    r.method = "maneuver_primitives";
    r.reason += (r.reason.empty() ? "" : "; ") + std::string("maneuver primitives: ") + e.what();
    if (straight) out.series = std::move(straight->series);
  }
  return out;
}

std::vector<BenchmarkRow> benchmark_table(const MissionConfig& cfg, const VehicleModel& m) {
  const SegmentCourse sc = straightline_course(cfg.from, cfg.to);
  const double va = target_airspeed(cfg, m);
  auto straight_row = [&](const char* name, double airspeed, ModeSchedule schedule) {
    const double v_gc = cruise_ground_speed(airspeed, sc.course, cfg.wind);
    const WindTraversal wt = straight_traversal_in_wind(cfg.from, cfg.to, v_gc, cfg.wind, cfg.wind_config(schedule), m);
    BenchmarkRow row;
    row.name = name;
    row.cruise_airspeed = wt.v_ac;
    row.crab_deg = rad2deg(wt.crab);
    row.peak_power = wt.peak_power;
    row.energy = wt.series.total_energy();
    row.stf = wt.stf;
    return row;
  };

  std::vector<BenchmarkRow> rows;
  rows.push_back(straight_row("Quad only", cfg.sweep.quad_only_airspeed, ModeSchedule::QuadOnly));

  // No hover endpoints: the whole segment is flown at cruise.
  BenchmarkRow plane;
  plane.name = "Plane only";
  const double v_gc = cruise_ground_speed(va, sc.course, cfg.wind);
  const AirState air = air_from_ground(GroundState{v_gc, sc.course}, cfg.wind, sc.course);
  plane.cruise_airspeed = air.airspeed;
  plane.crab_deg = rad2deg(normalize_angle(air.heading - sc.course));
  plane.peak_power = m.cruise_power(air.airspeed, FlightMode::Plane);
  plane.energy = plane.peak_power * sc.length / v_gc;
  rows.push_back(plane);

  rows.push_back(straight_row("Quad+Hybrid", va, ModeSchedule::QuadHybrid));
  rows.push_back(straight_row("Quad+Hybrid+Plane", va, ModeSchedule::Full));

  const double e_quad = rows.front().energy;
  for (auto& row : rows) row.savings = 1.0 - row.energy / e_quad;
  return rows;
}

std::vector<EnergyPoint> energy_curves(const std::vector<double>& lengths, const std::vector<double>& accels,
                                       const std::vector<double>& speeds, const VehicleModel& m) {
  std::vector<EnergyPoint> out;
  for (double l : lengths) {
    for (double a : accels) {
      for (double v : speeds) {
        try {
          const TraversalEnergy te = traversal_energy(v, a, -a, l, m);
          out.push_back(EnergyPoint{l, a, v, te.total(), te.l_cruise});
        } catch (const InfeasibleCruiseError&) {
          // v above V_max for this length: not part of the curve
        }
      }
    }
  }
  return out;
}

std::vector<OptimalSpeedPoint> optimal_speed_curve(const std::vector<double>& lengths,
                                                   const std::vector<double>& accels, const VehicleModel& m) {
  std::vector<OptimalSpeedPoint> out;
  for (double a : accels) {
    for (double l : lengths) {
      TraversalQuery q;
      q.length = l;
      q.a_lim_plus = a;
      q.a_lim_minus = -a;
      out.push_back(OptimalSpeedPoint{l, a, optimize(q, m)});
    }
  }
  return out;
}

SweepTable sweep(std::string_view kind, const MissionConfig& cfg, const VehicleModel& m) {
  const SweepOptions& s = cfg.sweep;
  SweepTable t;
  auto energy_rows = [&](const std::vector<EnergyPoint>& pts) {
    t.columns = {"length_m", "a_abs", "v_c", "energy_j", "l_cruise_m"};
    for (const auto& p : pts) {
      t.rows.push_back({format_number(p.length), format_number(p.a), format_number(p.v_c), format_number(p.energy),
                        format_number(p.l_cruise)});
    }
  };
  const std::vector<double> speeds = lattice(m.v_qh(), m.v_hp(), s.v_step);

  if (kind == "fig8") {
    energy_rows(energy_curves(s.lengths, s.accels, speeds, m));
  } else if (kind == "fig9") {
    const auto [lo, hi] = std::minmax_element(s.accels.begin(), s.accels.end());
    energy_rows(energy_curves(s.lengths, lattice(*lo, *hi, s.a_step), speeds, m));
  } else if (kind == "fig10") {
    t.columns = {"length_m", "a_lim", "v_c", "a_plus", "a_minus", "l_cruise_m", "v_max", "energy_j",
                 "critical_point", "fallback"};
    for (const auto& p : optimal_speed_curve(s.lengths, s.accels, m)) {
      const OptimalTraversal& o = p.optimum;
      t.rows.push_back({format_number(p.length), format_number(p.a_lim), format_number(o.v_c), format_number(o.a_plus),
                        format_number(o.a_minus), format_number(o.l_cruise), format_number(o.v_max),
                        format_number(o.energy_total),
                        o.critical_point_kind == CriticalPointKind::Boundary ? "boundary" : "solution",
                        o.fallback ? "1" : "0"});
    }
  } else if (kind == "fig11") {
    t.columns = {"dsigma_deg", "min_a_g", "stf"};
    const double va = target_airspeed(cfg, m);
    const auto band = feasibility_band(cfg.wind.speed, cfg.from, cfg.to, va, lattice(-180.0, 180.0, s.dsigma_step_deg),
                                       s.min_a_g, cfg.wind_config(), m);
    for (const auto& c : band) {
      t.rows.push_back({format_number(c.dsigma_deg), format_number(c.min_a_g), c.stf ? "1" : "0"});
    }
  } else {
    throw ConfigError("sweep kind '" + std::string(kind) + "': expected fig8, fig9, fig10 or fig11");
  }
  return t;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const TrajectoryTimeSeries& s) {
  os << "t,v_g,v_a,sigma_deg,chi_deg,a_a,sigma_dot_deg,power_w,energy_j,mode\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << format_number(s.t[i]) << ',' << format_number(s.v_g[i]) << ',' << format_number(s.v_a[i]) << ','
       << format_number(rad2deg(s.sigma[i])) << ',' << format_number(rad2deg(s.chi[i])) << ','
       << format_number(s.a_a[i]) << ',' << format_number(rad2deg(s.sigma_dot[i])) << ','
       << format_number(s.power[i]) << ',' << format_number(s.energy_cum[i]) << ',' << to_string(s.mode[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const SweepTable& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

json to_json(const TrajectoryTimeSeries& s) {
  auto deg = [](const std::vector<double>& rad) {
    std::vector<double> out(rad.size());
    for (std::size_t i = 0; i < rad.size(); ++i) out[i] = rad2deg(rad[i]);
    return out;
  };
  json modes = json::array();
  for (FlightMode mode : s.mode) modes.push_back(std::string(to_string(mode)));
  return json{{"t", s.t},
              {"v_g", s.v_g},
              {"v_a", s.v_a},
              {"sigma_deg", deg(s.sigma)},
              {"chi_deg", deg(s.chi)},
              {"a_a", s.a_a},
              {"sigma_dot_deg", deg(s.sigma_dot)},
              {"power_w", s.power},
              {"energy_j", s.energy_cum},
              {"x_m", s.x},
              {"y_m", s.y},
              {"mode", modes}};
}

json to_json(const PlanReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["method"] = r.method;
  j["reason"] = r.reason;
  j["course_deg"] = rad2deg(r.course);
  j["cruise"] = json{{"ground_speed", r.v_gc},
                     {"airspeed", r.v_ac},
                     {"heading_deg", rad2deg(r.sigma_c)},
                     {"crab_deg", rad2deg(r.crab)}};
  j["phases"] = json{{"accel", phase_json(r.phases.t_plus, r.phases.l_plus, r.phases.e_plus)},
                     {"cruise", phase_json(r.phases.t_cruise, r.phases.l_cruise, r.phases.e_cruise)},
                     {"decel", phase_json(r.phases.t_minus, r.phases.l_minus, r.phases.e_minus)}};
  j["duration_s"] = r.phases.duration();
  j["peak_power_w"] = r.peak_power;
  j["total_energy_j"] = r.total_energy;
  j["max_heading_rate_deg_s"] = rad2deg(r.max_sigma_dot);
  j["stf"] = r.stf ? json(*r.stf) : json(nullptr);
  if (r.optimum) {
    const OptimalTraversal& o = *r.optimum;
    j["optimizer"] = json{{"v_c", o.v_c},
                          {"a_plus", o.a_plus},
                          {"a_minus", o.a_minus},
                          {"l_cruise_m", o.l_cruise},
                          {"v_max", o.v_max},
                          {"model_energy_j", o.energy_total},
                          {"critical_point", o.critical_point_kind == CriticalPointKind::Boundary ? "boundary" : "solution"},
                          {"fallback", o.fallback}};
  }
  if (r.primitives) {
    const PrimitivePlan& p = *r.primitives;
    j["primitives"] = json{{"iterations", p.iterations},
                           {"residuals_rad", p.residuals},
                           {"cruise_course_deg", rad2deg(p.cruise_course)},
                           {"w_m1", waypoint_json(p.w_m1)},
                           {"w_m2", waypoint_json(p.w_m2)},
                           {"accel", json{{"a_g", p.accel.a_g}, {"chi_dot_max_deg_s", rad2deg(p.accel.chi_dot_max)},
                                          {"t_g", p.accel.t_g}, {"t_chi", p.accel.t_chi}}},
                           {"decel", json{{"a_g", p.decel.a_g}, {"chi_dot_max_deg_s", rad2deg(p.decel.chi_dot_max)},
                                          {"t_g", p.decel.t_g}, {"t_chi", p.decel.t_chi}}}};
  }
  return j;
}

json to_json(const std::vector<BenchmarkRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back(json{{"name", r.name},
                       {"cruise_airspeed", r.cruise_airspeed},
                       {"crab_deg", r.crab_deg},
                       {"peak_power_w", r.peak_power},
                       {"energy_j", r.energy},
                       {"savings_pct", 100.0 * r.savings},
                       {"stf", r.stf}});
  }
  return out;
}

}  // namespace evtol
