#include "evtol/vehicle_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "evtol/errors.hpp"
#include "evtol/wind.hpp"

#ifndef EVTOL_DATA_DIR
#define EVTOL_DATA_DIR "data"
#endif

namespace evtol {

using nlohmann::json;

namespace {

constexpr double kModeTol = 1e-9;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + "." + key + ": missing");
  return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
  return v.get<double>();
}

Range range(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  const std::string p = path + "." + key;
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(p + ": expected [lo, hi]");
  }
  Range r{v[0].get<double>(), v[1].get<double>()};
  if (!(r.lo <= r.hi)) throw ConfigError(p + ": lo > hi");
  return r;
}

// Coefficient map {"p0": .., "p1": ..} -> dense vector; every power up to the
// highest one must be present.
Poly1 poly1(const json& obj, const std::string& path) {
  const json& c = field(obj, "coeffs", path);
  const std::string cp = path + ".coeffs";
  if (!c.is_object() || c.empty()) throw ConfigError(cp + ": expected a non-empty object");
  std::map<int, double> by_power;
  for (const auto& [key, val] : c.items()) {
    if (key.size() != 2 || key[0] != 'p' || !std::isdigit(static_cast<unsigned char>(key[1]))) {
      throw ConfigError(cp + "." + key + ": expected key p<k>");
    }
    if (!val.is_number()) throw ConfigError(cp + "." + key + ": expected a number");
    by_power[key[1] - '0'] = val.get<double>();
  }
  Poly1 p;
  for (int k = 0; k <= by_power.rbegin()->first; ++k) {
    auto it = by_power.find(k);
    if (it == by_power.end()) throw ConfigError(cp + ".p" + std::to_string(k) + ": missing");
    p.coeffs.push_back(it->second);
  }
  p.domain = range(obj, "domain", path);
  p.rmse = number(obj, "rmse", path);
  return p;
}

// Coefficient map {"p<i><j>": c} -> terms of x^i y^j.
std::vector<Poly2::Term> poly2_terms(const json& obj, const std::string& path) {
  const json& c = field(obj, "coeffs", path);
  const std::string cp = path + ".coeffs";
  if (!c.is_object() || c.empty()) throw ConfigError(cp + ": expected a non-empty object");
  std::vector<Poly2::Term> terms;
  for (const auto& [key, val] : c.items()) {
    if (key.size() != 3 || key[0] != 'p' || !std::isdigit(static_cast<unsigned char>(key[1])) ||
        !std::isdigit(static_cast<unsigned char>(key[2]))) {
      throw ConfigError(cp + "." + key + ": expected key p<i><j>");
    }
    if (!val.is_number()) throw ConfigError(cp + "." + key + ": expected a number");
    terms.push_back({key[1] - '0', key[2] - '0', val.get<double>()});
  }
  return terms;
}

EpdFit epd(const json& obj, const std::string& path) {
  EpdFit f;
  const json& form = field(obj, "form", path);
  if (form == "power_law") {
    f.form = EpdFit::Form::PowerLaw;
  } else if (form == "quadratic") {
    f.form = EpdFit::Form::Quadratic;
  } else {
    throw ConfigError(path + ".form: expected \"power_law\" or \"quadratic\"");
  }
  const json* src = &obj;
  std::string src_path = path;
  if (obj.contains("orderings")) {
    const json& active = field(obj, "active", path);
    if (!active.is_string()) throw ConfigError(path + ".active: expected a string");
    const std::string key = active.get<std::string>();
    src = &field(field(obj, "orderings", path), key, path + ".orderings");
    src_path = path + ".orderings." + key;
  }
  f.f0 = number(*src, "f0", src_path);
  f.f1 = number(*src, "f1", src_path);
  f.f2 = number(*src, "f2", src_path);
  f.domain = range(obj, "domain", path);
  f.rmse = number(obj, "rmse", path);
  return f;
}

}  // namespace

std::string_view to_string(FlightMode mode) {
  switch (mode) {
    case FlightMode::Quad:
      return "Quad";
    case FlightMode::Hybrid:
      return "Hybrid";
    case FlightMode::Plane:
      return "Plane";
  }
  return "?";
}

double Poly1::operator()(double v) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * v + *it;
  return acc;
}

double Poly2::operator()(double x, double y) const {
  std::array<double, 10> xp{}, yp{};
  xp[0] = yp[0] = 1.0;
  for (std::size_t k = 1; k < xp.size(); ++k) {
    xp[k] = xp[k - 1] * x;
    yp[k] = yp[k - 1] * y;
  }
  double acc = 0.0;
  for (const Term& t : terms) acc += t.c * xp[t.i] * yp[t.j];
  return acc;
}

double EpdFit::operator()(double v) const {
  if (form == Form::PowerLaw) return f0 * std::pow(v, -f1) + f2;
  return f0 + f1 * v + f2 * v * v;
}

VehicleModel VehicleModel::parse(std::string_view json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }

  VehicleModel m;
  m.name_ = doc.value("name", std::string{"unnamed"});

  const json& lim = field(doc, "limits", "$");
  m.limits_.v_qh = number(lim, "v_qh", "limits");
  m.limits_.v_hp = number(lim, "v_hp", "limits");
  m.limits_.v_lim = number(lim, "v_lim", "limits");
  m.limits_.v_stall = number(lim, "v_stall", "limits");
  m.limits_.a_lim_plus = number(lim, "a_lim_plus", "limits");
  m.limits_.a_lim_minus = number(lim, "a_lim_minus", "limits");
  m.limits_.sigma_dot_lim = deg2rad(number(lim, "sigma_dot_lim_deg", "limits"));

  const json& cp = field(doc, "cruise_power", "$");
  m.cruise_quad_ = poly1(field(cp, "quad", "cruise_power"), "cruise_power.quad");
  m.cruise_hybrid_ = poly1(field(cp, "hybrid", "cruise_power"), "cruise_power.hybrid");
  m.cruise_plane_raw_ = poly1(field(cp, "plane", "cruise_power"), "cruise_power.plane");

  const json& ep = field(doc, "energy_per_distance", "$");
  m.epd_quad_ = epd(field(ep, "quad", "energy_per_distance"), "energy_per_distance.quad");
  m.epd_hybrid_ = epd(field(ep, "hybrid", "energy_per_distance"), "energy_per_distance.hybrid");
  m.epd_plane_ = epd(field(ep, "plane", "energy_per_distance"), "energy_per_distance.plane");

  const json& ap = field(doc, "accel_power", "$");
  m.accel_power_range_ = range(ap, "accel_domain", "accel_power");
  auto surface = [&](const char* key) {
    const std::string path = std::string("accel_power.") + key;
    const json& s = field(ap, key, "accel_power");
    Poly2 p;
    p.terms = poly2_terms(s, path);
    p.x_domain = range(s, "speed_domain", path);
    p.y_domain = m.accel_power_range_;
    p.rmse = number(s, "rmse", path);
    return p;
  };
  m.accel_quad_plus_ = surface("quad_plus");
  m.accel_quad_minus_ = surface("quad_minus");
  m.accel_hybrid_plus_ = surface("hybrid_plus");
  m.accel_hybrid_minus_ = surface("hybrid_minus");

  const json& ae = field(doc, "accel_energy", "$");
  const Range speed = range(ae, "speed_domain", "accel_energy");
  m.accel_energy_magnitude_ = range(ae, "accel_magnitude_domain", "accel_energy");
  for (auto [key, dst] : {std::pair{"plus", &m.accel_energy_plus_}, std::pair{"minus", &m.accel_energy_minus_}}) {
    const std::string path = std::string("accel_energy.") + key;
    const json& s = field(ae, key, "accel_energy");
    dst->terms = poly2_terms(s, path);
    dst->x_domain = speed;
    dst->y_domain = m.accel_energy_magnitude_;
    dst->rmse = number(s, "rmse", path);
  }

  m.validate();
  return m;
}

void VehicleModel::validate() const {
  const auto& l = limits_;
  if (!(0.0 < l.v_qh && l.v_qh < l.v_hp && l.v_hp <= l.v_lim)) {
    throw ConfigError("limits: need 0 < v_qh < v_hp <= v_lim");
  }
  if (!(l.v_stall <= l.v_hp)) throw ConfigError("limits.v_stall: must not exceed v_hp");
  if (!(l.a_lim_plus > 0.0)) throw ConfigError("limits.a_lim_plus: must be positive");
  if (!(l.a_lim_minus < 0.0)) throw ConfigError("limits.a_lim_minus: must be negative");
  if (!(l.sigma_dot_lim > 0.0)) throw ConfigError("limits.sigma_dot_lim_deg: must be positive");
  if (!(accel_energy_magnitude_.lo > 0.0)) {
    throw ConfigError("accel_energy.accel_magnitude_domain: lower bound must be positive");
  }
}

VehicleModel VehicleModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open vehicle model");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

std::filesystem::path VehicleModel::default_path() {
  if (const char* env = std::getenv("EVTOL_VEHICLE_MODEL"); env != nullptr && *env != '\0') {
    return env;
  }
  return std::filesystem::path(EVTOL_DATA_DIR) / "quadplane.json";
}

VehicleModel VehicleModel::load_default() { return load(default_path()); }

FlightMode VehicleModel::flight_mode(double v, ModeSchedule schedule) const {
  if (!(v >= -kModeTol && v <= limits_.v_lim + kModeTol)) {
    throw EnvelopeError("airspeed " + fmt(v) + " m/s outside [0, " + fmt(limits_.v_lim) + "]");
  }
  if (schedule == ModeSchedule::QuadOnly || v < limits_.v_qh - kModeTol) return FlightMode::Quad;
  if (schedule == ModeSchedule::QuadHybrid || v < limits_.v_hp - kModeTol) return FlightMode::Hybrid;
  return FlightMode::Plane;
}

double VehicleModel::cruise_power(double v, ModeSchedule schedule) const {
  return cruise_power(v, flight_mode(v, schedule));
}

double VehicleModel::cruise_power(double v, FlightMode mode) const {
  switch (mode) {
    case FlightMode::Quad:
    case FlightMode::Hybrid: {
      const Poly1& p = mode == FlightMode::Quad ? cruise_quad_ : cruise_hybrid_;
      if (!p.domain.contains(v)) {
        throw FitDomainError(std::string(to_string(mode)) + " cruise power undefined at " + fmt(v) + " m/s");
      }
      return p(v);
    }
    case FlightMode::Plane:
      return energy_per_distance(v, FlightMode::Plane) * v;
  }
  throw UnsupportedModeError("unknown flight mode");
}

double VehicleModel::plane_cruise_polynomial(double v) const { return cruise_plane_raw_(v); }

double VehicleModel::accel_power(double v, double a) const {
  return accel_power(v, a, flight_mode(v));
}

double VehicleModel::accel_power(double v, double a, FlightMode mode) const {
  if (mode == FlightMode::Plane) {
    throw UnsupportedModeError("acceleration power is not modeled in Plane mode");
  }
  if (!accel_power_range_.contains(a)) {
    throw FitDomainError("acceleration " + fmt(a) + " m/s^2 outside the fitted range");
  }
  const bool plus = a >= 0.0;
  const Poly2& p = mode == FlightMode::Quad ? (plus ? accel_quad_plus_ : accel_quad_minus_)
                                            : (plus ? accel_hybrid_plus_ : accel_hybrid_minus_);
  if (!p.x_domain.contains(v)) {
    throw FitDomainError(std::string(to_string(mode)) + " acceleration power undefined at " + fmt(v) + " m/s");
  }
  return p(v, a);
}

double VehicleModel::energy_per_distance(double v, ModeSchedule schedule) const {
  return energy_per_distance(v, flight_mode(v, schedule));
}

double VehicleModel::energy_per_distance(double v, FlightMode mode) const {
  const EpdFit& f = mode == FlightMode::Quad ? epd_quad_ : mode == FlightMode::Hybrid ? epd_hybrid_ : epd_plane_;
  if (!f.domain.contains(v)) {
    throw FitDomainError(std::string(to_string(mode)) + " energy per distance undefined at " + fmt(v) + " m/s");
  }
  return f(v);
}

double VehicleModel::accel_segment_energy_nowind(double v_c, double a_max) const {
  const Poly2& p = a_max > 0.0 ? accel_energy_plus_ : accel_energy_minus_;
  if (!p.x_domain.contains(v_c) || !accel_energy_magnitude_.contains(std::abs(a_max))) {
    throw FitDomainError("accelerated-segment fit undefined at v_c=" + fmt(v_c) + ", a_max=" + fmt(a_max));
  }
  return p(v_c, a_max);
}

double VehicleModel::accel_energy_rmse(bool plus) const {
  return plus ? accel_energy_plus_.rmse : accel_energy_minus_.rmse;
}

double VehicleModel::accel_power_rmse(FlightMode mode, bool plus) const {
  if (mode == FlightMode::Plane) throw UnsupportedModeError("no Plane acceleration surface");
  const Poly2& p = mode == FlightMode::Quad ? (plus ? accel_quad_plus_ : accel_quad_minus_)
                                            : (plus ? accel_hybrid_plus_ : accel_hybrid_minus_);
  return p.rmse;
}

double VehicleModel::cruise_power_rmse(FlightMode mode) const {
  switch (mode) {
    case FlightMode::Quad:
      return cruise_quad_.rmse;
    case FlightMode::Hybrid:
      return cruise_hybrid_.rmse;
    case FlightMode::Plane:
      return epd_plane_.rmse * limits_.v_hp;
  }
  return 0.0;
}

double VehicleModel::power_at(double v, double a, ModeSchedule schedule) const {
  const FlightMode mode = flight_mode(v, schedule);
  const double vv = std::max(v, 0.0);
  if (mode == FlightMode::Plane) return cruise_power(vv, FlightMode::Plane);
  return accel_power(vv, a, mode);
}

std::vector<double> VehicleModel::power_series(std::span<const double> airspeed, std::span<const double> accel,
                                               ModeSchedule schedule) const {
  if (airspeed.size() != accel.size()) throw PlannerError("power_series: airspeed/accel length mismatch");
  std::vector<double> out(airspeed.size());
  for (std::size_t i = 0; i < airspeed.size(); ++i) {
    try {
      out[i] = power_at(airspeed[i], accel[i], schedule);
    } catch (const FitDomainError& e) {
      throw FitDomainError("sample " + std::to_string(i) + ": " + e.what());
    } catch (const EnvelopeError& e) {
      throw EnvelopeError("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

double VehicleModel::integrate_power(std::span<const double> airspeed, std::span<const double> accel, double dt,
                                     ModeSchedule schedule) const {
  if (!(dt > 0.0)) throw PlannerError("integrate_power: dt must be positive");
  const std::vector<double> p = power_series(airspeed, accel, schedule);
  double e = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) e += 0.5 * (p[i - 1] + p[i]) * dt;
  return e;
}

}  // namespace evtol
