#include "evtol/wind.hpp"

#include <cmath>
#include <sstream>

#include "evtol/errors.hpp"

namespace evtol {

namespace {
constexpr double kZeroSpeed = 1e-12;
}

double normalize_angle(double rad) {
  double r = std::remainder(rad, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

WindSpec WindSpec::make(double speed, double heading) {
  if (!(speed >= 0.0)) {
    throw EnvelopeError("wind speed must be non-negative");
  }
  return WindSpec{speed, normalize_angle(heading)};
}

double WindSpec::vx() const { return speed * std::cos(heading); }
double WindSpec::vy() const { return speed * std::sin(heading); }

AirState air_from_ground(const GroundState& g, const WindSpec& w, double default_heading) {
  const double ax = g.ground_speed * std::cos(g.course) - w.vx();
  const double ay = g.ground_speed * std::sin(g.course) - w.vy();
  const double airspeed = std::hypot(ax, ay);
  if (airspeed < kZeroSpeed) {
    return AirState{0.0, normalize_angle(default_heading)};
  }
  return AirState{airspeed, normalize_angle(std::atan2(ay, ax))};
}

GroundState ground_from_air(const AirState& a, const WindSpec& w, double default_course) {
  const double gx = a.airspeed * std::cos(a.heading) + w.vx();
  const double gy = a.airspeed * std::sin(a.heading) + w.vy();
  const double speed = std::hypot(gx, gy);
  if (speed < kZeroSpeed) {
    return GroundState{0.0, normalize_angle(default_course)};
  }
  return GroundState{speed, normalize_angle(std::atan2(gy, gx))};
}

double min_airspeed_for_course(double course, const WindSpec& w) {
  return w.speed * std::abs(std::sin(course - w.heading));
}

double required_heading_rate(double airspeed, double airspeed_rate, double course,
                             const WindSpec& w) {
  const double s = std::sin(course - w.heading);
  const double cross = w.speed * s;
  if (!(airspeed > std::abs(cross))) {
    std::ostringstream msg;
    msg << "airspeed " << airspeed << " m/s cannot hold course: needs more than "
        << std::abs(cross) << " m/s";
    throw InfeasibleAirspeedError(msg.str());
  }
  return -cross * airspeed_rate / (airspeed * std::sqrt(airspeed * airspeed - cross * cross));
}

double cruise_ground_speed(double airspeed, double course, const WindSpec& w) {
  const double rel = course - w.heading;
  const double cross = w.speed * std::sin(rel);
  if (!(airspeed > std::abs(cross))) {
    std::ostringstream msg;
    msg << "airspeed " << airspeed << " m/s cannot hold course in a " << w.speed
        << " m/s wind";
    throw InfeasibleAirspeedError(msg.str());
  }
  // Forward root of |V^g u - W| = V^a along the course direction u.
  return w.speed * std::cos(rel) + std::sqrt(airspeed * airspeed - cross * cross);
}

SegmentCourse straightline_course(const Waypoint& from, const Waypoint& to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double length = std::hypot(dx, dy);
  if (length < 1e-9) {
    throw DegenerateSegmentError("waypoints coincide in the horizontal plane");
  }
  return SegmentCourse{normalize_angle(std::atan2(dy, dx)), length};
}

}  // namespace evtol
