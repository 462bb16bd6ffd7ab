#pragma once

// Planar wind-triangle kinematics for level flight.
//
// Frame: North-East-Down, x north, y east. Angles in radians, measured from +x
// toward +y. Wind heading uses the blowing-toward convention: a wind from south
// to north has heading 0.

#include <numbers>

namespace evtol {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle into (-pi, pi].
double normalize_angle(double rad);

struct WindSpec {
  double speed = 0.0;    // m/s
  double heading = 0.0;  // rad, blowing-toward

  static WindSpec make(double speed, double heading);
  double vx() const;
  double vy() const;
};

struct GroundState {
  double ground_speed = 0.0;  // m/s
  double course = 0.0;        // rad
};

struct AirState {
  double airspeed = 0.0;  // m/s
  double heading = 0.0;   // rad
};

struct Waypoint {
  double x = 0.0;  // north, m
  double y = 0.0;  // east, m
  double z = 0.0;  // down, m
};

struct SegmentCourse {
  double course = 0.0;  // rad
  double length = 0.0;  // horizontal length, m
};

// Heading and airspeed that produce the given ground velocity in the wind.
// When the air-relative velocity vanishes (hover in calm air, or ground velocity
// equal to the wind vector) the heading is undefined and `default_heading` is
// returned with zero airspeed.
AirState air_from_ground(const GroundState& g, const WindSpec& w, double default_heading = 0.0);

// Ground velocity from air-relative velocity plus wind. A zero ground speed
// reports `default_course`.
GroundState ground_from_air(const AirState& a, const WindSpec& w, double default_course = 0.0);

// Heading rate needed to hold a constant course while the airspeed changes at
// `airspeed_rate`. Throws InfeasibleAirspeedError when
// airspeed <= V^w |sin(course - wind heading)|.
double required_heading_rate(double airspeed, double airspeed_rate, double course,
                             const WindSpec& w);

// Minimum airspeed that can hold `course` with zero sideslip.
double min_airspeed_for_course(double course, const WindSpec& w);

// Ground speed along `course` when flying at `airspeed`; throws
// InfeasibleAirspeedError if the course cannot be held.
double cruise_ground_speed(double airspeed, double course, const WindSpec& w);

// Course and horizontal length of the straight segment from -> to.
// Throws DegenerateSegmentError for horizontally coincident waypoints.
SegmentCourse straightline_course(const Waypoint& from, const Waypoint& to);

}  // namespace evtol
