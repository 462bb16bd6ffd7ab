#pragma once

#include <random>

#include "evtol/vehicle_model.hpp"
#include "evtol/wind.hpp"

namespace testing {

inline const evtol::VehicleModel& quadplane() {
  static const evtol::VehicleModel m = evtol::VehicleModel::load_default();
  return m;
}

// The 500 m east-bound segment used throughout the case studies.
inline constexpr evtol::Waypoint kStart{0.0, 0.0, -15.0};
inline constexpr evtol::Waypoint kEnd{0.0, 500.0, -15.0};

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

}  // namespace testing
