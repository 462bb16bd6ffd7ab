#pragma once

#include "evtol/trajectory.hpp"
#include "evtol/vehicle_model.hpp"

namespace evtol {

struct TraversalQuery {
  double length = 0.0;       // m
  double a_lim_plus = 0.0;   // m/s^2, > 0
  double a_lim_minus = 0.0;  // m/s^2, < 0
  double dt = 0.01;          // step for integrate_power fallbacks
};

struct EnergyBreakdown {
  double accel = 0.0;
  double cruise = 0.0;
  double decel = 0.0;
  double total() const { return accel + cruise + decel; }
};

struct TraversalEnergy {
  EnergyBreakdown breakdown;
  double l_cruise = 0.0;
  double total() const { return breakdown.total(); }
};

enum class CriticalPointKind { Boundary, Solution };

struct OptimalTraversal {
  double v_c = 0.0;
  double a_plus = 0.0;
  double a_minus = 0.0;
  double l_cruise = 0.0;
  double v_max = 0.0;  // at the chosen accelerations
  double energy_total = 0.0;
  EnergyBreakdown energy_breakdown;
  CriticalPointKind critical_point_kind = CriticalPointKind::Boundary;
  // Segment too short to reach the Quad/Hybrid switch speed: the plan stays in
  // Quad mode and its energy comes from integrating the power surface.
  bool fallback = false;
};

// Energy of a hover -> v_c (a > 0) or v_c -> hover (a < 0) spline. Uses the
// fitted surface inside its domain and integrates instantaneous power elsewhere.
double accel_energy(double v_c, double a, const VehicleModel& m, double dt = 0.01);

// Throws InfeasibleCruiseError when the accelerated segments do not fit in `length`.
TraversalEnergy traversal_energy(double v_c, double a_plus, double a_minus, double length,
                                 const VehicleModel& m, double dt = 0.01);

OptimalTraversal optimize(const TraversalQuery& q, const VehicleModel& m);

struct GridResolution {
  double dv = 0.05;   // m/s
  double da = 0.025;  // m/s^2
};

// Brute-force lattice argmin over the same search box as optimize().
OptimalTraversal grid_oracle(const TraversalQuery& q, const VehicleModel& m, GridResolution res = {});

// Samples a no-wind traversal (accelerate, cruise, decelerate) along `course`.
TrajectoryTimeSeries render_nowind(const OptimalTraversal& plan, double course, double dt,
                                   const VehicleModel& m, double x0 = 0.0, double y0 = 0.0);

}  // namespace evtol
