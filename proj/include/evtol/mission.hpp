#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "evtol/optimizer.hpp"
#include "evtol/primitives.hpp"
#include "evtol/trajectory.hpp"
#include "evtol/vehicle_model.hpp"
#include "evtol/wind.hpp"
#include "evtol/wind_planner.hpp"

namespace evtol {

struct PlannerOptions {
  double dt = 0.01;
  double min_v_gc = 0.01;
  double min_a_g = 0.25;
  double backoff = 0.9;
  double eps = 1e-4;
  int max_iterations = 50;
  double a_g_max = 2.5;  // initial |a_g| for wind traversals and primitives
  // Cruise airspeed in wind. Unset: the zero-wind optimum for this segment.
  std::optional<double> cruise_airspeed;
  // Acceleration limits for the zero-wind optimizer. Unset: the vehicle's.
  std::optional<double> a_lim_plus;
  std::optional<double> a_lim_minus;
  bool strict_hover_gate = false;
};

struct SweepOptions {
  std::vector<double> lengths{10, 50, 100, 150, 200, 250, 300, 400, 500};
  std::vector<double> accels{0.5, 1.0, 1.5};  // magnitudes, used symmetrically
  double v_step = 0.25;
  double a_step = 0.05;
  double dsigma_step_deg = 5.0;
  std::vector<double> min_a_g{0.1, 0.2, 0.3, 0.4, 0.5};
  double quad_only_airspeed = 6.0;
};

struct MissionConfig {
  Waypoint from;
  Waypoint to;
  WindSpec wind;
  std::optional<std::filesystem::path> vehicle_path;
  PlannerOptions planner;
  SweepOptions sweep;

  // Relative vehicle paths resolve against base_dir.
  static MissionConfig parse(std::string_view json_text, const std::filesystem::path& base_dir = {});
  static MissionConfig load(const std::filesystem::path& path);

  // Explicit config path, else VehicleModel::default_path() (env override, then bundled file).
  VehicleModel load_vehicle() const;
  WindTraversalConfig wind_config(ModeSchedule schedule = ModeSchedule::Full) const;
  PrimitiveConfig primitive_config(double cruise_airspeed) const;
  TraversalQuery traversal_query(const VehicleModel& m) const;
};

enum class Verdict { Straight, Primitive, Infeasible };
const char* to_string(Verdict v);

struct PlanReport {
  Verdict verdict = Verdict::Infeasible;
  std::string method;  // no_wind_optimizer | straight_in_wind | maneuver_primitives
  std::string reason;  // why the plan is infeasible or fell back to primitives
  PhaseSummary phases;
  double peak_power = 0.0;
  double total_energy = 0.0;  // integral of the emitted power series
  double course = 0.0;
  double v_gc = 0.0;
  double v_ac = 0.0;
  double sigma_c = 0.0;
  double crab = 0.0;
  double max_sigma_dot = 0.0;
  std::optional<bool> stf;                 // wind cases
  std::optional<OptimalTraversal> optimum;  // zero-wind case
  std::optional<PrimitivePlan> primitives;  // without its series
};

struct PlanResult {
  PlanReport report;
  TrajectoryTimeSeries series;  // empty if nothing could be flown
};

PlanResult plan(const MissionConfig& cfg, const VehicleModel& m);

struct BenchmarkRow {
  std::string name;
  double cruise_airspeed = 0.0;
  double crab_deg = 0.0;
  double peak_power = 0.0;
  double energy = 0.0;
  double savings = 0.0;  // 1 - E / E_quad_only
  bool stf = true;
};

// Quad-only, Plane-only, Quad+Hybrid, Quad+Hybrid+Plane, in that order.
std::vector<BenchmarkRow> benchmark_table(const MissionConfig& cfg, const VehicleModel& m);

struct EnergyPoint {
  double length = 0.0;
  double a = 0.0;  // symmetric magnitude
  double v_c = 0.0;
  double energy = 0.0;
  double l_cruise = 0.0;
};

// Traversal energy over a (length, |a|, v_c) lattice; infeasible points are omitted.
std::vector<EnergyPoint> energy_curves(const std::vector<double>& lengths, const std::vector<double>& accels,
                                       const std::vector<double>& speeds, const VehicleModel& m);

struct OptimalSpeedPoint {
  double length = 0.0;
  double a_lim = 0.0;
  OptimalTraversal optimum;
};

std::vector<OptimalSpeedPoint> optimal_speed_curve(const std::vector<double>& lengths,
                                                   const std::vector<double>& accels, const VehicleModel& m);

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// kind: fig8 (energy vs v_c per length), fig9 (energy vs v_c and |a|),
// fig10 (optimal v_c vs length), fig11 (STF band over wind angle and min_a_g).
SweepTable sweep(std::string_view kind, const MissionConfig& cfg, const VehicleModel& m);

// Shortest-ish fixed format so identical inputs give identical bytes.
std::string format_number(double v);

void write_csv(std::ostream& os, const TrajectoryTimeSeries& s);
void write_csv(std::ostream& os, const SweepTable& t);
nlohmann::json to_json(const TrajectoryTimeSeries& s);
nlohmann::json to_json(const PlanReport& r);
nlohmann::json to_json(const std::vector<BenchmarkRow>& rows);

}  // namespace evtol
