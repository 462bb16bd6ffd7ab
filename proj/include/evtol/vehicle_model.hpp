#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evtol {

enum class FlightMode { Quad, Hybrid, Plane };

std::string_view to_string(FlightMode mode);

// Which flight modes the vehicle is allowed to use. QuadOnly and QuadHybrid
// keep the vehicle in the lower modes even above the normal switch airspeeds.
enum class ModeSchedule { QuadOnly, QuadHybrid, Full };

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x, double tol = 1e-9) const { return x >= lo - tol && x <= hi + tol; }
};

// c0 + c1 v + c2 v^2 + ...
struct Poly1 {
  std::vector<double> coeffs;
  Range domain;
  double rmse = 0.0;
  double operator()(double v) const;
};

// Sum of c * x^i * y^j over the stored terms.
struct Poly2 {
  struct Term {
    int i = 0;
    int j = 0;
    double c = 0.0;
  };
  std::vector<Term> terms;
  Range x_domain;
  Range y_domain;
  double rmse = 0.0;
  double operator()(double x, double y) const;
};

// Energy per distance, J/m. PowerLaw: f0 v^-f1 + f2. Quadratic: f0 + f1 v + f2 v^2.
struct EpdFit {
  enum class Form { PowerLaw, Quadratic };
  Form form = Form::PowerLaw;
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  Range domain;
  double rmse = 0.0;
  double operator()(double v) const;
};

struct VehicleLimits {
  double v_qh = 0.0;
  double v_hp = 0.0;
  double v_lim = 0.0;
  double v_stall = 0.0;
  double a_lim_plus = 0.0;
  double a_lim_minus = 0.0;
  double sigma_dot_lim = 0.0;  // rad/s
};

// Immutable after construction; every evaluation is const and thread safe.
class VehicleModel {
 public:
  static VehicleModel parse(std::string_view json_text, const std::string& source = "<string>");
  static VehicleModel load(const std::filesystem::path& path);
  // $EVTOL_VEHICLE_MODEL if set, otherwise the QuadPlane model shipped in data/.
  static std::filesystem::path default_path();
  static VehicleModel load_default();

  const std::string& name() const { return name_; }
  const VehicleLimits& limits() const { return limits_; }
  double v_qh() const { return limits_.v_qh; }
  double v_hp() const { return limits_.v_hp; }
  double v_lim() const { return limits_.v_lim; }
  double a_lim_plus() const { return limits_.a_lim_plus; }
  double a_lim_minus() const { return limits_.a_lim_minus; }
  double sigma_dot_lim() const { return limits_.sigma_dot_lim; }

  // Throws EnvelopeError for v < 0 or v > v_lim.
  FlightMode flight_mode(double v, ModeSchedule schedule = ModeSchedule::Full) const;

  // Steady level-flight power, W.
  double cruise_power(double v, ModeSchedule schedule = ModeSchedule::Full) const;
  double cruise_power(double v, FlightMode mode) const;
  // The Plane row of the cruise-power table as printed; diagnostics only.
  double plane_cruise_polynomial(double v) const;

  // Power under instantaneous airspeed acceleration a, W. Quad and Hybrid only.
  double accel_power(double v, double a) const;
  double accel_power(double v, double a, FlightMode mode) const;

  double energy_per_distance(double v, ModeSchedule schedule = ModeSchedule::Full) const;
  double energy_per_distance(double v, FlightMode mode) const;

  // Energy of a hover -> v_c spline (a_max > 0) or v_c -> hover spline (a_max < 0)
  // from the fitted surface. Throws FitDomainError outside the fitted box.
  double accel_segment_energy_nowind(double v_c, double a_max) const;
  const Range& accel_energy_speed_domain() const { return accel_energy_plus_.x_domain; }
  const Range& accel_energy_magnitude_domain() const { return accel_energy_magnitude_; }
  double accel_energy_rmse(bool plus) const;
  double accel_power_rmse(FlightMode mode, bool plus) const;
  double cruise_power_rmse(FlightMode mode) const;

  // Instantaneous power for the integrator: acceleration surface in Quad and
  // Hybrid, cruise power in Plane (acceleration neglected).
  double power_at(double v, double a, ModeSchedule schedule = ModeSchedule::Full) const;

  std::vector<double> power_series(std::span<const double> airspeed, std::span<const double> accel,
                                   ModeSchedule schedule = ModeSchedule::Full) const;

  // Trapezoidal energy over a uniformly sampled profile, J.
  double integrate_power(std::span<const double> airspeed, std::span<const double> accel, double dt,
                         ModeSchedule schedule = ModeSchedule::Full) const;

 private:
  VehicleModel() = default;
  void validate() const;

  std::string name_;
  VehicleLimits limits_;
  Poly1 cruise_quad_, cruise_hybrid_, cruise_plane_raw_;
  EpdFit epd_quad_, epd_hybrid_, epd_plane_;
  Poly2 accel_quad_plus_, accel_quad_minus_, accel_hybrid_plus_, accel_hybrid_minus_;
  Range accel_power_range_;
  Poly2 accel_energy_plus_, accel_energy_minus_;
  Range accel_energy_magnitude_;
};

}  // namespace evtol
