#pragma once

#include <stdexcept>
#include <string>

namespace evtol {

// Root of every error raised by the planner library.
class PlannerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Airspeed outside [0, v_lim] or outside a fit's validity range.
class EnvelopeError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

// Input outside the fitted domain of a surface (|a| > 2.5, a_max outside [0.5, 1.5], ...).
class FitDomainError : public EnvelopeError {
 public:
  using EnvelopeError::EnvelopeError;
};

class UnsupportedModeError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

class InvalidSplineError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

class DegenerateSegmentError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

// V^a <= V^w |sin(chi - sigma_w)|: no zero-sideslip heading holds the course.
class InfeasibleAirspeedError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

// Negative cruise length for the requested cruise speed.
class InfeasibleCruiseError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

// Cruise ground speed floor reached while the cruise length is still negative.
class InfeasibleSegmentError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

class WindLimitError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

class PrimitiveInfeasibleError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

class FixpointError : public PlannerError {
 public:
  FixpointError(const std::string& what, double residual)
      : PlannerError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Malformed vehicle model or mission config. The message starts with the JSON field path.
class ConfigError : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

}  // namespace evtol
