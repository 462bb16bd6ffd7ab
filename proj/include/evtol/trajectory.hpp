#pragma once

#include <cstddef>
#include <vector>

#include "evtol/vehicle_model.hpp"

namespace evtol {

// Sampled time histories of a plan. All columns have the same length.
struct TrajectoryTimeSeries {
  std::vector<double> t;          // s
  std::vector<double> v_g;        // m/s
  std::vector<double> v_a;        // m/s
  std::vector<double> sigma;      // heading, rad
  std::vector<double> chi;        // course, rad
  std::vector<double> a_a;        // airspeed rate, m/s^2
  std::vector<double> sigma_dot;  // rad/s
  std::vector<double> power;      // W
  std::vector<double> energy_cum; // J
  std::vector<double> x;          // north, m
  std::vector<double> y;          // east, m
  std::vector<FlightMode> mode;

  std::size_t size() const { return t.size(); }
  bool empty() const { return t.empty(); }
  void reserve(std::size_t n);
  void push_back_row(const TrajectoryTimeSeries& src, std::size_t i, double time_offset);

  // Appends `tail`, shifting its time by the current end time and dropping its
  // first sample when it duplicates our last one. Energy and positions are
  // rebuilt by finish().
  void append(const TrajectoryTimeSeries& tail);

  // Recomputes energy_cum (trapezoid over power) and x/y (trapezoid over v_g
  // along chi) starting from the given origin.
  void finish(double x0, double y0);

  double peak_power() const;
  double total_energy() const { return energy_cum.empty() ? 0.0 : energy_cum.back(); }
  double max_abs_sigma_dot() const;
};

struct PhaseSummary {
  double t_plus = 0.0;
  double t_cruise = 0.0;
  double t_minus = 0.0;
  double l_plus = 0.0;
  double l_cruise = 0.0;
  double l_minus = 0.0;
  double e_plus = 0.0;
  double e_cruise = 0.0;
  double e_minus = 0.0;

  double duration() const { return t_plus + t_cruise + t_minus; }
  double length() const { return l_plus + l_cruise + l_minus; }
  double energy() const { return e_plus + e_cruise + e_minus; }
};

// Central differences inside, one-sided at the ends, over arbitrary sample times.
std::vector<double> differentiate(const std::vector<double>& t, const std::vector<double>& x);
// Same, with each difference wrapped into (-pi, pi].
std::vector<double> differentiate_angle(const std::vector<double>& t, const std::vector<double>& x);

double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace evtol
