#include "evtol/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "evtol/errors.hpp"
#include "evtol/wind.hpp"

namespace evtol {

void TrajectoryTimeSeries::reserve(std::size_t n) {
  for (auto* col : {&t, &v_g, &v_a, &sigma, &chi, &a_a, &sigma_dot, &power, &energy_cum, &x, &y}) {
    col->reserve(n);
  }
  mode.reserve(n);
}

void TrajectoryTimeSeries::push_back_row(const TrajectoryTimeSeries& src, std::size_t i, double time_offset) {
  t.push_back(src.t[i] + time_offset);
  v_g.push_back(src.v_g[i]);
  v_a.push_back(src.v_a[i]);
  sigma.push_back(src.sigma[i]);
  chi.push_back(src.chi[i]);
  a_a.push_back(src.a_a[i]);
  sigma_dot.push_back(src.sigma_dot[i]);
  power.push_back(src.power[i]);
  energy_cum.push_back(0.0);
  x.push_back(0.0);
  y.push_back(0.0);
  mode.push_back(src.mode[i]);
}

void TrajectoryTimeSeries::append(const TrajectoryTimeSeries& tail) {
  if (tail.empty()) return;
  const double offset = t.empty() ? 0.0 : t.back();
  const std::size_t first = t.empty() ? 0 : 1;
  reserve(size() + tail.size());
  for (std::size_t i = first; i < tail.size(); ++i) push_back_row(tail, i, offset);
}

void TrajectoryTimeSeries::finish(double x0, double y0) {
  const std::size_t n = size();
  energy_cum.assign(n, 0.0);
  x.assign(n, x0);
  y.assign(n, y0);
  for (std::size_t i = 1; i < n; ++i) {
    const double h = t[i] - t[i - 1];
    energy_cum[i] = energy_cum[i - 1] + 0.5 * (power[i - 1] + power[i]) * h;
    x[i] = x[i - 1] + 0.5 * (v_g[i - 1] * std::cos(chi[i - 1]) + v_g[i] * std::cos(chi[i])) * h;
    y[i] = y[i - 1] + 0.5 * (v_g[i - 1] * std::sin(chi[i - 1]) + v_g[i] * std::sin(chi[i])) * h;
  }
}

double TrajectoryTimeSeries::peak_power() const {
  return power.empty() ? 0.0 : *std::max_element(power.begin(), power.end());
}

double TrajectoryTimeSeries::max_abs_sigma_dot() const {
  double m = 0.0;
  for (double s : sigma_dot) m = std::max(m, std::abs(s));
  return m;
}

namespace {
template <class Diff>
std::vector<double> diff_impl(const std::vector<double>& t, const std::vector<double>& x, Diff d) {
  if (t.size() != x.size()) throw PlannerError("differentiate: length mismatch");
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  out[0] = d(x[1], x[0]) / (t[1] - t[0]);
  out[n - 1] = d(x[n - 1], x[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = d(x[i + 1], x[i - 1]) / (t[i + 1] - t[i - 1]);
  return out;
}
}  // namespace

std::vector<double> differentiate(const std::vector<double>& t, const std::vector<double>& x) {
  return diff_impl(t, x, [](double a, double b) { return a - b; });
}

std::vector<double> differentiate_angle(const std::vector<double>& t, const std::vector<double>& x) {
  return diff_impl(t, x, [](double a, double b) { return normalize_angle(a - b); });
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (y[i - 1] + y[i]) * (t[i] - t[i - 1]);
  return acc;
}

}  // namespace evtol
