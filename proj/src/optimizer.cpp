#include "evtol/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "evtol/errors.hpp"
#include "evtol/spline.hpp"

namespace evtol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieJ = 1e-6;

double integrate_spline_energy(const SpeedSpline& s, const VehicleModel& m, double dt) {
  const SampledSpline smp = sample_spline(s, dt);
  const std::vector<double> p = m.power_series(smp.v, smp.a);
  return trapezoid(smp.t, p);
}

struct Box {
  double v_lo, v_hi;
  double p_lo, p_hi;  // a_plus
  double q_lo, q_hi;  // |a_minus|
};

Box search_box(const TraversalQuery& q, const VehicleModel& m) {
  if (!(q.length > 0.0)) throw DegenerateSegmentError("segment length must be positive");
  if (!(q.a_lim_plus > 0.0) || !(q.a_lim_minus < 0.0)) {
    throw InvalidSplineError("need a_lim_plus > 0 > a_lim_minus");
  }
  const double a_fit_lo = m.accel_energy_magnitude_domain().lo;
  const double p_hi = q.a_lim_plus;
  const double q_hi = -q.a_lim_minus;
  return Box{m.v_qh(), m.v_hp(), std::min(a_fit_lo, p_hi), p_hi, std::min(a_fit_lo, q_hi), q_hi};
}

struct Candidate {
  double v = 0.0, p = 0.0, q = 0.0;
  double energy = kInf;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.energy < b.energy - kTieJ) return true;
  if (a.energy <= b.energy + kTieJ) return a.v > b.v;
  return false;
}

// Smooth extension of the traversal energy used inside the local search:
// negative cruise length is allowed so finite differences never throw.
class Objective {
 public:
  Objective(const VehicleModel& m, double length, double dt) : m_(m), length_(length), dt_(dt) {}

  double operator()(double v, double p, double q) const {
    const double lc = cruise_length(length_, v, p, -q);
    return accel_energy(v, p, m_, dt_) + accel_energy(v, -q, m_, dt_) + m_.energy_per_distance(v) * lc;
  }

 private:
  const VehicleModel& m_;
  double length_;
  double dt_;
};

enum class Pin { Free, Lo, Hi, Vmax };

struct Face {
  Pin v, p, q;
};

class FaceSearch {
 public:
  FaceSearch(const Face& face, const Box& box, const Objective& f, double length)
      : face_(face), box_(box), f_(f), length_(length) {
    if (face.p == Pin::Free) free_.push_back(1);
    if (face.q == Pin::Free) free_.push_back(2);
    if (face.v == Pin::Free) free_.push_back(0);
  }

  std::size_t dims() const { return free_.size(); }

  // Full point for the given free coordinates; v is clipped to the reachable speed.
  std::array<double, 3> assemble(const std::vector<double>& z) const {
    std::array<double, 3> x{};
    auto pinned = [](Pin pin, double lo, double hi) { return pin == Pin::Hi ? hi : lo; };
    x[1] = pinned(face_.p, box_.p_lo, box_.p_hi);
    x[2] = pinned(face_.q, box_.q_lo, box_.q_hi);
    for (std::size_t k = 0; k < free_.size(); ++k) x[free_[k]] = z[k];
    x[1] = std::clamp(x[1], box_.p_lo, box_.p_hi);
    x[2] = std::clamp(x[2], box_.q_lo, box_.q_hi);
    const double vmax = std::min(v_max_achievable(length_, x[1], -x[2]), box_.v_hi);
    switch (face_.v) {
      case Pin::Lo:
        x[0] = box_.v_lo;
        break;
      case Pin::Hi:
        x[0] = box_.v_hi;
        break;
      case Pin::Vmax:
        x[0] = vmax;
        break;
      case Pin::Free:
        x[0] = std::clamp(x[0], box_.v_lo, std::max(box_.v_lo, vmax));
        break;
    }
    return x;
  }

  double lo(std::size_t k) const { return free_[k] == 0 ? box_.v_lo : free_[k] == 1 ? box_.p_lo : box_.q_lo; }
  double hi(std::size_t k) const { return free_[k] == 0 ? box_.v_hi : free_[k] == 1 ? box_.p_hi : box_.q_hi; }

  double value(const std::vector<double>& z) const {
    const auto x = assemble(z);
    if (x[0] < box_.v_lo - 1e-12) return kInf;
    if (cruise_length(length_, x[0], x[1], -x[2]) < -1e-9 * length_) return kInf;
    return f_(x[0], x[1], x[2]);
  }

  // Coarse lattice over the free coordinates; returns the best few points.
  std::vector<std::vector<double>> seeds(std::size_t keep) const {
    static constexpr std::array<int, 3> kCounts{20, 10, 10};
    std::vector<std::pair<double, std::vector<double>>> scored;
    std::vector<int> counts;
    for (std::size_t k = 0; k < dims(); ++k) counts.push_back(free_[k] == 0 ? kCounts[0] : kCounts[free_[k]]);
    std::vector<int> idx(dims(), 0);
    std::vector<double> z(dims());
    while (true) {
      for (std::size_t k = 0; k < dims(); ++k) {
        z[k] = lo(k) + (hi(k) - lo(k)) * idx[k] / std::max(1, counts[k] - 1);
      }
      const double e = value(z);
      if (std::isfinite(e)) scored.emplace_back(e, z);
      std::size_t k = 0;
      while (k < dims() && ++idx[k] == counts[k]) idx[k++] = 0;
      if (k == dims()) break;
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < scored.size() && i < keep; ++i) out.push_back(scored[i].second);
    return out;
  }

  // Damped Newton with central-difference derivatives (one-sided at bounds).
  std::vector<double> refine(std::vector<double> z) const {
    const std::size_t n = dims();
    if (n == 0) return z;
    constexpr double h = 1e-4;
    double fz = value(z);
    for (int iter = 0; iter < 60 && std::isfinite(fz); ++iter) {
      std::vector<double> g(n), H(n * n);
      auto shifted = [&](std::size_t k, double d) {
        auto y = z;
        y[k] += d;
        return y;
      };
      std::vector<double> step(n);
      for (std::size_t k = 0; k < n; ++k) {
        const bool up = z[k] + h <= hi(k);
        const bool down = z[k] - h >= lo(k);
        if (up && down) {
          g[k] = (value(shifted(k, h)) - value(shifted(k, -h))) / (2 * h);
        } else if (up) {
          g[k] = (value(shifted(k, h)) - fz) / h;
        } else {
          g[k] = (fz - value(shifted(k, -h))) / h;
        }
        step[k] = up ? h : -h;
      }
      bool finite = std::all_of(g.begin(), g.end(), [](double x) { return std::isfinite(x); });
      if (!finite) break;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          auto y = shifted(i, step[i]);
          y[j] += step[j];
          const double fij = value(y);
          const double fi = value(shifted(i, step[i]));
          const double fj = value(shifted(j, step[j]));
          H[i * n + j] = (fij - fi - fj + fz) / (step[i] * step[j]);
        }
      }
      std::vector<double> d = solve(H, g, n);
      if (d.empty()) {
        d.resize(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = g[k];
      }
      bool improved = false;
      for (double t = 1.0; t > 1e-6; t *= 0.5) {
        std::vector<double> y(n);
        for (std::size_t k = 0; k < n; ++k) y[k] = std::clamp(z[k] - t * d[k], lo(k), hi(k));
        const double fy = value(y);
        if (fy < fz - 1e-12) {
          const double moved = std::abs(fz - fy);
          z = y;
          fz = fy;
          improved = moved > 1e-9;
          break;
        }
      }
      if (!improved) break;
    }
    return z;
  }

 private:
  // Solves H d = g for positive definite H; empty when H is not positive definite.
  static std::vector<double> solve(std::vector<double> H, std::vector<double> g, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const double s = 0.5 * (H[i * n + j] + H[j * n + i]);
        H[i * n + j] = H[j * n + i] = s;
      }
    }
    // Cholesky.
    std::vector<double> L(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double s = H[i * n + j];
        for (std::size_t k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
        if (i == j) {
          if (!(s > 0.0)) return {};
          L[i * n + i] = std::sqrt(s);
        } else {
          L[i * n + j] = s / L[j * n + j];
        }
      }
    }
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = g[i];
      for (std::size_t k = 0; k < i; ++k) s -= L[i * n + k] * y[k];
      y[i] = s / L[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = y[i];
      for (std::size_t k = i + 1; k < n; ++k) s -= L[k * n + i] * x[k];
      x[i] = s / L[i * n + i];
    }
    return x;
  }

  Face face_;
  Box box_;
  const Objective& f_;
  double length_;
  std::vector<std::size_t> free_;
};

OptimalTraversal finalize(const Candidate& c, double length, const VehicleModel& m, double dt) {
  OptimalTraversal out;
  out.v_c = c.v;
  out.a_plus = c.p;
  out.a_minus = -c.q;
  const TraversalEnergy e = traversal_energy(c.v, c.p, -c.q, length, m, dt);
  out.l_cruise = e.l_cruise;
  out.energy_breakdown = e.breakdown;
  out.energy_total = e.total();
  out.v_max = v_max_achievable(length, c.p, -c.q);
  const bool at_vmax = std::abs(c.v - out.v_max) <= 1e-6;
  const bool at_bound = std::abs(c.v - m.v_qh()) <= 1e-6 || std::abs(c.v - m.v_hp()) <= 1e-6;
  out.critical_point_kind =
      (at_vmax || at_bound || out.l_cruise <= 0.0) ? CriticalPointKind::Boundary : CriticalPointKind::Solution;
  return out;
}

// Segment too short to reach V_QH: accelerate to V_max in Quad mode at the limits.
OptimalTraversal quad_fallback(const TraversalQuery& q, const VehicleModel& m) {
  OptimalTraversal out;
  out.a_plus = q.a_lim_plus;
  out.a_minus = q.a_lim_minus;
  out.v_max = v_max_achievable(q.length, q.a_lim_plus, q.a_lim_minus);
  out.v_c = out.v_max;
  out.l_cruise = 0.0;
  out.energy_breakdown.accel = integrate_spline_energy(build_spline(0.0, out.v_c, out.a_plus), m, q.dt);
  out.energy_breakdown.decel = integrate_spline_energy(build_spline(out.v_c, 0.0, out.a_minus), m, q.dt);
  out.energy_total = out.energy_breakdown.total();
  out.critical_point_kind = CriticalPointKind::Boundary;
  out.fallback = true;
  return out;
}

bool needs_fallback(const TraversalQuery& q, const Box& box) {
  return v_max_achievable(q.length, box.p_hi, -box.q_hi) < box.v_lo - 1e-9;
}

}  // namespace

double accel_energy(double v_c, double a, const VehicleModel& m, double dt) {
  const bool in_fit = m.accel_energy_speed_domain().contains(v_c) &&
                      m.accel_energy_magnitude_domain().contains(std::abs(a));
  if (in_fit) return m.accel_segment_energy_nowind(v_c, a);
  const SpeedSpline s = a > 0.0 ? build_spline(0.0, v_c, a) : build_spline(v_c, 0.0, a);
  return integrate_spline_energy(s, m, dt);
}

TraversalEnergy traversal_energy(double v_c, double a_plus, double a_minus, double length,
                                 const VehicleModel& m, double dt) {
  double lc = cruise_length(length, v_c, a_plus, a_minus);
  if (lc < -1e-9 * std::max(1.0, length)) {
    throw InfeasibleCruiseError("cruise speed " + std::to_string(v_c) + " m/s needs more than " +
                                std::to_string(length) + " m");
  }
  lc = std::max(lc, 0.0);
  TraversalEnergy out;
  out.l_cruise = lc;
  out.breakdown.accel = accel_energy(v_c, a_plus, m, dt);
  out.breakdown.decel = accel_energy(v_c, a_minus, m, dt);
  out.breakdown.cruise = lc > 0.0 ? m.energy_per_distance(v_c) * lc : 0.0;
  return out;
}

OptimalTraversal optimize(const TraversalQuery& q, const VehicleModel& m) {
  const Box box = search_box(q, m);
  if (needs_fallback(q, box)) return quad_fallback(q, m);

  const Objective f(m, q.length, q.dt);
  Candidate best;
  auto consider = [&](double v, double p, double qq) {
    if (v < box.v_lo - 1e-12) return;
    if (cruise_length(q.length, v, p, -qq) < -1e-9 * q.length) return;
    Candidate c{v, p, qq, f(v, p, qq)};
    if (better(c, best)) best = c;
  };

  // Corners of the box, with v capped at the reachable speed.
  for (double p : {box.p_lo, box.p_hi}) {
    for (double qq : {box.q_lo, box.q_hi}) {
      const double vmax = std::min(v_max_achievable(q.length, p, -qq), box.v_hi);
      consider(box.v_lo, p, qq);
      consider(vmax, p, qq);
    }
  }

  // Stationary points on every face of the box, including the open interior.
  const bool p_var = box.p_hi > box.p_lo;
  const bool q_var = box.q_hi > box.q_lo;
  for (Pin pv : {Pin::Free, Pin::Lo, Pin::Hi, Pin::Vmax}) {
    for (Pin pp : {Pin::Free, Pin::Lo, Pin::Hi}) {
      if (!p_var && pp != Pin::Lo) continue;
      for (Pin pq : {Pin::Free, Pin::Lo, Pin::Hi}) {
        if (!q_var && pq != Pin::Lo) continue;
        const FaceSearch face(Face{pv, pp, pq}, box, f, q.length);
        for (const auto& seed : face.seeds(3)) {
          const auto x = face.assemble(face.refine(seed));
          consider(x[0], x[1], x[2]);
        }
      }
    }
  }

  if (!std::isfinite(best.energy)) {
    throw InfeasibleCruiseError("no feasible traversal for a " + std::to_string(q.length) + " m segment");
  }
  return finalize(best, q.length, m, q.dt);
}

OptimalTraversal grid_oracle(const TraversalQuery& q, const VehicleModel& m, GridResolution res) {
  if (!(res.dv > 0.0) || !(res.da > 0.0)) throw PlannerError("grid resolution must be positive");
  const Box box = search_box(q, m);
  if (needs_fallback(q, box)) return quad_fallback(q, m);

  auto lattice = [](double lo, double hi, double step) {
    std::vector<double> pts;
    for (int i = 0;; ++i) {
      const double x = lo + i * step;
      if (x > hi - 1e-9) break;
      pts.push_back(x);
    }
    pts.push_back(hi);
    return pts;
  };
  const auto vs = lattice(box.v_lo, box.v_hi, res.dv);
  const auto ps = lattice(box.p_lo, box.p_hi, res.da);
  const auto qs = lattice(box.q_lo, box.q_hi, res.da);

  // Accelerated energies are separable in (v, a), so tabulate them once.
  std::vector<double> ep(vs.size() * ps.size()), em(vs.size() * qs.size()), fv(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    fv[i] = m.energy_per_distance(vs[i]);
    for (std::size_t j = 0; j < ps.size(); ++j) ep[i * ps.size() + j] = accel_energy(vs[i], ps[j], m, q.dt);
    for (std::size_t k = 0; k < qs.size(); ++k) em[i * qs.size() + k] = accel_energy(vs[i], -qs[k], m, q.dt);
  }

  Candidate best;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      for (std::size_t k = 0; k < qs.size(); ++k) {
        const double lc = cruise_length(q.length, vs[i], ps[j], -qs[k]);
        if (lc < -1e-9 * q.length) continue;
        Candidate c{vs[i], ps[j], qs[k], ep[i * ps.size() + j] + em[i * qs.size() + k] + fv[i] * std::max(lc, 0.0)};
        if (better(c, best)) best = c;
      }
    }
  }
  if (!std::isfinite(best.energy)) {
    throw InfeasibleCruiseError("no feasible lattice point for a " + std::to_string(q.length) + " m segment");
  }
  return finalize(best, q.length, m, q.dt);
}

TrajectoryTimeSeries render_nowind(const OptimalTraversal& plan, double course, double dt,
                                   const VehicleModel& m, double x0, double y0) {
  auto from_spline = [&](const SpeedSpline& s) {
    const SampledSpline smp = sample_spline(s, dt);
    TrajectoryTimeSeries ts;
    ts.t = smp.t;
    ts.v_g = smp.v;
    ts.v_a = smp.v;
    ts.a_a = smp.a;
    const std::size_t n = smp.t.size();
    ts.sigma.assign(n, course);
    ts.chi.assign(n, course);
    ts.sigma_dot.assign(n, 0.0);
    ts.power = m.power_series(smp.v, smp.a);
    for (double v : smp.v) ts.mode.push_back(m.flight_mode(v));
    return ts;
  };

  TrajectoryTimeSeries out = from_spline(build_spline(0.0, plan.v_c, plan.a_plus));
  if (plan.l_cruise > 0.0) {
    const SampleGrid g = sample_grid(plan.l_cruise / plan.v_c, dt);
    TrajectoryTimeSeries cruise;
    const double p = m.cruise_power(plan.v_c);
    const FlightMode mode = m.flight_mode(plan.v_c);
    for (std::size_t i = 0; i < g.size(); ++i) {
      cruise.t.push_back(i == g.intervals ? plan.l_cruise / plan.v_c : g.time(i));
      cruise.v_g.push_back(plan.v_c);
      cruise.v_a.push_back(plan.v_c);
      cruise.a_a.push_back(0.0);
      cruise.sigma.push_back(course);
      cruise.chi.push_back(course);
      cruise.sigma_dot.push_back(0.0);
      cruise.power.push_back(p);
      cruise.mode.push_back(mode);
    }
    out.append(cruise);
  }
  out.append(from_spline(build_spline(plan.v_c, 0.0, plan.a_minus)));
  out.finish(x0, y0);
  return out;
}

}  // namespace evtol
