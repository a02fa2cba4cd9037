#pragma once

// Residual series of the Ehrenfest relations along a recorded run:
//   m d<x>/dt = <p_R>
//   d<p_R>/dt = -<grad V> + F_B
//   d<p_I>/dt = 1/2 closed integral (n.k) div j
// Time derivatives are centered differences of the recorded series.

#include <cmath>
#include <functional>
#include <vector>

#include "boxmom/evolution.hpp"

namespace boxmom {

struct ResidualSeries {
  std::vector<double> t;
  std::vector<double> residual;

  double max() const {
    double m = 0;
    for (double r : residual) m = std::max(m, r);
    return m;
  }
  /// root mean square over all samples
  double rms() const {
    double acc = 0;
    for (double r : residual) acc += r * r;
    return residual.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(residual.size()));
  }
  /// max over samples with t in [t0, t1]
  double max_in(double t0, double t1) const {
    double m = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= t0 && t[i] <= t1) m = std::max(m, residual[i]);
    return m;
  }
};

namespace detail {

inline ResidualSeries centered_residual(const EvolutionRun& run, const std::function<double(const Snapshot&)>& f,
                                        const std::function<double(const Snapshot&)>& rate) {
  const auto& s = run.series;
  if (s.size() < 3) throw ArgumentError("Ehrenfest residuals need at least 3 recorded steps");
  const double tau = run.dt * run.record_every;
  ResidualSeries out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double deriv = (f(s[i + 1]) - f(s[i - 1])) / (2 * tau);
    out.t.push_back(s[i].t);
    out.residual.push_back(std::abs(deriv - rate(s[i])));
  }
  return out;
}

}  // namespace detail

/// |m d<l.x>/dt - <l.p_R>|.
inline ResidualSeries ehrenfest_position_residual(const EvolutionRun& run, Vec2 l) {
  require_unit(l, "direction");
  const double m = run.mass;
  return detail::centered_residual(
      run, [&](const Snapshot& s) { return m * dot(l, s.position); }, [&](const Snapshot& s) { return dot(l, s.pR); });
}

/// |d<l.p_R>/dt + <l.grad V> - l.F_B|; the ablation drops F_B.
inline ResidualSeries ehrenfest_momentum_residual(const EvolutionRun& run, Vec2 l, bool include_boundary_force = true) {
  require_unit(l, "direction");
  return detail::centered_residual(
      run, [&](const Snapshot& s) { return dot(l, s.pR); },
      [&](const Snapshot& s) {
        return -dot(l, s.grad_V) + (include_boundary_force ? dot(l, s.boundary_force) : 0.0);
      });
}

/// |d<l.p_I>/dt - 1/2 closed integral (n.l) div j|.
inline ResidualSeries pI_rate_residual(const EvolutionRun& run, Vec2 l) {
  require_unit(l, "direction");
  return detail::centered_residual(
      run, [&](const Snapshot& s) { return dot(l, s.pI); }, [&](const Snapshot& s) { return dot(l, s.pI_rate); });
}

/// Trapezoid integral of l.F_B over recorded times in [t0, t1].
/// side = -1 integrates the total boundary force, otherwise one grid side.
inline double boundary_impulse(const EvolutionRun& run, Vec2 l, double t0, double t1, int side = -1) {
  double acc = 0;
  const auto& s = run.series;
  const auto force = [&](const Snapshot& o) {
    if (side < 0) return o.boundary_force;
    if (side >= static_cast<int>(o.side_force.size())) throw ArgumentError("side index out of range");
    return o.side_force[side];
  };
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i].t < t0 || s[i + 1].t > t1) continue;
    acc += 0.5 * (s[i + 1].t - s[i].t) * (dot(l, force(s[i])) + dot(l, force(s[i + 1])));
  }
  return acc;
}

/// Observed order from errors at spacing ratio 2.
inline double convergence_order(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace boxmom
