#pragma once

// Expectation values of the momentum decomposition -i grad = p_R + i p_I, the
// boundary force, the position/momentum correlator and the uncertainty terms.
//
// Closed-form states work on every region kind (volume, line and boundary
// quadrature); grid states work on intervals and rectangles and feed the
// evolution time series.

#include <Eigen/Dense>
#include <algorithm>
#include <iterator>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "boxmom/core.hpp"
#include "boxmom/geometry.hpp"
#include "boxmom/model.hpp"
#include "boxmom/momentum_modes.hpp"
#include "boxmom/quadrature.hpp"
#include "boxmom/state.hpp"

namespace boxmom {

/// Named scalars plus string metadata (quadrature sizes, flags).
struct ObservableReport {
  std::map<std::string, double> values;
  std::map<std::string, std::string> meta;
  bool passed = true;

  double& operator[](const std::string& key) { return values[key]; }
  double at(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ArgumentError("report has no entry '" + key + "'");
    return it->second;
  }
  bool all_finite() const {
    return std::all_of(values.begin(), values.end(), [](const auto& kv) { return std::isfinite(kv.second); });
  }
};

struct SpectralOptions {
  int lines = 64;         // transverse Gauss nodes (2D)
  int modes = 64;         // |n| <= modes on each interval
  int resolution = 512;   // Gauss nodes along each interval
};

struct SpectralResult {
  double value = 0.0;
  double tail = 0.0;       // estimated truncation remainder
  double magnitude = 0.0;  // sum |k| |c|^2, the scale for the tail warning
  bool tail_warning = false;
  int lines = 0;
  int modes = 0;
};

namespace detail {

struct TransverseNode {
  double y0;
  double w;
};

inline std::vector<TransverseNode> transverse_nodes(const Region& region, Vec2 dir, int lines) {
  if (region.dimension() == 1) return {{0.0, 1.0}};
  std::vector<TransverseNode> out;
  for (const auto& n : quad::composite_with_breaks(transverse_breakpoints(region, dir), lines, 4)) {
    out.push_back({n.x, n.w});
  }
  return out;
}

inline LineSection section_at(const Region& region, Vec2 dir, double y0) {
  if (region.dimension() == 1) return line_section(region, dir);
  return line_section(region, dir, y0);
}

}  // namespace detail

// --- closed-form states ------------------------------------------------------------

inline double expect_density(const AnalyticState& psi, const Region& region, const QuadratureOptions& opt,
                             const std::function<double(Vec2)>& f) {
  double num = 0, den = 0;
  for (const auto& n : volume_quadrature(region, opt)) {
    const double rho = std::norm(psi.value(n.point));
    num += n.weight * rho * f(n.point);
    den += n.weight * rho;
  }
  return num / den;
}

/// int Psi* (-i k.grad) Psi dV over the region (unit-norm convention: divided
/// by the norm squared). Uses lines along k for the volume quadrature.
inline cplx expect_gradient(const AnalyticState& psi, const Region& region, Vec2 k, const QuadratureOptions& opt = {}) {
  require_unit(k, "direction");
  cplx num{};
  double den = 0;
  const Vec2 lines = region.dimension() == 1 ? Vec2{1, 0} : k;
  for (const auto& n : volume_quadrature(region, opt, lines)) {
    const cplx v = psi.value(n.point);
    num += n.weight * std::conj(v) * (-I) * psi.gradient(n.point).along(k);
    den += n.weight * std::norm(v);
  }
  return num / den;
}

/// Boundary average <f>_dOmega = closed integral of f |Psi|^2 (unit-norm convention).
inline double boundary_expectation(const AnalyticState& psi, const Region& region,
                                   const std::function<double(const BoundaryNode&)>& f, double norm_squared,
                                   int boundary_points = 2048) {
  double acc = 0;
  for (const auto& b : boundary_quadrature(region, boundary_points)) {
    acc += b.weight * f(b) * std::norm(psi.value(b.point));
  }
  return acc / norm_squared;
}

/// <k.p_I> = -1/2 closed integral (n.k) |Psi|^2.
inline double expect_pI(const AnalyticState& psi, const Region& region, Vec2 k, const QuadratureOptions& opt = {}) {
  require_unit(k, "direction");
  const double n2 = analytic_norm_squared(psi, region, opt);
  return -0.5 * boundary_expectation(psi, region, [k](const BoundaryNode& b) { return dot(b.normal, k); }, n2,
                                     opt.boundary_points);
}

/// Spectral <l.p_R>: transverse quadrature over lines along l, sum of
/// k |<Phi_k|Psi>|^2 over |n| <= modes on every section interval.
inline SpectralResult expect_pR_spectral(const AnalyticState& psi, const Region& region, Vec2 l,
                                         const SpectralOptions& opt = {}) {
  require_unit(l, "direction");
  if (region.dimension() == 1 && std::abs(std::abs(l.x) - 1.0) > 1e-12) {
    throw ArgumentError("1D momentum direction must be +-x");
  }
  SpectralResult out;
  out.modes = opt.modes;
  double norm2 = 0;
  for (const auto& tn : detail::transverse_nodes(region, l, opt.lines)) {
    const auto section = detail::section_at(region, l, tn.y0);
    if (!section.intervals.empty()) ++out.lines;
    for (const auto& iv : section.intervals) {
      const auto ladder = spectrum(iv, -opt.modes, opt.modes);
      const auto nodes = line_nodes(iv.x_minus, iv.x_plus, opt.resolution);
      std::vector<cplx> samples(nodes.size());
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        samples[j] = psi.value(section.point(nodes[j].x));
        norm2 += tn.w * nodes[j].w * std::norm(samples[j]);
      }
      const auto c = physical_coefficients(ladder, nodes, samples);
      double sum = 0, mag = 0;
      for (int n = -opt.modes; n <= opt.modes; ++n) {
        const double p = std::norm(c[n + opt.modes]);
        sum += ladder.k(n) * p;
        mag += std::abs(ladder.k(n)) * p;
      }
      const double last = std::abs(ladder.k(opt.modes)) * std::norm(c.back()) +
                          std::abs(ladder.k(-opt.modes)) * std::norm(c.front());
      out.value += tn.w * sum;
      out.magnitude += tn.w * mag;
      out.tail += tn.w * opt.modes * last;
    }
  }
  // sum |c_n|^2 over all n reproduces the line norm, so norm2 normalizes
  out.value /= norm2;
  out.magnitude /= norm2;
  out.tail /= norm2;
  out.tail_warning = out.tail > 1e-3 * out.magnitude;
  return out;
}

struct CorrelatorResult {
  cplx spectral{};
  cplx identity{};
  double difference = 0.0;
  double tail = 0.0;
  int modes = 0;
};

/// <(l.p_R)(m.x)> by the spectral sum over modes and by the boundary identity
/// <(m.x)(-i l.grad)> - i (l.m) + (i/2) <(n.l)(m.x)>_dOmega.
inline CorrelatorResult pR_position_correlator(const AnalyticState& psi, const Region& region, Vec2 l, Vec2 m,
                                               const SpectralOptions& sopt = {.modes = 128},
                                               const QuadratureOptions& qopt = {}, double tolerance = 1e-4) {
  require_unit(l, "l");
  require_unit(m, "m");
  CorrelatorResult out;
  out.modes = sopt.modes;

  // spectral route
  double norm2 = 0;
  cplx acc{};
  for (const auto& tn : detail::transverse_nodes(region, l, sopt.lines)) {
    const auto section = detail::section_at(region, l, tn.y0);
    for (const auto& iv : section.intervals) {
      const auto ladder = spectrum(iv, -sopt.modes, sopt.modes);
      const auto nodes = line_nodes(iv.x_minus, iv.x_plus, sopt.resolution);
      std::vector<cplx> a(nodes.size()), b(nodes.size());
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const Vec2 p = section.point(nodes[j].x);
        a[j] = psi.value(p);
        b[j] = dot(m, p) * a[j];
        norm2 += tn.w * nodes[j].w * std::norm(a[j]);
      }
      const auto c = physical_coefficients(ladder, nodes, a);
      const auto d = physical_coefficients(ladder, nodes, b);
      cplx line{};
      for (int n = -sopt.modes; n <= sopt.modes; ++n) {
        line += ladder.k(n) * std::conj(c[n + sopt.modes]) * d[n + sopt.modes];
      }
      const auto idx = c.size() - 1;
      out.tail += tn.w * sopt.modes *
                  (std::abs(ladder.k(sopt.modes) * std::conj(c[idx]) * d[idx]) +
                   std::abs(ladder.k(-sopt.modes) * std::conj(c[0]) * d[0]));
      acc += tn.w * line;
    }
  }
  out.spectral = acc / norm2;
  out.tail /= norm2;

  // identity route
  cplx vol{};
  double n2 = 0;
  const Vec2 dir = region.dimension() == 1 ? Vec2{1, 0} : l;
  for (const auto& n : volume_quadrature(region, qopt, dir)) {
    const cplx v = psi.value(n.point);
    vol += n.weight * std::conj(v) * dot(m, n.point) * (-I) * psi.gradient(n.point).along(l);
    n2 += n.weight * std::norm(v);
  }
  vol /= n2;
  const double bnd = boundary_expectation(
      psi, region, [&](const BoundaryNode& b) { return dot(b.normal, l) * dot(m, b.point); }, n2,
      qopt.boundary_points);
  out.identity = vol - I * dot(l, m) + 0.5 * I * bnd;
  out.difference = std::abs(out.spectral - out.identity);
  if (out.difference > tolerance) {
    throw ConsistencyError("correlator routes disagree by " + std::to_string(out.difference) +
                           " (raise modes or quadrature resolution)");
  }
  return out;
}

struct UncertaintyOptions {
  double mass = 1.0;
  double epsilon = 1e-8;
  QuadratureOptions quadrature{};
  SpectralOptions spectral{};
  bool include_spectral = true;
};

/// Every term of the summed uncertainty inequality
///   2m<T> >= sum_k |z_k|^2 / Dx_m^2 + <gamma> + sum_k (<p_R,k>^2 + <p_I,k>^2)
/// with z_k = 1/2<{p_R,x}> - <x><p_R> + (i/2)[(k.m) - <(n.k)x>_dOmega + <x><n.k>_dOmega].
inline ObservableReport uncertainty_report(const AnalyticState& psi, const Region& region,
                                           const std::vector<Vec2>& basis, Vec2 m,
                                           const UncertaintyOptions& opt = {}) {
  require_unit(m, "m");
  if (basis.empty() || basis.size() > static_cast<std::size_t>(region.dimension())) {
    throw ArgumentError("basis must hold between 1 and d directions");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require_unit(basis[i], "basis direction");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(dot(basis[i], basis[j])) > 1e-12) throw ArgumentError("basis must be orthonormal");
    }
  }
  if (region.dimension() == 1 && std::abs(std::abs(m.x) - 1.0) > 1e-12) throw ArgumentError("1D m must be +-x");

  ObservableReport r;
  const auto& q = opt.quadrature;
  const auto nodes = volume_quadrature(region, q);
  const auto bnodes = boundary_quadrature(region, q.boundary_points);

  double n2 = 0, xm = 0, xm2 = 0;
  for (const auto& n : nodes) {
    const double rho = std::norm(psi.value(n.point));
    const double x = dot(m, n.point);
    n2 += n.weight * rho;
    xm += n.weight * rho * x;
    xm2 += n.weight * rho * x * x;
  }
  xm /= n2;
  const double var = xm2 / n2 - xm * xm;
  if (!(var > 1e-24)) throw DomainError("position spread below 1e-12: degenerate denominator");
  const double dx = std::sqrt(var);
  r["norm_squared"] = n2;
  r["<x_m>"] = xm;
  r["Dx_m"] = dx;

  double gamma_b = 0;
  bool any_dirichlet = false;
  for (const auto& b : bnodes) {
    const double g = region.gamma_at(b.location);
    if (std::isinf(g)) {
      any_dirichlet = true;
      continue;  // Dirichlet: gamma |Psi|^2 -> 0 in the angle parameterization
    }
    gamma_b += b.weight * g * std::norm(psi.value(b.point));
  }
  gamma_b /= n2;
  r["<gamma>_dOmega"] = gamma_b;

  double lhs_grad = 0, rhs_z = 0, rhs_p = 0, kdotm = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Vec2 k = basis[i];
    const std::string tag = "[" + std::to_string(i) + "]";
    double grad2 = 0;
    cplx g{}, xg{};
    for (const auto& n : nodes) {
      const cplx v = psi.value(n.point);
      const cplx dk = psi.gradient(n.point).along(k);
      grad2 += n.weight * std::norm(dk);
      g += n.weight * std::conj(v) * (-I) * dk;
      xg += n.weight * std::conj(v) * dot(m, n.point) * (-I) * dk;
    }
    grad2 /= n2;
    g /= n2;
    xg /= n2;
    double nk = 0, nkx = 0;
    for (const auto& b : bnodes) {
      const double rho = std::norm(psi.value(b.point));
      nk += b.weight * dot(b.normal, k) * rho;
      nkx += b.weight * dot(b.normal, k) * dot(m, b.point) * rho;
    }
    nk /= n2;
    nkx /= n2;
    const double pR = g.real();
    const double pI = -0.5 * nk;
    const double anti = xg.real();  // 1/2 <{k.p_R, m.x}>
    const cplx z = cplx(anti - xm * pR, 0.5 * (dot(k, m) - nkx + xm * nk));
    r["<T_k>" + tag] = grad2 / (2 * opt.mass);
    r["Re<-i grad_k>" + tag] = g.real();
    r["Im<-i grad_k>" + tag] = g.imag();
    r["<p_R>" + tag] = pR;
    r["<p_I>" + tag] = pI;
    r["<n.k>_dOmega" + tag] = nk;
    r["<(n.k)(m.x)>_dOmega" + tag] = nkx;
    r["anticommutator/2" + tag] = anti;
    r["|z_k|^2/Dx^2" + tag] = std::norm(z) / var;
    if (opt.include_spectral) {
      const auto s = expect_pR_spectral(psi, region, k, opt.spectral);
      r["<p_R>_spectral" + tag] = s.value;
      r["<p_R>_spectral_tail" + tag] = s.tail;
      if (s.tail_warning) r.meta["warning" + tag] = "spectral truncation tail above 1e-3 of total";
    }
    lhs_grad += grad2;
    rhs_z += std::norm(z) / var;
    rhs_p += pR * pR + pI * pI;
    kdotm += dot(k, m) * dot(k, m) / (4 * var);
  }
  const double lhs = lhs_grad + gamma_b;
  const double rhs = rhs_z + gamma_b + rhs_p;
  r["<T>"] = lhs / (2 * opt.mass);
  r["(k.m)^2/(4Dx^2)"] = kdotm;
  r["rhs_anticommutator_terms"] = rhs_z;
  r["rhs_mean_momentum_terms"] = rhs_p;
  r["lhs"] = lhs;
  r["rhs"] = rhs;
  r["slack"] = lhs - rhs;
  r.passed = lhs - rhs >= -opt.epsilon && r.all_finite();
  r.meta["region"] = region.id();
  r.meta["lines"] = std::to_string(q.lines);
  r.meta["points_per_line"] = std::to_string(q.points_per_line);
  r.meta["boundary_points"] = std::to_string(q.boundary_points);
  r.meta["dirichlet_sides"] = any_dirichlet ? "yes" : "no";
  return r;
}

// --- grid states ----------------------------------------------------------------------

/// Scalar field of a physical grid state with its derivatives, computed once
/// and shared by the grid observables below.
struct GridField {
  Grid grid;
  std::vector<cplx> psi;
  GridDerivatives d;
  double norm2 = 0.0;

  explicit GridField(const WaveState& state)
      : grid(state.grid()), psi(state.scalar()), d(GridDerivatives::of(grid, psi)) {
    for (int j = 0; j <= grid.ny; ++j)
      for (int i = 0; i <= grid.nx; ++i) norm2 += grid.weight(i, j) * std::norm(psi[grid.index(i, j)]);
    if (!(norm2 > 0)) throw NumericalError("zero state");
  }
};

inline Vec2 mean_position(const GridField& f) {
  const Grid& g = f.grid;
  Vec2 acc{};
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) acc = acc + g.point(i, j) * (g.weight(i, j) * std::norm(f.psi[g.index(i, j)]));
  return acc / f.norm2;
}

/// <-i grad> per Cartesian component, from 2nd-order differences.
inline CVec2 expect_gradient(const GridField& f) {
  const Grid& g = f.grid;
  CVec2 acc{};
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i <= g.nx; ++i) {
      const auto k = g.index(i, j);
      const cplx c = g.weight(i, j) * std::conj(f.psi[k]) * (-I);
      acc.x += c * f.d.dx[k];
      acc.y += c * f.d.dy[k];
    }
  }
  return {acc.x / f.norm2, acc.y / f.norm2};
}

/// <p_I> per Cartesian component: -1/2 closed integral n |Psi|^2.
inline Vec2 expect_pI(const GridField& f) {
  Vec2 acc{};
  for (const auto& b : grid_boundary(f.grid)) acc = acc + b.normal * (b.weight * std::norm(f.psi[b.index]));
  return acc * (-0.5 / f.norm2);
}

/// Spectral <l.p_R> from grid rows (l = +-x) or columns (l = +-y), trapezoid
/// weights along and across lines.
inline SpectralResult expect_pR_spectral(const GridField& f, const Region& region, Vec2 l, int modes = 64) {
  require_unit(l, "direction");
  const Grid& g = f.grid;
  const bool along_x = std::abs(std::abs(l.x) - 1.0) < 1e-12;
  const bool along_y = g.dim == 2 && std::abs(std::abs(l.y) - 1.0) < 1e-12;
  if (!along_x && !along_y) throw DomainError("grid spectral sums need an axis direction");
  const double sign = along_x ? l.x : l.y;
  SpectralResult out;
  out.modes = modes;
  const int lines = along_x ? g.ny : g.nx;
  const int len = along_x ? g.nx : g.ny;
  const double h = along_x ? g.hx : g.hy;
  const double ht = along_x ? g.hy : g.hx;
  const Vec2 axis = along_x ? Vec2{1, 0} : Vec2{0, 1};
  const double s0 = along_x ? g.x0 : g.y0;
  const auto at = [&](int t, int i) { return f.psi[along_x ? g.index(i, t) : g.index(t, i)]; };
  // Lines sharing a ladder are projected together: C = T S with
  // T(n, i) = w_i e^{-i k_n s_i} / sqrt(2L) and S(i, line) = Psi.
  struct Group {
    SpectrumLadder ladder;
    std::vector<int> lines;
  };
  std::vector<Group> groups;
  for (int t = 0; t <= lines; ++t) {
    ++out.lines;
    bool zero = true;
    for (int i = 0; i <= len && zero; ++i) zero = at(t, i) == cplx{};
    if (zero) continue;
    // interval sides [left, right]; rectangle sides [bottom, right, top, left]
    std::size_t minus_side = 0, plus_side = 1;
    double tm = 0.5, tp = 0.5;
    if (g.dim == 2) {
      const double frac = static_cast<double>(t) / lines;
      if (along_x) {
        minus_side = 3;
        plus_side = 1;
        tm = 1.0 - frac;
        tp = frac;
      } else {
        minus_side = 0;
        plus_side = 2;
        tm = frac;
        tp = 1.0 - frac;
      }
    }
    const auto iv = make_interval(s0, s0 + len * h, region.lambda_at(axis, region.location(minus_side, tm)),
                                  region.lambda_at(axis, region.location(plus_side, tp)));
    auto ladder = spectrum(iv, -modes, modes);
    auto same = [&](const Group& gr) { return gr.ladder.k(-modes) == ladder.k(-modes) && gr.ladder.k(modes) == ladder.k(modes); };
    auto it = std::find_if(groups.begin(), groups.end(), same);
    if (it == groups.end()) {
      groups.push_back({std::move(ladder), {}});
      it = std::prev(groups.end());
    }
    it->lines.push_back(t);
  }
  const int count = 2 * modes + 1;
  for (const auto& gr : groups) {
    const auto& ladder = gr.ladder;
    Eigen::MatrixXcd T(count, len + 1);
    const double pref = 1.0 / std::sqrt(2.0 * ladder.length);
    for (int i = 0; i <= len; ++i) {
      const double si = s0 + i * h;
      const double w = (i == 0 || i == len ? 0.5 : 1.0) * h * pref;
      for (int n = -modes; n <= modes; ++n) T(n + modes, i) = w * std::exp(-I * ladder.k(n) * si);
    }
    Eigen::MatrixXcd S(len + 1, static_cast<Eigen::Index>(gr.lines.size()));
    for (std::size_t c = 0; c < gr.lines.size(); ++c)
      for (int i = 0; i <= len; ++i) S(i, c) = at(gr.lines[c], i);
    const Eigen::MatrixXcd C = T * S;
    for (std::size_t c = 0; c < gr.lines.size(); ++c) {
      const int t = gr.lines[c];
      const double wt = g.dim == 1 ? 1.0 : (t == 0 || t == lines ? 0.5 : 1.0) * ht;
      for (int n = -modes; n <= modes; ++n) {
        const double p = std::norm(C(n + modes, c));
        out.value += wt * ladder.k(n) * p;
        out.magnitude += wt * std::abs(ladder.k(n)) * p;
      }
      out.tail += wt * modes *
                  (std::abs(ladder.k(modes)) * std::norm(C(count - 1, c)) + std::abs(ladder.k(-modes)) * std::norm(C(0, c)));
    }
  }
  out.value *= sign / f.norm2;
  out.magnitude /= f.norm2;
  out.tail /= f.norm2;
  out.tail_warning = out.tail > 1e-3 * out.magnitude;
  return out;
}

inline Vec2 expect_grad_V(const GridField& f, const Potential& V, double mass) {
  const Grid& g = f.grid;
  Vec2 acc{};
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i)
      acc = acc + V.gradient(g.point(i, j), mass) * (g.weight(i, j) * std::norm(f.psi[g.index(i, j)]));
  acc = acc / f.norm2;
  if (g.dim == 1) acc.y = 0;
  return acc;
}

/// F_B = (1/2m) closed integral [gamma grad|Psi|^2 + n (lap|Psi|^2 - |grad Psi|^2)].
/// Dirichlet sides use the limit gamma grad|Psi|^2 -> -2 Re(conj(d_n Psi) grad Psi),
/// which leaves -n |d_n Psi|^2.
inline Vec2 boundary_force(const GridField& f, const std::vector<SideBC>& sides, double mass,
                           int only_side = -1) {
  const Grid& g = f.grid;
  const std::size_t expect = g.dim == 1 ? 2 : 4;
  if (sides.size() != expect) throw ArgumentError("side condition count does not match the grid");
  Vec2 acc{};
  for (const auto& b : grid_boundary(g)) {
    if (only_side >= 0 && b.side != only_side) continue;
    const auto k = b.index;
    const CVec2 grad{f.d.dx[k], f.d.dy[k]};
    const double grad2 = std::norm(grad.x) + std::norm(grad.y);
    const SideBC& bc = sides[b.side];
    if (bc.dirichlet) {
      acc = acc - b.normal * (b.weight * std::norm(grad.along(b.normal)));
      continue;
    }
    const cplx v = f.psi[k];
    const double gamma = bc.gamma.real();
    const Vec2 grad_rho{2 * std::real(std::conj(v) * grad.x), 2 * std::real(std::conj(v) * grad.y)};
    const double lap_rho = 2 * grad2 + 2 * std::real(std::conj(v) * (f.d.dxx[k] + f.d.dyy[k]));
    acc = acc + (grad_rho * gamma + b.normal * (lap_rho - grad2)) * b.weight;
  }
  acc = acc / (2 * mass * f.norm2);
  if (g.dim == 1) acc.y = 0;
  return acc;
}

/// d<p_I>/dt from the continuity equation: 1/2 closed integral n div j, with
/// div j = Im(conj(Psi) lap Psi) / m.
inline Vec2 pI_rate_from_current(const GridField& f, double mass) {
  Vec2 acc{};
  for (const auto& b : grid_boundary(f.grid)) {
    const auto k = b.index;
    const double divj = std::imag(std::conj(f.psi[k]) * (f.d.dxx[k] + f.d.dyy[k])) / mass;
    acc = acc + b.normal * (0.5 * b.weight * divj);
  }
  return acc / f.norm2;
}

/// Closed integral of |n.j| and the max of |n.j| over boundary nodes.
inline std::pair<double, double> boundary_flux_stats(const GridField& f, double mass) {
  double flux = 0, peak = 0;
  for (const auto& b : grid_boundary(f.grid)) {
    const auto k = b.index;
    const cplx dn = CVec2{f.d.dx[k], f.d.dy[k]}.along(b.normal);
    const double jn = std::abs(std::imag(std::conj(f.psi[k]) * dn) / mass);
    flux += b.weight * jn;
    peak = std::max(peak, jn);
  }
  return {flux, peak};
}

inline Vec2 mean_position(const WaveState& s) { return mean_position(GridField(s)); }
inline CVec2 expect_gradient(const WaveState& s) { return expect_gradient(GridField(s)); }
inline Vec2 expect_pI(const WaveState& s) { return expect_pI(GridField(s)); }
inline SpectralResult expect_pR_spectral(const WaveState& s, const Region& region, Vec2 l, int modes = 64) {
  return expect_pR_spectral(GridField(s), region, l, modes);
}
inline Vec2 expect_grad_V(const WaveState& s, const Potential& V, double mass) {
  return expect_grad_V(GridField(s), V, mass);
}
inline Vec2 boundary_force(const WaveState& s, const std::vector<SideBC>& sides, double mass) {
  return boundary_force(GridField(s), sides, mass);
}
inline Vec2 pI_rate_from_current(const WaveState& s, double mass) { return pI_rate_from_current(GridField(s), mass); }

}  // namespace boxmom
