#pragma once

// Spectrum and generalized eigenfunctions of the self-adjoint momentum
// l.p_R = -i sigma_1 l.grad on line sections.
//
// On an interval (x-, x+) of length L with extension parameters lambda_-,
// lambda_+ (purely imaginary) the eigenfunctions are
//
//   Phi_e = (e^{iks} + sigma e^{-iks}) / (2 sqrt(L))
//   Phi_o = (e^{iks} - sigma e^{-iks}) / (2 sqrt(L))
//
// with sigma = e^{2ik x-} (1 - lambda_-)/(1 + lambda_-) and k on the ladder
// k_n = pi n / L + theta, exp(2i theta L) = (1+l+)(1-l-) / ((1-l+)(1+l-)).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "boxmom/core.hpp"
#include "boxmom/geometry.hpp"
#include "boxmom/quadrature.hpp"

namespace boxmom {

inline constexpr double degeneracy_tolerance = 1e-9;

inline void require_imaginary(cplx lambda, const char* what) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()) || std::abs(lambda.real()) > 1e-12) {
    throw ValidationError(std::string(what) + " must be purely imaginary (self-adjointness of l.p_R)");
  }
}

/// The unit-modulus ratio (1+l+)(1-l-) / ((1-l+)(1+l-)).
inline cplx mobius_ratio(cplx lambda_minus, cplx lambda_plus) {
  return (1.0 + lambda_plus) * (1.0 - lambda_minus) / ((1.0 - lambda_plus) * (1.0 + lambda_minus));
}

/// Unique theta in [0, pi/L) with exp(2i theta L) equal to the Moebius ratio.
inline double theta_offset(cplx lambda_minus, cplx lambda_plus, double length) {
  require_imaginary(lambda_minus, "lambda_-");
  require_imaginary(lambda_plus, "lambda_+");
  if (!(length > 0)) throw ArgumentError("interval length must be positive");
  const cplx ratio = mobius_ratio(lambda_minus, lambda_plus);
  double theta = std::arg(ratio) / (2 * length);
  const double period = pi / length;
  if (theta < 0) theta += period;
  if (theta >= period) theta -= period;
  return theta;
}

struct SpectrumLadder {
  double theta = 0.0;
  double length = 1.0;
  cplx lambda_minus{};
  cplx lambda_plus{};
  int n_min = 0;
  int n_max = 0;

  double spacing() const { return pi / length; }
  double k(int n) const { return pi * n / length + theta; }
  std::vector<double> values() const {
    std::vector<double> out;
    for (int n = n_min; n <= n_max; ++n) out.push_back(k(n));
    return out;
  }
  /// |exp(2ikL) - ratio| for the given eigenvalue.
  double quantization_residual(double k_value) const {
    return std::abs(std::exp(2.0 * I * k_value * length) - mobius_ratio(lambda_minus, lambda_plus));
  }
};

inline SpectrumLadder spectrum(const SectionInterval& iv, int n_min, int n_max) {
  if (n_min > n_max) throw ArgumentError("spectrum needs n_min <= n_max");
  SpectrumLadder out;
  out.length = iv.length();
  out.theta = theta_offset(iv.lambda_minus, iv.lambda_plus, out.length);
  out.lambda_minus = iv.lambda_minus;
  out.lambda_plus = iv.lambda_plus;
  out.n_min = n_min;
  out.n_max = n_max;
  return out;
}

/// Convenience: a bare interval (x-, x+) with the given extension parameters.
inline SectionInterval make_interval(double x_minus, double x_plus, cplx lambda_minus = {}, cplx lambda_plus = {}) {
  SectionInterval iv;
  iv.x_minus = x_minus;
  iv.x_plus = x_plus;
  iv.lambda_minus = lambda_minus;
  iv.lambda_plus = lambda_plus;
  return iv;
}

struct MomentumMode {
  SectionInterval interval;
  int n = 0;
  double k = 0.0;
  cplx sigma{1.0, 0.0};
  double norm_const = 0.5;
  std::vector<double> anchor;

  cplx even(double s) const { return norm_const * (std::exp(I * k * s) + sigma * std::exp(-I * k * s)); }
  cplx odd(double s) const { return norm_const * (std::exp(I * k * s) - sigma * std::exp(-I * k * s)); }
  cplx even_derivative(double s) const {
    return norm_const * I * k * (std::exp(I * k * s) - sigma * std::exp(-I * k * s));
  }
  cplx odd_derivative(double s) const {
    return norm_const * I * k * (std::exp(I * k * s) + sigma * std::exp(-I * k * s));
  }
  /// Component along the physical direction (1, 1)/sqrt(2): e^{iks}/sqrt(2L).
  cplx plus(double s) const { return (even(s) + odd(s)) / std::sqrt(2.0); }
  /// max |Phi_o - lambda Phi_e| over the two endpoints.
  double boundary_residual() const {
    return std::max(std::abs(odd(interval.x_minus) - interval.lambda_minus * even(interval.x_minus)),
                    std::abs(odd(interval.x_plus) - interval.lambda_plus * even(interval.x_plus)));
  }
};

inline MomentumMode build_mode(const SectionInterval& iv, int n, std::vector<double> anchor = {}) {
  require_imaginary(iv.lambda_minus, "lambda_-");
  require_imaginary(iv.lambda_plus, "lambda_+");
  const double length = iv.length();
  if (!(length > 0)) throw ArgumentError("interval length must be positive");
  MomentumMode m;
  m.interval = iv;
  m.n = n;
  m.k = pi * n / length + theta_offset(iv.lambda_minus, iv.lambda_plus, length);
  // |1 + lambda| >= 1 for imaginary lambda
  m.sigma = std::exp(2.0 * I * m.k * iv.x_minus) * (1.0 - iv.lambda_minus) / (1.0 + iv.lambda_minus);
  m.norm_const = 1.0 / (2.0 * std::sqrt(length));
  m.anchor = std::move(anchor);
  return m;
}

// --- projections -------------------------------------------------------------

/// A two-component wave function restricted to a line, with its support.
struct LineState {
  double s_min = 0.0;
  double s_max = 1.0;
  std::function<std::array<cplx, 2>(double)> eval;

  /// Embeds a physical single-component field as (psi, psi)/sqrt(2).
  static LineState physical(double a, double b, std::function<cplx(double)> psi) {
    return {a, b, [psi = std::move(psi)](double s) {
              const cplx v = psi(s) / std::sqrt(2.0);
              return std::array<cplx, 2>{v, v};
            }};
  }
};

inline std::vector<quad::Node> line_nodes(double a, double b, int resolution) {
  constexpr int order = 8;
  const int panels = std::max(1, (resolution + order - 1) / order);
  return quad::composite(a, b, panels, order);
}

/// <mode | state> in the doubled inner product, over the mode's interval.
inline cplx project(const LineState& state, const MomentumMode& mode, int resolution = 2048) {
  const auto& iv = mode.interval;
  if (iv.x_minus < state.s_min - 1e-12 || iv.x_plus > state.s_max + 1e-12) {
    throw DomainError("mode interval lies outside the state's support");
  }
  cplx acc{};
  for (const auto& node : line_nodes(iv.x_minus, iv.x_plus, resolution)) {
    const auto v = state.eval(node.x);
    acc += node.w * (std::conj(mode.even(node.x)) * v[0] + std::conj(mode.odd(node.x)) * v[1]);
  }
  return acc;
}

/// Coefficients <Phi_n | (psi, psi)/sqrt(2)> = (1/sqrt(2L)) int e^{-i k_n s} psi ds for
/// n in [n_min, n_max], from samples of psi at quadrature nodes.
inline std::vector<cplx> physical_coefficients(const SpectrumLadder& ladder, std::span<const quad::Node> nodes,
                                               std::span<const cplx> psi) {
  const int count = ladder.n_max - ladder.n_min + 1;
  std::vector<cplx> c(count);
  const double pref = 1.0 / std::sqrt(2.0 * ladder.length);
  const double dk = ladder.spacing();
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double s = nodes[j].x;
    const cplx f = nodes[j].w * psi[j] * pref;
    cplx phase = std::exp(-I * ladder.k(ladder.n_min) * s);
    const cplx step = std::exp(-I * dk * s);
    for (int i = 0; i < count; ++i) {
      c[i] += f * phase;
      phase *= step;
    }
  }
  return c;
}

/// Doubled inner products <Phi_a|Phi_b> and momentum elements
/// <Phi_a| -i sigma_1 d/ds |Phi_b> over one interval, by Gauss quadrature.
struct ModeMatrices {
  std::vector<std::vector<cplx>> gram;
  std::vector<std::vector<cplx>> momentum;

  /// max |G - 1|
  double gram_deviation() const {
    double d = 0;
    for (std::size_t a = 0; a < gram.size(); ++a)
      for (std::size_t b = 0; b < gram.size(); ++b) d = std::max(d, std::abs(gram[a][b] - (a == b ? 1.0 : 0.0)));
    return d;
  }
  /// max |P - P^dagger|
  double hermiticity_deviation() const {
    double d = 0;
    for (std::size_t a = 0; a < momentum.size(); ++a)
      for (std::size_t b = 0; b < momentum.size(); ++b)
        d = std::max(d, std::abs(momentum[a][b] - std::conj(momentum[b][a])));
    return d;
  }
};

inline ModeMatrices mode_matrices(const std::vector<MomentumMode>& modes, int resolution = 1000) {
  ModeMatrices out;
  const std::size_t n = modes.size();
  out.gram.assign(n, std::vector<cplx>(n));
  out.momentum.assign(n, std::vector<cplx>(n));
  if (modes.empty()) return out;
  const auto& iv = modes.front().interval;
  for (const auto& m : modes)
    if (m.interval.x_minus != iv.x_minus || m.interval.x_plus != iv.x_plus)
      throw ArgumentError("mode matrices need modes on one interval");
  for (const auto& node : line_nodes(iv.x_minus, iv.x_plus, resolution)) {
    for (std::size_t a = 0; a < n; ++a) {
      const cplx ea = std::conj(modes[a].even(node.x)), oa = std::conj(modes[a].odd(node.x));
      for (std::size_t b = 0; b < n; ++b) {
        const auto& mb = modes[b];
        out.gram[a][b] += node.w * (ea * mb.even(node.x) + oa * mb.odd(node.x));
        out.momentum[a][b] += node.w * (-I) * (ea * mb.odd_derivative(node.x) + oa * mb.even_derivative(node.x));
      }
    }
  }
  return out;
}

// --- union spectra on non-convex sections -------------------------------------

struct UnionEntry {
  std::size_t interval_id = 0;
  MomentumMode mode;
  bool degenerate = false;
};

struct UnionSpectrum {
  std::vector<UnionEntry> entries;
  /// Index pairs into `entries` whose eigenvalues coincide across intervals.
  std::vector<std::pair<std::size_t, std::size_t>> degenerate_pairs;

  bool any_degenerate() const { return !degenerate_pairs.empty(); }
};

inline UnionSpectrum union_spectrum(const LineSection& section, int n_min, int n_max) {
  UnionSpectrum out;
  for (std::size_t i = 0; i < section.intervals.size(); ++i) {
    for (int n = n_min; n <= n_max; ++n) {
      out.entries.push_back({i, build_mode(section.intervals[i], n, section.anchor), false});
    }
  }
  // ladders are sorted per interval; a merge over all entries sorted by k
  std::vector<std::size_t> order(out.entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.entries[a].mode.k < out.entries[b].mode.k; });
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      auto& ea = out.entries[order[a]];
      auto& eb = out.entries[order[b]];
      if (eb.mode.k - ea.mode.k > degeneracy_tolerance) break;
      if (ea.interval_id == eb.interval_id) continue;
      ea.degenerate = eb.degenerate = true;
      out.degenerate_pairs.emplace_back(std::min(order[a], order[b]), std::max(order[a], order[b]));
    }
  }
  return out;
}

// --- Poisson boundary sums ---------------------------------------------------

struct PoissonSum {
  cplx value{};
  int truncation = 0;
};

enum class Endpoint { minus, plus };

/// Fejer-averaged sum over |n| <= N of <Psi|Phi_n> Phi_{n,+}^*(endpoint) for a
/// physical state psi on the interval; tends to conj(psi(endpoint)) / 2.
inline PoissonSum poisson_boundary_sum(const SectionInterval& iv, const std::function<cplx(double)>& psi,
                                       Endpoint endpoint, int truncation, int resolution = 4096) {
  if (truncation < 0) throw ArgumentError("truncation must be non-negative");
  const auto ladder = spectrum(iv, -truncation, truncation);
  const auto nodes = line_nodes(iv.x_minus, iv.x_plus, resolution);
  std::vector<cplx> samples(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) samples[j] = psi(nodes[j].x);
  const auto c = physical_coefficients(ladder, nodes, samples);
  const double x = endpoint == Endpoint::minus ? iv.x_minus : iv.x_plus;
  const double pref = 1.0 / std::sqrt(2.0 * iv.length());
  cplx acc{};
  for (int n = -truncation; n <= truncation; ++n) {
    const double fejer = 1.0 - std::abs(n) / (truncation + 1.0);
    const cplx plus_conj = pref * std::exp(-I * ladder.k(n) * x);
    acc += fejer * std::conj(c[n + truncation]) * plus_conj;
  }
  return {acc, truncation};
}

}  // namespace boxmom
