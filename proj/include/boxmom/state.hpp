#pragma once

// Two-component wave functions (Psi_e, Psi_o) in the doubled Hilbert space.
//
// Physical states are embedded as Psi_e = Psi_o = Psi / sqrt(2), so the doubled
// norm equals the single-component norm of Psi. Two representations exist:
// uniform grids on intervals and rectangles (boundary nodes on the boundary),
// and closed-form evaluators usable on any region.

#include <algorithm>
#include <cmath>
#include <random>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "boxmom/core.hpp"
#include "boxmom/geometry.hpp"
#include "boxmom/quadrature.hpp"

namespace boxmom {

// --- grids -------------------------------------------------------------------

/// Uniform node grid over an interval (ny == 0) or a rectangle. nx, ny count
/// intervals; nodes run 0..nx and 0..ny, with node (i, j) at index j*(nx+1)+i.
struct Grid {
  int dim = 1;
  double x0 = 0.0;
  double y0 = 0.0;
  int nx = 1;
  int ny = 0;
  double hx = 1.0;
  double hy = 1.0;

  static Grid for_region(const Region& region, double h) {
    if (!(h > 0)) throw ArgumentError("grid spacing must be positive");
    Grid g;
    if (region.kind() == RegionKind::interval) {
      g.dim = 1;
      g.x0 = region.a();
      g.nx = std::max(4, static_cast<int>(std::lround(region.lx() / h)));
      g.hx = region.lx() / g.nx;
      g.ny = 0;
      g.hy = 1.0;
      return g;
    }
    if (region.kind() != RegionKind::rectangle) {
      throw DomainError("grids exist for intervals and rectangles only");
    }
    g.dim = 2;
    g.x0 = region.origin().x;
    g.y0 = region.origin().y;
    g.nx = std::max(4, static_cast<int>(std::lround(region.lx() / h)));
    g.ny = std::max(4, static_cast<int>(std::lround(region.ly() / h)));
    g.hx = region.lx() / g.nx;
    g.hy = region.ly() / g.ny;
    return g;
  }

  std::size_t size() const { return static_cast<std::size_t>(nx + 1) * (ny + 1); }
  std::size_t index(int i, int j = 0) const { return static_cast<std::size_t>(j) * (nx + 1) + i; }
  Vec2 point(int i, int j = 0) const { return {x0 + i * hx, dim == 2 ? y0 + j * hy : 0.0}; }
  /// Trapezoid weight of node (i, j), including the cell volume.
  double weight(int i, int j = 0) const {
    const double wx = (i == 0 || i == nx) ? 0.5 : 1.0;
    if (dim == 1) return wx * hx;
    const double wy = (j == 0 || j == ny) ? 0.5 : 1.0;
    return wx * wy * hx * hy;
  }
  bool operator==(const Grid&) const = default;
};

// --- closed-form states --------------------------------------------------------

/// Smooth single-component field with analytic derivatives.
struct AnalyticState {
  std::function<cplx(Vec2)> value;
  std::function<CVec2(Vec2)> gradient;
  std::function<cplx(Vec2)> laplacian;

  AnalyticState scaled(cplx factor) const {
    return {[f = value, factor](Vec2 p) { return factor * f(p); },
            [g = gradient, factor](Vec2 p) {
              const CVec2 v = g(p);
              return CVec2{factor * v.x, factor * v.y};
            },
            [l = laplacian, factor](Vec2 p) { return factor * l(p); }};
  }
};

inline AnalyticState operator+(const AnalyticState& a, const AnalyticState& b) {
  return {[fa = a.value, fb = b.value](Vec2 p) { return fa(p) + fb(p); },
          [ga = a.gradient, gb = b.gradient](Vec2 p) {
            const CVec2 u = ga(p), v = gb(p);
            return CVec2{u.x + v.x, u.y + v.y};
          },
          [la = a.laplacian, lb = b.laplacian](Vec2 p) { return la(p) + lb(p); }};
}

/// exp(-|x - c|^2 / (4 w^2) + i p.x): |psi|^2 has standard deviation w per axis.
inline AnalyticState gaussian_packet(Vec2 center, double width, Vec2 momentum) {
  const double a = 1.0 / (4 * width * width);
  const auto f = [=](Vec2 p) {
    const Vec2 d = p - center;
    return std::exp(cplx(-a * dot(d, d), dot(momentum, p)));
  };
  return {f,
          [=](Vec2 p) {
            const Vec2 d = p - center;
            const cplx v = f(p);
            return CVec2{v * cplx(-2 * a * d.x, momentum.x), v * cplx(-2 * a * d.y, momentum.y)};
          },
          [=](Vec2 p) {
            const Vec2 d = p - center;
            const cplx v = f(p);
            const cplx gx = cplx(-2 * a * d.x, momentum.x), gy = cplx(-2 * a * d.y, momentum.y);
            return v * (gx * gx + gy * gy - 4 * a);
          }};
}

/// 1D Gaussian packet (the y coordinate is ignored).
inline AnalyticState gaussian_packet_1d(double center, double width, double momentum) {
  const double a = 1.0 / (4 * width * width);
  const auto f = [=](Vec2 p) { return std::exp(cplx(-a * (p.x - center) * (p.x - center), momentum * p.x)); };
  return {f,
          [=](Vec2 p) { return CVec2{f(p) * cplx(-2 * a * (p.x - center), momentum), 0.0}; },
          [=](Vec2 p) {
            const cplx g = cplx(-2 * a * (p.x - center), momentum);
            return f(p) * (g * g - 2 * a);
          }};
}

/// Product of standing waves sin(kx (x - x0) + phx) * sin(ky (y - y0) + phy).
/// Use ky = 0, phy = pi/2 for 1D.
inline AnalyticState standing_wave(double kx, double phx, double ky, double phy, Vec2 origin = {}) {
  return {[=](Vec2 p) {
            return cplx(std::sin(kx * (p.x - origin.x) + phx) * std::sin(ky * (p.y - origin.y) + phy));
          },
          [=](Vec2 p) {
            const double ax = kx * (p.x - origin.x) + phx, ay = ky * (p.y - origin.y) + phy;
            return CVec2{kx * std::cos(ax) * std::sin(ay), ky * std::sin(ax) * std::cos(ay)};
          },
          [=](Vec2 p) {
            const double ax = kx * (p.x - origin.x) + phx, ay = ky * (p.y - origin.y) + phy;
            return cplx(-(kx * kx + ky * ky) * std::sin(ax) * std::sin(ay));
          }};
}

struct RandomStateOptions {
  int packets = 2;
  double width_min = 0.08;  // as a fraction of the smaller region extent
  double width_max = 0.15;
  double margin = 0.0;  // minimum center-to-boundary distance, in widths
  double momentum_max = 3.0;
};

/// Superposition of Gaussian packets with random centers, widths, momenta and
/// complex amplitudes. Centers are drawn inside the region at least
/// `margin * width` from the boundary.
template <class Rng>
AnalyticState random_packet_state(const Region& region, Rng& rng, const RandomStateOptions& opt = {}) {
  if (opt.packets < 1) throw ArgumentError("need at least one packet");
  const bool one_d = region.dimension() == 1;
  Vec2 lo = region.origin(), hi = lo + Vec2{region.lx(), one_d ? 0.0 : region.ly()};
  if (!region.vertices().empty()) {
    lo = hi = region.vertices().front();
    for (const Vec2 v : region.vertices()) {
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
  }
  const double extent = one_d ? hi.x - lo.x : std::min(hi.x - lo.x, hi.y - lo.y);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  AnalyticState out;
  for (int k = 0; k < opt.packets; ++k) {
    const double width = extent * (opt.width_min + (opt.width_max - opt.width_min) * u01(rng));
    Vec2 c{};
    for (int tries = 0;; ++tries) {
      if (tries > 10000) throw ArgumentError("no packet center satisfies the boundary margin");
      c = {lo.x + (hi.x - lo.x) * u01(rng), one_d ? 0.0 : lo.y + (hi.y - lo.y) * u01(rng)};
      const double dist = one_d ? std::min(c.x - lo.x, hi.x - c.x) : region.distance_to_boundary(c);
      if ((one_d || region.contains(c)) && dist >= opt.margin * width) break;
    }
    const Vec2 p{opt.momentum_max * (2 * u01(rng) - 1), one_d ? 0.0 : opt.momentum_max * (2 * u01(rng) - 1)};
    const cplx amp = std::polar(0.5 + u01(rng), 2 * pi * u01(rng));
    const AnalyticState g = (one_d ? gaussian_packet_1d(c.x, width, p.x) : gaussian_packet(c, width, p)).scaled(amp);
    out = k == 0 ? g : out + g;
  }
  return out;
}

/// psi minus the transfinite (Coons) interpolation of its wall values on an
/// interval or rectangle, so the result vanishes on every side. Value only:
/// the gradient and Laplacian members are left empty.
inline AnalyticState wall_corrected(const AnalyticState& psi, const Region& region) {
  if (region.kind() != RegionKind::interval && region.kind() != RegionKind::rectangle) {
    throw DomainError("wall correction needs an interval or a rectangle");
  }
  const Vec2 o = region.origin();
  const double lx = region.lx();
  const bool one_d = region.dimension() == 1;
  const double ly = one_d ? 0.0 : region.ly();
  auto f = psi.value;
  AnalyticState out;
  out.value = [=](Vec2 p) {
    const double u = (p.x - o.x) / lx;
    const cplx px = (1 - u) * f({o.x, p.y}) + u * f({o.x + lx, p.y});
    if (one_d) return f(p) - px;
    const double v = (p.y - o.y) / ly;
    const cplx py = (1 - v) * f({p.x, o.y}) + v * f({p.x, o.y + ly});
    const cplx pxy = (1 - u) * (1 - v) * f(o) + u * (1 - v) * f({o.x + lx, o.y}) + (1 - u) * v * f({o.x, o.y + ly}) +
                     u * v * f({o.x + lx, o.y + ly});
    return f(p) - px - py + pxy;
  };
  return out;
}

// --- volume quadrature ---------------------------------------------------------

struct QuadratureOptions {
  int lines = 64;             // transverse lines (2D)
  int points_per_line = 512;  // nodes along each line interval
  int boundary_points = 2048;
};

struct VolumeNode {
  Vec2 point;
  double weight;
};

/// Gauss-Legendre nodes over a region: transverse panels split at the
/// section-length kinks, Gauss nodes along every line-section interval.
inline std::vector<VolumeNode> volume_quadrature(const Region& region, const QuadratureOptions& opt,
                                                 Vec2 direction = {1, 0}) {
  std::vector<VolumeNode> out;
  if (region.dimension() == 1) {
    const auto section = line_section(region, {1, 0});
    for (const auto& iv : section.intervals) {
      for (const auto& n : quad::composite(iv.x_minus, iv.x_plus, std::max(1, opt.points_per_line / 8), 8)) {
        out.push_back({{n.x, 0.0}, n.w});
      }
    }
    return out;
  }
  const auto breaks = transverse_breakpoints(region, direction);
  for (const auto& ty : quad::composite_with_breaks(breaks, opt.lines, 4)) {
    const auto section = line_section(region, direction, ty.x);
    for (const auto& iv : section.intervals) {
      for (const auto& n : quad::composite(iv.x_minus, iv.x_plus, std::max(1, opt.points_per_line / 8), 8)) {
        out.push_back({section.point(n.x), n.w * ty.w});
      }
    }
  }
  return out;
}

inline double analytic_norm_squared(const AnalyticState& psi, const Region& region, const QuadratureOptions& opt) {
  double acc = 0;
  for (const auto& n : volume_quadrature(region, opt)) acc += n.weight * std::norm(psi.value(n.point));
  return acc;
}

/// Returns psi scaled to unit norm on the region.
inline AnalyticState normalize(const AnalyticState& psi, const Region& region, const QuadratureOptions& opt = {}) {
  const double n2 = analytic_norm_squared(psi, region, opt);
  if (!(n2 > 0) || !std::isfinite(n2)) throw NumericalError("cannot normalize a zero or non-finite field");
  return psi.scaled(1.0 / std::sqrt(n2));
}

// --- grid states ---------------------------------------------------------------

class WaveState {
 public:
  WaveState() = default;
  WaveState(Grid grid, std::vector<cplx> even, std::vector<cplx> odd)
      : grid_(grid), even_(std::move(even)), odd_(std::move(odd)) {
    if (even_.size() != grid_.size() || odd_.size() != grid_.size()) {
      throw ArgumentError("state components do not match the grid");
    }
    physical_ = even_ == odd_;
  }

  const Grid& grid() const { return grid_; }
  std::span<const cplx> even() const { return even_; }
  std::span<const cplx> odd() const { return odd_; }
  bool physical() const { return physical_; }

  /// Single-component field Psi = sqrt(2) Psi_e of a physical state.
  std::vector<cplx> scalar() const {
    require_physical();
    std::vector<cplx> out(even_.size());
    const double r2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = r2 * even_[i];
    return out;
  }

  void require_physical() const {
    if (!physical_) throw DomainError("operation is defined on the physical sector only");
  }

  double norm_squared() const { return std::real(inner(*this, *this)); }

  void normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0) || !std::isfinite(n2)) throw NumericalError("cannot normalize a zero or non-finite state");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : even_) v *= s;
    for (auto& v : odd_) v *= s;
  }

  /// Doubled inner product sum w (conj(a_e) b_e + conj(a_o) b_o).
  friend cplx inner(const WaveState& a, const WaveState& b) {
    if (!(a.grid_ == b.grid_)) throw ArgumentError("inner product of states on different grids");
    cplx acc{};
    const Grid& g = a.grid_;
    for (int j = 0; j <= g.ny; ++j) {
      for (int i = 0; i <= g.nx; ++i) {
        const auto k = g.index(i, j);
        acc += g.weight(i, j) * (std::conj(a.even_[k]) * b.even_[k] + std::conj(a.odd_[k]) * b.odd_[k]);
      }
    }
    return acc;
  }

 private:
  Grid grid_;
  std::vector<cplx> even_;
  std::vector<cplx> odd_;
  bool physical_ = true;
};

/// Psi_e = Psi_o = Psi / sqrt(2).
inline WaveState embed_physical(const Grid& grid, std::span<const cplx> psi) {
  if (psi.size() != grid.size()) throw ArgumentError("field does not match the grid");
  std::vector<cplx> half(psi.begin(), psi.end());
  bool nonzero = false;
  for (auto& v : half) {
    nonzero = nonzero || v != cplx{};
    v /= std::sqrt(2.0);
  }
  if (!nonzero) throw NumericalError("cannot embed a zero field");
  return WaveState(grid, half, half);
}

inline WaveState sample_physical(const Grid& grid, const AnalyticState& psi) {
  std::vector<cplx> v(grid.size());
  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i <= grid.nx; ++i) v[grid.index(i, j)] = psi.value(grid.point(i, j));
  }
  return embed_physical(grid, v);
}

// --- state files -----------------------------------------------------------------
//
//   # region=<id> dim=<d> nx=<nx> ny=<ny> x0=<x0> y0=<y0> hx=<hx> hy=<hy>
//   index,re_even,im_even,re_odd,im_odd
//   0,...

inline void write_state_csv(std::ostream& out, const WaveState& s, const std::string& region_id) {
  const Grid& g = s.grid();
  char buf[256];
  std::snprintf(buf, sizeof buf, "# region=%s dim=%d nx=%d ny=%d x0=%.17g y0=%.17g hx=%.17g hy=%.17g\n",
                region_id.c_str(), g.dim, g.nx, g.ny, g.x0, g.y0, g.hx, g.hy);
  out << buf << "index,re_even,im_even,re_odd,im_odd\n";
  for (std::size_t k = 0; k < g.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", k, s.even()[k].real(), s.even()[k].imag(),
                  s.odd()[k].real(), s.odd()[k].imag());
    out << buf;
  }
}

struct StateFile {
  std::string region_id;
  WaveState state;
};

inline StateFile read_state_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw ArgumentError("state file: missing '# region=...' header");
  StateFile f;
  Grid g;
  std::istringstream hs(line.substr(2));
  std::string tok;
  int seen = 0;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ArgumentError("state file: bad header token '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "region") f.region_id = val;
      else if (key == "dim") g.dim = std::stoi(val);
      else if (key == "nx") g.nx = std::stoi(val);
      else if (key == "ny") g.ny = std::stoi(val);
      else if (key == "x0") g.x0 = std::stod(val);
      else if (key == "y0") g.y0 = std::stod(val);
      else if (key == "hx") g.hx = std::stod(val);
      else if (key == "hy") g.hy = std::stod(val);
      else throw ArgumentError("state file: unknown header key '" + key + "'");
    } catch (const std::logic_error&) {
      throw ArgumentError("state file: bad value for '" + key + "'");
    }
    ++seen;
  }
  if (seen != 8 || (g.dim != 1 && g.dim != 2) || g.nx < 1 || g.ny < 0 || !(g.hx > 0))
    throw ArgumentError("state file: incomplete or invalid header");
  if (!std::getline(in, line) || line != "index,re_even,im_even,re_odd,im_odd")
    throw ArgumentError("state file: missing column header");
  std::vector<cplx> even(g.size()), odd(g.size());
  std::vector<char> have(g.size(), 0);
  std::size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::size_t k;
    double a, b, c, d;
    if (!(ls >> k >> a >> b >> c >> d) || k >= g.size())
      throw ArgumentError("state file: bad row at line " + std::to_string(lineno));
    even[k] = {a, b};
    odd[k] = {c, d};
    have[k] = 1;
  }
  for (char h : have)
    if (!h) throw ArgumentError("state file: missing grid rows");
  f.state = WaveState(g, std::move(even), std::move(odd));
  return f;
}

// --- grid derivatives ------------------------------------------------------------

namespace detail {

// 2nd-order first derivative at node i of a line with stride, n+1 nodes.
inline cplx d1(std::span<const cplx> f, std::size_t base, std::size_t stride, int i, int n, double h) {
  const auto at = [&](int k) { return f[base + static_cast<std::size_t>(k) * stride]; };
  if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2 * h);
  if (i == n) return (3.0 * at(n) - 4.0 * at(n - 1) + at(n - 2)) / (2 * h);
  return (at(i + 1) - at(i - 1)) / (2 * h);
}

// 2nd-order second derivative; one-sided four-point stencils at the ends.
inline cplx d2(std::span<const cplx> f, std::size_t base, std::size_t stride, int i, int n, double h) {
  const auto at = [&](int k) { return f[base + static_cast<std::size_t>(k) * stride]; };
  if (i == 0) return (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / (h * h);
  if (i == n) return (2.0 * at(n) - 5.0 * at(n - 1) + 4.0 * at(n - 2) - at(n - 3)) / (h * h);
  return (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (h * h);
}

}  // namespace detail

/// First and second partial derivatives of a grid field.
struct GridDerivatives {
  std::vector<cplx> dx, dy, dxx, dyy;

  static GridDerivatives of(const Grid& g, std::span<const cplx> f) {
    if (g.nx < 3 || (g.dim == 2 && g.ny < 3)) {
      throw ResolutionError("one-sided second derivatives need at least 4 nodes per axis");
    }
    GridDerivatives d;
    d.dx.resize(g.size());
    d.dxx.resize(g.size());
    d.dy.assign(g.size(), cplx{});
    d.dyy.assign(g.size(), cplx{});
    const std::size_t row = g.nx + 1;
    for (int j = 0; j <= g.ny; ++j) {
      for (int i = 0; i <= g.nx; ++i) {
        const auto k = g.index(i, j);
        d.dx[k] = detail::d1(f, g.index(0, j), 1, i, g.nx, g.hx);
        d.dxx[k] = detail::d2(f, g.index(0, j), 1, i, g.nx, g.hx);
        if (g.dim == 2) {
          d.dy[k] = detail::d1(f, g.index(i, 0), row, j, g.ny, g.hy);
          d.dyy[k] = detail::d2(f, g.index(i, 0), row, j, g.ny, g.hy);
        }
      }
    }
    return d;
  }
};

/// Boundary nodes of a grid with trapezoid weights along each side. Corner
/// nodes appear once per adjacent side. Side order matches the rectangle's
/// segments [bottom, right, top, left]; a 1D grid has sides [left, right].
struct GridBoundaryNode {
  std::size_t index;
  int side;
  Vec2 normal;
  double weight;
};

inline std::vector<GridBoundaryNode> grid_boundary(const Grid& g) {
  std::vector<GridBoundaryNode> out;
  if (g.dim == 1) {
    out.push_back({g.index(0), 0, {-1, 0}, 1.0});
    out.push_back({g.index(g.nx), 1, {1, 0}, 1.0});
    return out;
  }
  for (int i = 0; i <= g.nx; ++i) {
    const double w = (i == 0 || i == g.nx ? 0.5 : 1.0) * g.hx;
    out.push_back({g.index(i, 0), 0, {0, -1}, w});
    out.push_back({g.index(i, g.ny), 2, {0, 1}, w});
  }
  for (int j = 0; j <= g.ny; ++j) {
    const double w = (j == 0 || j == g.ny ? 0.5 : 1.0) * g.hy;
    out.push_back({g.index(g.nx, j), 1, {1, 0}, w});
    out.push_back({g.index(0, j), 3, {-1, 0}, w});
  }
  return out;
}

// --- probability current ---------------------------------------------------------

struct CurrentField {
  Grid grid;
  double mass = 1.0;
  std::vector<double> jx, jy;
};

/// j = (1/2mi)(Psi* grad Psi - grad Psi* Psi) = Im(Psi* grad Psi) / m.
inline CurrentField probability_current(const WaveState& state, double mass) {
  state.require_physical();
  if (!(mass > 0)) throw ArgumentError("mass must be positive");
  const auto psi = state.scalar();
  const auto d = GridDerivatives::of(state.grid(), psi);
  CurrentField j{state.grid(), mass, std::vector<double>(psi.size()), std::vector<double>(psi.size())};
  for (std::size_t k = 0; k < psi.size(); ++k) {
    j.jx[k] = std::imag(std::conj(psi[k]) * d.dx[k]) / mass;
    j.jy[k] = std::imag(std::conj(psi[k]) * d.dy[k]) / mass;
  }
  return j;
}

/// Closed integral of |n . j| over the boundary.
inline double boundary_flux(const WaveState& state, double mass) {
  const auto j = probability_current(state, mass);
  double acc = 0;
  for (const auto& b : grid_boundary(state.grid())) {
    acc += b.weight * std::abs(b.normal.x * j.jx[b.index] + b.normal.y * j.jy[b.index]);
  }
  return acc;
}

/// max over boundary nodes of |n . j|.
inline double max_normal_current(const WaveState& state, double mass) {
  const auto j = probability_current(state, mass);
  double m = 0;
  for (const auto& b : grid_boundary(state.grid())) {
    m = std::max(m, std::abs(b.normal.x * j.jx[b.index] + b.normal.y * j.jy[b.index]));
  }
  return m;
}

/// Boundary flux of a closed-form state on any region.
inline double boundary_flux(const AnalyticState& psi, const Region& region, double mass, int boundary_points = 2048) {
  double acc = 0;
  for (const auto& b : boundary_quadrature(region, boundary_points)) {
    const cplx v = psi.value(b.point);
    const cplx dn = psi.gradient(b.point).along(b.normal);
    acc += b.weight * std::abs(std::imag(std::conj(v) * dn) / mass);
  }
  return acc;
}

}  // namespace boxmom
