#pragma once

// Simultaneous measurability of two momentum components: joint modes on
// rectangles, boundary-condition residuals on rectangles and rounded
// rectangles, and the region classification.

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "boxmom/core.hpp"
#include "boxmom/geometry.hpp"
#include "boxmom/momentum_modes.hpp"
#include "boxmom/quadrature.hpp"

namespace boxmom {

enum class DoublingVariant { literal_c2, tensor_c4 };
enum class Verdict { separable_parallelepiped, incompatible_bc, trivial_domain };

inline const char* to_string(DoublingVariant v) { return v == DoublingVariant::literal_c2 ? "literal_c2" : "tensor_c4"; }
inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::separable_parallelepiped: return "separable_parallelepiped";
    case Verdict::incompatible_bc: return "incompatible_bc";
    case Verdict::trivial_domain: return "trivial_domain";
  }
  return "?";
}

/// Rectangle side parameters, in side order [bottom, right, top, left]
/// (lambda_1..lambda_4). x-momentum uses (left, right), y-momentum (bottom, top).
using SideLambdas = std::array<cplx, 4>;

inline SideLambdas side_lambdas(const Region& rect) {
  if (rect.kind() != RegionKind::rectangle && rect.kind() != RegionKind::rounded_rectangle) {
    throw DomainError("side lambdas exist for rectangles and rounded rectangles");
  }
  // flat sides of a rounded rectangle sit at segments 0, 2, 4, 6
  const std::size_t stride = rect.kind() == RegionKind::rectangle ? 1 : 2;
  SideLambdas out;
  for (std::size_t s = 0; s < 4; ++s) {
    const Vec2 dir = (s % 2 == 0) ? Vec2{0, 1} : Vec2{1, 0};
    out[s] = rect.lambda_at(dir, rect.location(s * stride, 0.5));
  }
  return out;
}

/// Builds per-segment lambda fields for directions x and y from side values;
/// rounded-rectangle arcs inherit the adjacent side normal to each direction.
inline Region with_side_lambdas(const Region& rect, const std::array<double, 4>& imag) {
  if (rect.kind() == RegionKind::rectangle) {
    // x field lives on left/right, y field on bottom/top; the others are inert
    return rect.with_lambda({1, 0}, BoundaryField::per_segment({0.0, imag[1], 0.0, imag[3]}))
        .with_lambda({0, 1}, BoundaryField::per_segment({imag[0], 0.0, imag[2], 0.0}));
  }
  if (rect.kind() != RegionKind::rounded_rectangle) throw DomainError("side lambdas need a (rounded) rectangle");
  // segments: bottom, BR arc, right, TR arc, top, TL arc, left, BL arc
  const std::vector<double> x = {0.0, imag[1], imag[1], imag[1], 0.0, imag[3], imag[3], imag[3]};
  const std::vector<double> y = {imag[0], imag[0], 0.0, imag[2], imag[2], imag[2], 0.0, imag[0]};
  return rect.with_lambda({1, 0}, BoundaryField::per_segment(x)).with_lambda({0, 1}, BoundaryField::per_segment(y));
}

struct JointMode {
  Vec2 mu{};
  cplx A{};
  cplx B{};
  DoublingVariant variant = DoublingVariant::tensor_c4;
  MomentumMode mode_x;
  MomentumMode mode_y;
  Vec2 origin{};
  int nx = 0;
  int ny = 0;

  /// (even, odd) pairs with respect to the doubling of direction `axis` (0 = x, 1 = y).
  std::vector<std::pair<cplx, cplx>> pairs(Vec2 p, int axis) const {
    if (variant == DoublingVariant::tensor_c4) {
      const cplx xe = mode_x.even(p.x), xo = mode_x.odd(p.x);
      const cplx ye = mode_y.even(p.y), yo = mode_y.odd(p.y);
      if (axis == 0) return {{xe * ye, xo * ye}, {xe * yo, xo * yo}};
      return {{xe * ye, xe * yo}, {xo * ye, xo * yo}};
    }
    const double phase = mu.x * (p.x - origin.x) + mu.y * (p.y - origin.y);
    const cplx f = A * std::exp(I * phase), g = B * std::exp(-I * phase);
    return {{f + g, f - g}};
  }
  double amplitude2(Vec2 p) const {
    double a = 0;
    for (const auto& [e, o] : pairs(p, 0)) a += std::norm(e) + std::norm(o);
    return a;
  }
};

struct JointLadders {
  SpectrumLadder x;
  SpectrumLadder y;
};

inline JointLadders joint_ladders(double lx, double ly, Vec2 origin, const SideLambdas& lam, Vec2 nx_range,
                                  Vec2 ny_range) {
  for (const auto& l : lam) require_imaginary(l, "side lambda");
  const auto ivx = make_interval(origin.x, origin.x + lx, lam[3], lam[1]);
  const auto ivy = make_interval(origin.y, origin.y + ly, lam[0], lam[2]);
  return {spectrum(ivx, static_cast<int>(nx_range.x), static_cast<int>(nx_range.y)),
          spectrum(ivy, static_cast<int>(ny_range.x), static_cast<int>(ny_range.y))};
}

/// Joint modes on the bounding rectangle [origin, origin + (lx, ly)]: mu_x from
/// (lambda_4, lambda_2) over lx, mu_y from (lambda_1, lambda_3) over ly.
inline std::vector<JointMode> joint_modes_rectangle(double lx, double ly, Vec2 origin, const SideLambdas& lam,
                                                    int nx_min, int nx_max, int ny_min, int ny_max,
                                                    DoublingVariant variant) {
  for (const auto& l : lam) require_imaginary(l, "side lambda");
  if (nx_min > nx_max || ny_min > ny_max) throw ArgumentError("empty mode range");
  const auto ivx = make_interval(origin.x, origin.x + lx, lam[3], lam[1]);
  const auto ivy = make_interval(origin.y, origin.y + ly, lam[0], lam[2]);
  std::vector<JointMode> out;
  for (int a = nx_min; a <= nx_max; ++a) {
    for (int b = ny_min; b <= ny_max; ++b) {
      JointMode m;
      m.variant = variant;
      m.mode_x = build_mode(ivx, a);
      m.mode_y = build_mode(ivy, b);
      m.mu = {m.mode_x.k, m.mode_y.k};
      m.origin = origin;
      m.nx = a;
      m.ny = b;
      m.A = 1.0 / (2.0 * std::sqrt(lx * ly));
      // anchored at the left side: Psi_o = lambda_4 Psi_e at x = origin.x
      m.B = m.A * (1.0 - lam[3]) / (1.0 + lam[3]);
      out.push_back(m);
    }
  }
  return out;
}

inline std::vector<JointMode> joint_modes_rectangle(const Region& rect, int nx_min, int nx_max, int ny_min,
                                                    int ny_max, DoublingVariant variant) {
  return joint_modes_rectangle(rect.lx(), rect.ly(), rect.origin(), side_lambdas(rect), nx_min, nx_max, ny_min,
                               ny_max, variant);
}

struct BCResidual {
  double max = 0.0;             // max |Psi_o - lambda Psi_e| / amplitude
  double l2 = 0.0;              // boundary L2 mean of the same
  double tangential_max = 0.0;  // max |t.grad(Psi_o - lambda Psi_e)| / (|mu| amplitude)
  double arc_max = 0.0;
  double arc_tangential_max = 0.0;
  double flat_max = 0.0;
};

/// Joint boundary-condition residuals of a candidate on the region's boundary.
/// A boundary point contributes for each direction with |n.d| > tangency
/// tolerance; amplitude is the boundary RMS of the candidate.
inline BCResidual joint_bc_residual(const Region& region, const JointMode& mode, Vec2 l, Vec2 m,
                                    int boundary_points = 1024) {
  require_unit(l, "l");
  require_unit(m, "m");
  const auto axis_of = [](Vec2 d) {
    if (std::abs(std::abs(d.x) - 1.0) < 1e-12) return 0;
    if (std::abs(std::abs(d.y) - 1.0) < 1e-12) return 1;
    throw DomainError("joint modes are defined for axis directions");
  };
  const int al = axis_of(l), am = axis_of(m);
  const auto nodes = boundary_quadrature(region, boundary_points);
  double amp2 = 0, perim = 0;
  for (const auto& b : nodes) {
    amp2 += b.weight * mode.amplitude2(b.point);
    perim += b.weight;
  }
  const double amp = std::sqrt(amp2 / perim);
  const double mu = std::max(norm(mode.mu), 1e-300);
  const double delta = 1e-6 * std::sqrt(region.area());

  BCResidual r;
  double sq = 0;
  for (const auto& b : nodes) {
    const bool arc = region.segments()[b.location.segment].kind == SegmentKind::arc;
    const Vec2 t = perp(b.normal);
    double worst = 0, worst_t = 0;
    for (auto [d, axis] : {std::pair{l, al}, std::pair{m, am}}) {
      if (std::abs(dot(b.normal, d)) <= tangency_tolerance) continue;
      const cplx lam = region.lambda_at(d, b.location);
      const auto here = mode.pairs(b.point, axis);
      const auto fwd = mode.pairs(b.point + t * delta, axis);
      const auto bwd = mode.pairs(b.point - t * delta, axis);
      for (std::size_t k = 0; k < here.size(); ++k) {
        worst = std::max(worst, std::abs(here[k].second - lam * here[k].first));
        const cplx df = ((fwd[k].second - lam * fwd[k].first) - (bwd[k].second - lam * bwd[k].first)) / (2 * delta);
        worst_t = std::max(worst_t, std::abs(df));
      }
    }
    worst /= amp;
    worst_t /= mu * amp;
    sq += b.weight * worst * worst;
    r.max = std::max(r.max, worst);
    r.tangential_max = std::max(r.tangential_max, worst_t);
    if (arc) {
      r.arc_max = std::max(r.arc_max, worst);
      r.arc_tangential_max = std::max(r.arc_tangential_max, worst_t);
    } else {
      r.flat_max = std::max(r.flat_max, worst);
    }
  }
  r.l2 = std::sqrt(sq / perim);
  return r;
}

struct CommutabilityVerdict {
  std::string region_id;
  Vec2 l{};
  Vec2 m{};
  Verdict verdict = Verdict::incompatible_bc;
  DoublingVariant variant = DoublingVariant::tensor_c4;
  std::vector<std::string> reasons;
  // residual evidence over probe joint modes (nonzero mu only)
  double residual_max = 0.0;
  double residual_mean = 0.0;
  double arc_residual_min = 0.0;  // min over probe modes of the arc residual (rounded rectangles)
  double literal_c2_max = 0.0;
  int probes = 0;
};

/// Separable iff every segment is parallel to l or m (n.l = 0 or n.m = 0) and
/// lambda is constant on every segment; otherwise incompatible, with residual
/// evidence from joint probe modes where those exist.
inline CommutabilityVerdict classify_region(const Region& region, Vec2 l, Vec2 m, int probe_range = 2) {
  require_unit(l, "l");
  require_unit(m, "m");
  CommutabilityVerdict v;
  v.region_id = region.id();
  v.l = l;
  v.m = m;
  if (region.dimension() == 1 || std::abs(std::abs(dot(l, m)) - 1.0) < 1e-12) {
    v.verdict = Verdict::trivial_domain;
    v.reasons.push_back(region.dimension() == 1 ? "one-dimensional region" : "directions are parallel");
    return v;
  }
  bool ok = true;
  const auto& segs = region.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const std::string tag = "segment " + std::to_string(i);
    if (s.kind == SegmentKind::arc) {
      ok = false;
      v.reasons.push_back(tag + ": curved, normal parallel to neither direction on a set of positive length");
      continue;
    }
    const Vec2 n = s.normal(0.5);
    const bool par_l = std::abs(dot(n, l)) <= tangency_tolerance;
    const bool par_m = std::abs(dot(n, m)) <= tangency_tolerance;
    if (!par_l && !par_m) {
      ok = false;
      v.reasons.push_back(tag + ": both boundary conditions apply");
      const auto loc = region.location(i, 0.5);
      if (std::abs(region.lambda_at(l, loc) - region.lambda_at(m, loc)) > 1e-12) {
        v.reasons.push_back(tag + ": lambda_l and lambda_m disagree");
      }
    }
    for (const Vec2 d : {l, m}) {
      const auto& f = region.lambda_field(d);
      if (f.is_table() && !f.constant_on(i, region.segment_offsets()[i],
                                         region.segment_offsets()[i] + s.length(), region.perimeter())) {
        ok = false;
        v.reasons.push_back(tag + ": lambda varies along the segment");
      }
    }
  }
  v.verdict = ok ? Verdict::separable_parallelepiped : Verdict::incompatible_bc;

  // residual evidence from joint probes on (rounded) rectangles with axis directions
  const bool axes = std::abs(dot(l, m)) < 1e-12 && (std::abs(std::abs(l.x) - 1) < 1e-12 || std::abs(std::abs(l.y) - 1) < 1e-12);
  if (axes && (region.kind() == RegionKind::rectangle || region.kind() == RegionKind::rounded_rectangle)) {
    const auto lam = side_lambdas(region);
    const auto tensor = joint_modes_rectangle(region.lx(), region.ly(), region.origin(), lam, -probe_range,
                                              probe_range, -probe_range, probe_range, DoublingVariant::tensor_c4);
    const auto literal = joint_modes_rectangle(region.lx(), region.ly(), region.origin(), lam, -probe_range,
                                               probe_range, -probe_range, probe_range, DoublingVariant::literal_c2);
    double sum = 0;
    v.arc_residual_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tensor.size(); ++i) {
      if (norm(tensor[i].mu) < 1e-12) continue;
      const auto r = joint_bc_residual(region, tensor[i], l, m);
      const double stat = region.kind() == RegionKind::rounded_rectangle ? r.arc_tangential_max : r.max;
      v.residual_max = std::max(v.residual_max, stat);
      sum += stat;
      if (region.kind() == RegionKind::rounded_rectangle) v.arc_residual_min = std::min(v.arc_residual_min, stat);
      v.literal_c2_max = std::max(v.literal_c2_max, joint_bc_residual(region, literal[i], l, m).max);
      ++v.probes;
    }
    if (!std::isfinite(v.arc_residual_min)) v.arc_residual_min = 0;
    v.residual_mean = v.probes ? sum / v.probes : 0.0;
  }
  return v;
}

struct CommutatorWitness {
  bool commutes = false;
  double dot = 0.0;
  double commutator_norm = 0.0;  // max over probe states of ||[l.p_R, m.x] Psi|| / ||Psi||
  int states = 0;
};

/// [l.p_R, m.x] = -i (l.m) on physical states; the witness evaluates the
/// commutator by central differences on random Gaussian superpositions
/// supported away from the boundary of the unit square.
inline CommutatorWitness position_momentum_commutes(Vec2 l, Vec2 m, int states = 10, std::uint64_t seed = 0) {
  require_unit(l, "l");
  require_unit(m, "m");
  CommutatorWitness w;
  w.dot = dot(l, m);
  w.commutes = std::abs(w.dot) < 1e-12;
  w.states = states;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.35, 0.65), ph(0, 2 * pi), kk(-3, 3);
  const auto nodes = quad::composite(0.0, 1.0, 16, 8);
  const double h = 1e-5;
  for (int s = 0; s < states; ++s) {
    struct Bump { Vec2 c; Vec2 k; cplx a; };
    std::vector<Bump> bumps;
    for (int j = 0; j < 3; ++j) bumps.push_back({{u(rng), u(rng)}, {kk(rng), kk(rng)}, std::polar(1.0, ph(rng))});
    const auto psi = [&](Vec2 p) {
      cplx acc{};
      for (const auto& b : bumps) {
        const Vec2 d = p - b.c;
        acc += b.a * std::exp(cplx(-dot(d, d) / (2 * 0.06 * 0.06), dot(b.k, p)));
      }
      return acc;
    };
    // p_R acts on the physical sector as -i l.grad
    const auto pR = [&](const auto& f, Vec2 p) { return -I * (f(p + l * h) - f(p - l * h)) / (2 * h); };
    const auto xpsi = [&](Vec2 p) { return dot(m, p) * psi(p); };
    double num = 0, den = 0;
    for (const auto& a : nodes) {
      for (const auto& b : nodes) {
        const Vec2 p{a.x, b.x};
        const cplx c = pR(xpsi, p) - dot(m, p) * pR(psi, p);
        num += a.w * b.w * std::norm(c);
        den += a.w * b.w * std::norm(psi(p));
      }
    }
    w.commutator_norm = std::max(w.commutator_norm, std::sqrt(num / den));
  }
  return w;
}

}  // namespace boxmom
