#pragma once

// Potential catalog and per-side Robin data for grid Hamiltonians.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "boxmom/core.hpp"
#include "boxmom/geometry.hpp"

namespace boxmom {

struct Potential {
  enum class Kind { zero, harmonic, linear };
  Kind kind = Kind::zero;
  double omega = 0.0;  // harmonic: 1/2 m omega^2 |x - center|^2
  Vec2 center{};
  Vec2 tilt{};  // linear: tilt . x

  static Potential zero() { return {}; }
  static Potential harmonic(double omega, Vec2 center) { return {Kind::harmonic, omega, center, {}}; }
  static Potential linear(Vec2 tilt) { return {Kind::linear, 0.0, {}, tilt}; }

  double value(Vec2 p, double mass) const {
    switch (kind) {
      case Kind::zero:
        return 0.0;
      case Kind::harmonic: {
        const Vec2 d = p - center;
        return 0.5 * mass * omega * omega * dot(d, d);
      }
      case Kind::linear:
        return dot(tilt, p);
    }
    return 0.0;
  }
  Vec2 gradient(Vec2 p, double mass) const {
    switch (kind) {
      case Kind::zero:
        return {};
      case Kind::harmonic:
        return (p - center) * (mass * omega * omega);
      case Kind::linear:
        return tilt;
    }
    return {};
  }
  /// V(x, y) = axis_value(0, x) + axis_value(1, y) for every catalog entry.
  double axis_value(int axis, double coord, double mass) const {
    switch (kind) {
      case Kind::zero:
        return 0.0;
      case Kind::harmonic: {
        const double d = coord - (axis == 0 ? center.x : center.y);
        return 0.5 * mass * omega * omega * d * d;
      }
      case Kind::linear:
        return (axis == 0 ? tilt.x : tilt.y) * coord;
    }
    return 0.0;
  }
  std::string name() const {
    switch (kind) {
      case Kind::zero:
        return "zero";
      case Kind::harmonic:
        return "harmonic";
      case Kind::linear:
        return "linear";
    }
    return "?";
  }
};

/// Robin data on one grid side. gamma may carry an imaginary part only on the
/// unchecked assembly path (Hermiticity diagnostics).
struct SideBC {
  bool dirichlet = true;
  cplx gamma{};

  static SideBC robin(cplx g) { return {false, g}; }
  static SideBC dirichlet_side() { return {true, {}}; }
  static SideBC from_angle(RobinAngle a) {
    if (a.dirichlet()) return dirichlet_side();
    return robin(a.gamma());
  }
};

/// One entry per grid side: [left, right] on intervals, [bottom, right, top,
/// left] on rectangles.
inline std::vector<SideBC> side_conditions(const Region& region) {
  const auto& g = region.gamma();
  if (g.is_table()) throw DomainError("grid Hamiltonians need gamma constant per side");
  const std::size_t sides = region.kind() == RegionKind::interval ? 2 : 4;
  if (region.kind() != RegionKind::interval && region.kind() != RegionKind::rectangle) {
    throw DomainError("grid Hamiltonians exist for intervals and rectangles only");
  }
  std::vector<SideBC> out;
  for (std::size_t s = 0; s < sides; ++s) {
    const auto loc = region.location(s, 0.5);
    const double gamma = region.gamma_at(loc);
    if (std::isnan(gamma)) throw ValidationError("gamma must be real and not NaN");
    out.push_back(SideBC::from_angle(RobinAngle::from_gamma(gamma)));
  }
  return out;
}

}  // namespace boxmom
