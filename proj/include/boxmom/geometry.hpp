#pragma once

// Bounded regions, their boundaries, boundary parameter fields and
// line-region intersections.
//
// Conventions:
//  * 2D boundaries are stored counterclockwise; the outward normal is the
//    edge tangent rotated by -90 degrees.
//  * A rectangle's segments are ordered [bottom, right, top, left].
//  * A 1D interval has two boundary "segments": 0 = left end, 1 = right end.
//  * A line with direction l is parameterized as x = s*l + y0*perp(l); s is the
//    coordinate along the line and y0 the transverse anchor.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "boxmom/core.hpp"
#include "boxmom/quadrature.hpp"

namespace boxmom {

/// |n . l| below this counts as tangency.
inline constexpr double tangency_tolerance = 1e-9;

enum class SegmentKind { line, arc };

struct Segment {
  SegmentKind kind = SegmentKind::line;
  Vec2 p0, p1;
  // arc data; the arc runs counterclockwise from phi0 to phi1
  Vec2 center;
  double radius = 0.0;
  double phi0 = 0.0;
  double phi1 = 0.0;

  static Segment line(Vec2 a, Vec2 b) { return Segment{SegmentKind::line, a, b}; }
  static Segment arc(Vec2 c, double r, double a0, double a1) {
    Segment s;
    s.kind = SegmentKind::arc;
    s.center = c;
    s.radius = r;
    s.phi0 = a0;
    s.phi1 = a1;
    s.p0 = c + r * Vec2{std::cos(a0), std::sin(a0)};
    s.p1 = c + r * Vec2{std::cos(a1), std::sin(a1)};
    return s;
  }

  double length() const {
    return kind == SegmentKind::line ? norm(p1 - p0) : radius * (phi1 - phi0);
  }
  /// t in [0, 1]
  Vec2 point(double t) const {
    if (kind == SegmentKind::line) return p0 + t * (p1 - p0);
    const double phi = phi0 + t * (phi1 - phi0);
    return center + radius * Vec2{std::cos(phi), std::sin(phi)};
  }
  Vec2 normal(double t) const {
    if (kind == SegmentKind::line) {
      const Vec2 d = normalized(p1 - p0);
      return {d.y, -d.x};
    }
    const double phi = phi0 + t * (phi1 - phi0);
    return {std::cos(phi), std::sin(phi)};
  }
  Vec2 tangent(double t) const { return perp(normal(t)); }

  /// Parameter t of the point on this segment closest to p, and the distance.
  std::pair<double, double> closest(Vec2 p) const {
    if (kind == SegmentKind::line) {
      const Vec2 d = p1 - p0;
      const double t = std::clamp(dot(p - p0, d) / dot(d, d), 0.0, 1.0);
      return {t, norm(p - point(t))};
    }
    double phi = std::atan2(p.y - center.y, p.x - center.x);
    while (phi < phi0) phi += 2 * pi;
    while (phi > phi0 + 2 * pi) phi -= 2 * pi;
    if (phi <= phi1) {
      const double t = (phi - phi0) / (phi1 - phi0);
      return {t, std::abs(norm(p - center) - radius)};
    }
    const double d0 = norm(p - p0), d1 = norm(p - p1);
    return d0 < d1 ? std::pair{0.0, d0} : std::pair{1.0, d1};
  }
};

/// A point on the boundary together with its segment bookkeeping.
struct BoundaryLocation {
  std::size_t segment = 0;
  double t = 0.0;  // parameter within the segment
  double s = 0.0;  // global arclength from the start of segment 0
  Vec2 point;
  Vec2 normal;
};

/// Scalar field on the boundary: piecewise constant per segment, or a table
/// over global arclength with periodic linear interpolation.
class BoundaryField {
 public:
  BoundaryField() = default;

  static BoundaryField constant(double v) {
    BoundaryField f;
    f.default_ = v;
    return f;
  }
  static BoundaryField per_segment(std::vector<double> values) {
    BoundaryField f;
    f.segment_values_ = std::move(values);
    return f;
  }
  /// (arclength, value) samples; interpolated linearly and periodically.
  static BoundaryField table(std::vector<std::pair<double, double>> samples) {
    if (samples.empty()) throw ArgumentError("boundary field table is empty");
    std::sort(samples.begin(), samples.end());
    BoundaryField f;
    f.table_ = std::move(samples);
    return f;
  }

  bool is_table() const { return !table_.empty(); }
  const std::vector<double>& segment_values() const { return segment_values_; }

  double at(const BoundaryLocation& loc, double perimeter) const {
    if (!table_.empty()) return interpolate(loc.s, perimeter);
    if (loc.segment < segment_values_.size()) return segment_values_[loc.segment];
    return default_;
  }

  /// True when the field is constant along the given segment [s0, s1].
  bool constant_on(std::size_t segment, double s0, double s1, double perimeter) const {
    if (table_.empty()) return true;
    (void)segment;
    const double v0 = interpolate(s0, perimeter);
    for (const auto& [s, v] : table_) {
      if (s > s0 && s < s1 && std::abs(v - v0) > 1e-14) return false;
    }
    return std::abs(interpolate(s1, perimeter) - v0) <= 1e-14;
  }

 private:
  double interpolate(double s, double perimeter) const {
    if (table_.size() == 1) return table_.front().second;
    if (perimeter > 0) s = std::fmod(std::fmod(s, perimeter) + perimeter, perimeter);
    const auto& first = table_.front();
    const auto& last = table_.back();
    if (s <= first.first || s >= last.first) {
      // wrap segment between last and first (+perimeter)
      const double s_last = last.first;
      const double s_first = first.first + perimeter;
      const double ss = s < first.first ? s + perimeter : s;
      const double span = s_first - s_last;
      if (span <= 0) return first.second;
      const double w = (ss - s_last) / span;
      return (1 - w) * last.second + w * first.second;
    }
    auto hi = std::upper_bound(table_.begin(), table_.end(), s,
                               [](double v, const auto& p) { return v < p.first; });
    auto lo = hi - 1;
    const double w = (s - lo->first) / (hi->first - lo->first);
    return (1 - w) * lo->second + w * hi->second;
  }

  double default_ = 0.0;
  std::vector<double> segment_values_;
  std::vector<std::pair<double, double>> table_;
};

/// Robin condition cos(a)*Psi + sin(a)*n.grad(Psi) = 0; a = 0 is Dirichlet,
/// a = pi/2 Neumann, tan(a) = 1/gamma otherwise.
struct RobinAngle {
  double alpha = pi / 2;

  static RobinAngle from_gamma(double gamma) {
    if (std::isinf(gamma)) return {0.0};
    return {std::atan2(1.0, gamma)};
  }
  bool dirichlet() const { return std::abs(alpha) < 1e-15; }
  double gamma() const {
    return dirichlet() ? std::numeric_limits<double>::infinity() : std::cos(alpha) / std::sin(alpha);
  }
};

enum class RegionKind { interval, rectangle, convex_polygon, polygon, rounded_rectangle };

inline const char* to_string(RegionKind k) {
  switch (k) {
    case RegionKind::interval: return "interval_1d";
    case RegionKind::rectangle: return "rectangle";
    case RegionKind::convex_polygon: return "convex_polygon";
    case RegionKind::polygon: return "polygon";
    case RegionKind::rounded_rectangle: return "rounded_rectangle";
  }
  return "?";
}

class Region {
 public:
  static Region interval(double a, double b) {
    if (!(b > a)) throw GeometryError("interval needs a < b");
    Region r;
    r.kind_ = RegionKind::interval;
    r.a_ = a;
    r.b_ = b;
    return r;
  }

  static Region rectangle(double lx, double ly, Vec2 origin = {}) {
    if (!(lx > 0 && ly > 0)) throw GeometryError("rectangle side lengths must be positive");
    Region r;
    r.kind_ = RegionKind::rectangle;
    r.lx_ = lx;
    r.ly_ = ly;
    r.origin_ = origin;
    r.vertices_ = {origin, origin + Vec2{lx, 0}, origin + Vec2{lx, ly}, origin + Vec2{0, ly}};
    r.build_polygon_segments();
    return r;
  }

  static Region polygon(std::vector<Vec2> vertices) {
    Region r;
    r.kind_ = RegionKind::polygon;
    r.vertices_ = std::move(vertices);
    r.validate_polygon();
    r.build_polygon_segments();
    return r;
  }

  static Region convex_polygon(std::vector<Vec2> vertices) {
    Region r = polygon(std::move(vertices));
    const auto& v = r.vertices_;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 a = v[i], b = v[(i + 1) % v.size()], c = v[(i + 2) % v.size()];
      if (cross(b - a, c - b) < -1e-12) throw GeometryError("convex_polygon vertices are not convex");
    }
    r.kind_ = RegionKind::convex_polygon;
    return r;
  }

  static Region rounded_rectangle(double lx, double ly, double radius, Vec2 origin = {}) {
    if (!(lx > 0 && ly > 0)) throw GeometryError("rectangle side lengths must be positive");
    if (!(radius > 0) || 2 * radius > std::min(lx, ly)) {
      throw GeometryError("corner radius must lie in (0, min(Lx, Ly)/2]");
    }
    Region r;
    r.kind_ = RegionKind::rounded_rectangle;
    r.lx_ = lx;
    r.ly_ = ly;
    r.radius_ = radius;
    r.origin_ = origin;
    const Vec2 o = origin;
    const double rr = radius;
    const double h = pi / 2;
    // bottom flat, BR arc, right flat, TR arc, top flat, TL arc, left flat, BL arc
    r.segments_ = {
        Segment::line(o + Vec2{rr, 0}, o + Vec2{lx - rr, 0}),
        Segment::arc(o + Vec2{lx - rr, rr}, rr, -h, 0),
        Segment::line(o + Vec2{lx, rr}, o + Vec2{lx, ly - rr}),
        Segment::arc(o + Vec2{lx - rr, ly - rr}, rr, 0, h),
        Segment::line(o + Vec2{lx - rr, ly}, o + Vec2{rr, ly}),
        Segment::arc(o + Vec2{rr, ly - rr}, rr, h, 2 * h),
        Segment::line(o + Vec2{0, ly - rr}, o + Vec2{0, rr}),
        Segment::arc(o + Vec2{rr, rr}, rr, 2 * h, 3 * h),
    };
    r.finish_segments();
    return r;
  }

  RegionKind kind() const { return kind_; }
  int dimension() const { return kind_ == RegionKind::interval ? 1 : 2; }
  bool is_convex() const { return kind_ != RegionKind::polygon || polygon_is_convex(); }

  double a() const { return a_; }
  double b() const { return b_; }
  double lx() const { return kind_ == RegionKind::interval ? b_ - a_ : lx_; }
  double ly() const { return ly_; }
  double corner_radius() const { return radius_; }
  Vec2 origin() const { return kind_ == RegionKind::interval ? Vec2{a_, 0} : origin_; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t segment_count() const { return kind_ == RegionKind::interval ? 2 : segments_.size(); }
  /// Arclength at which each segment starts.
  const std::vector<double>& segment_offsets() const { return offsets_; }

  double perimeter() const {
    // counting measure on the two endpoints of an interval
    return kind_ == RegionKind::interval ? 2.0 : perimeter_;
  }

  double area() const {
    switch (kind_) {
      case RegionKind::interval: return b_ - a_;
      case RegionKind::rectangle: return lx_ * ly_;
      case RegionKind::rounded_rectangle: return lx_ * ly_ - (4 - pi) * radius_ * radius_;
      default: return std::abs(signed_area(vertices_));
    }
  }

  std::string id() const {
    switch (kind_) {
      case RegionKind::interval: return "interval_1d";
      case RegionKind::rectangle: return "rectangle";
      case RegionKind::rounded_rectangle: return "rounded_rectangle";
      default: return to_string(kind_);
    }
  }

  /// Strict interior test (boundary points excluded up to ~1e-12).
  bool contains(Vec2 p) const {
    switch (kind_) {
      case RegionKind::interval: return p.x > a_ && p.x < b_;
      case RegionKind::rectangle:
        return p.x > origin_.x && p.x < origin_.x + lx_ && p.y > origin_.y && p.y < origin_.y + ly_;
      case RegionKind::rounded_rectangle: {
        const Vec2 q = p - origin_;
        if (!(q.x > 0 && q.x < lx_ && q.y > 0 && q.y < ly_)) return false;
        const double cx = std::clamp(q.x, radius_, lx_ - radius_);
        const double cy = std::clamp(q.y, radius_, ly_ - radius_);
        return norm(q - Vec2{cx, cy}) < radius_;
      }
      default: {
        if (distance_to_boundary(p) < 1e-12) return false;
        // crossing number
        bool inside = false;
        const auto& v = vertices_;
        for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
          if ((v[i].y > p.y) != (v[j].y > p.y)) {
            const double xc = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
            if (p.x < xc) inside = !inside;
          }
        }
        return inside;
      }
    }
  }

  double distance_to_boundary(Vec2 p) const {
    if (kind_ == RegionKind::interval) return std::min(std::abs(p.x - a_), std::abs(p.x - b_));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : segments_) best = std::min(best, s.closest(p).second);
    return best;
  }

  /// Boundary location nearest to p.
  BoundaryLocation locate(Vec2 p) const {
    if (kind_ == RegionKind::interval) {
      const bool left = std::abs(p.x - a_) <= std::abs(p.x - b_);
      return left ? BoundaryLocation{0, 0.0, 0.0, {a_, 0}, {-1, 0}}
                  : BoundaryLocation{1, 0.0, 1.0, {b_, 0}, {1, 0}};
    }
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity(), best_t = 0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      auto [t, d] = segments_[i].closest(p);
      if (d < best_d) {
        best_d = d;
        best = i;
        best_t = t;
      }
    }
    return location(best, best_t);
  }

  BoundaryLocation location(std::size_t segment, double t) const {
    if (kind_ == RegionKind::interval) {
      return segment == 0 ? BoundaryLocation{0, 0.0, 0.0, {a_, 0}, {-1, 0}}
                          : BoundaryLocation{1, 0.0, 1.0, {b_, 0}, {1, 0}};
    }
    const Segment& s = segments_.at(segment);
    return {segment, t, offsets_[segment] + t * s.length(), s.point(t), s.normal(t)};
  }

  // --- boundary parameter fields -------------------------------------------

  const BoundaryField& gamma() const { return gamma_; }
  Region with_gamma(BoundaryField g) const {
    Region r = *this;
    r.gamma_ = std::move(g);
    return r;
  }
  double gamma_at(const BoundaryLocation& loc) const { return gamma_.at(loc, perimeter_); }

  /// Momentum extension parameter field for direction d; the stored values are
  /// the imaginary parts (lambda = i * value).
  Region with_lambda(Vec2 direction, BoundaryField imag_values) const {
    Region r = *this;
    const Vec2 d = normalized(direction);
    for (auto& [dir, f] : r.lambdas_) {
      if (std::abs(std::abs(dot(dir, d)) - 1.0) < 1e-12) {
        f = std::move(imag_values);
        return r;
      }
    }
    r.lambdas_.emplace_back(d, std::move(imag_values));
    return r;
  }
  const BoundaryField& lambda_field(Vec2 direction) const {
    static const BoundaryField zero = BoundaryField::constant(0.0);
    for (const auto& [dir, f] : lambdas_) {
      if (std::abs(std::abs(dot(dir, direction)) - 1.0) < 1e-12) return f;
    }
    return zero;
  }
  const std::vector<std::pair<Vec2, BoundaryField>>& lambda_fields() const { return lambdas_; }
  cplx lambda_at(Vec2 direction, const BoundaryLocation& loc) const {
    return {0.0, lambda_field(direction).at(loc, perimeter_)};
  }

 private:
  static double signed_area(const std::vector<Vec2>& v) {
    double a = 0;
    for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
  }

  bool polygon_is_convex() const {
    const auto& v = vertices_;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 a = v[i], b = v[(i + 1) % v.size()], c = v[(i + 2) % v.size()];
      if (cross(b - a, c - b) < -1e-12) return false;
    }
    return true;
  }

  static bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
    const double d1 = orient(c, d, a), d2 = orient(c, d, b);
    const double d3 = orient(a, b, c), d4 = orient(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
      return true;
    }
    const auto on_seg = [](Vec2 p, Vec2 q, Vec2 r) {
      return std::min(p.x, q.x) - 1e-14 <= r.x && r.x <= std::max(p.x, q.x) + 1e-14 &&
             std::min(p.y, q.y) - 1e-14 <= r.y && r.y <= std::max(p.y, q.y) + 1e-14;
    };
    return (d1 == 0 && on_seg(c, d, a)) || (d2 == 0 && on_seg(c, d, b)) || (d3 == 0 && on_seg(a, b, c)) ||
           (d4 == 0 && on_seg(a, b, d));
  }

  void validate_polygon() {
    auto& v = vertices_;
    if (v.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (norm(v[i] - v[(i + 1) % v.size()]) < 1e-14) throw GeometryError("polygon has repeated vertices");
    }
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
        if (adjacent) continue;
        if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
          throw GeometryError("polygon boundary self-intersects");
        }
      }
    }
    const double a = signed_area(v);
    if (std::abs(a) < 1e-14) throw GeometryError("polygon has zero area");
    if (a < 0) std::reverse(v.begin(), v.end());
  }

  void build_polygon_segments() {
    segments_.clear();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      segments_.push_back(Segment::line(vertices_[i], vertices_[(i + 1) % vertices_.size()]));
    }
    finish_segments();
  }

  void finish_segments() {
    offsets_.clear();
    perimeter_ = 0;
    for (const auto& s : segments_) {
      offsets_.push_back(perimeter_);
      perimeter_ += s.length();
    }
  }

  RegionKind kind_ = RegionKind::interval;
  double a_ = 0, b_ = 1;
  double lx_ = 0, ly_ = 0, radius_ = 0;
  Vec2 origin_;
  std::vector<Vec2> vertices_;
  std::vector<Segment> segments_;
  std::vector<double> offsets_;
  double perimeter_ = 2.0;
  BoundaryField gamma_ = BoundaryField::constant(std::numeric_limits<double>::infinity());
  std::vector<std::pair<Vec2, BoundaryField>> lambdas_;
};

// --- line sections ---------------------------------------------------------

struct SectionInterval {
  double x_minus = 0.0;
  double x_plus = 0.0;
  cplx lambda_minus{};
  cplx lambda_plus{};
  BoundaryLocation at_minus;
  BoundaryLocation at_plus;

  double length() const { return x_plus - x_minus; }
};

struct LineSection {
  Vec2 direction{1, 0};
  std::vector<double> anchor;  // transverse coordinates, size d-1
  std::vector<SectionInterval> intervals;

  double transverse() const { return anchor.empty() ? 0.0 : anchor.front(); }
  Vec2 point(double s) const { return s * direction + transverse() * perp(direction); }
};

namespace detail {

// Intersections of the line x = s*l + y0*perp(l) with one boundary segment,
// returned as line coordinates s.
inline void line_crossings(const Segment& seg, Vec2 l, double y0, std::vector<double>& out) {
  const Vec2 t = perp(l);
  if (seg.kind == SegmentKind::line) {
    // transverse coordinate along the segment
    const double q0 = dot(seg.p0, t) - y0, q1 = dot(seg.p1, t) - y0;
    if (std::abs(q0 - q1) < 1e-15) {
      if (std::abs(q0) < 1e-13) {  // collinear: both endpoints are break points
        out.push_back(dot(seg.p0, l));
        out.push_back(dot(seg.p1, l));
      }
      return;
    }
    const double u = q0 / (q0 - q1);
    if (u < -1e-13 || u > 1 + 1e-13) return;
    out.push_back(dot(seg.point(std::clamp(u, 0.0, 1.0)), l));
    return;
  }
  // circle: |s*l + y0*t - c|^2 = r^2
  const double cs = dot(seg.center, l), ct = dot(seg.center, t);
  const double dt = y0 - ct;
  const double disc = seg.radius * seg.radius - dt * dt;
  if (disc < -1e-14) return;
  const double root = std::sqrt(std::max(disc, 0.0));
  for (double s : {cs - root, cs + root}) {
    const Vec2 p = s * l + y0 * t;
    double phi = std::atan2(p.y - seg.center.y, p.x - seg.center.x);
    while (phi < seg.phi0 - 1e-12) phi += 2 * pi;
    while (phi > seg.phi0 + 2 * pi - 1e-12) phi -= 2 * pi;
    if (phi <= seg.phi1 + 1e-12) out.push_back(s);
  }
}

// Boundary location at a piercing point; prefers a non-tangent segment.
inline BoundaryLocation piercing_location(const Region& region, Vec2 p, Vec2 l) {
  std::optional<BoundaryLocation> best;
  double best_dot = -1;
  const auto& segs = region.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    auto [t, d] = segs[i].closest(p);
    if (d > 1e-9) continue;
    const auto loc = region.location(i, t);
    const double nd = std::abs(dot(loc.normal, l));
    if (nd > best_dot) {
      best_dot = nd;
      best = loc;
    }
  }
  return best ? *best : region.locate(p);
}

}  // namespace detail

/// All maximal open intervals of the line inside the region.
inline LineSection line_section(const Region& region, Vec2 direction, std::span<const double> anchor) {
  require_unit(direction, "line direction");
  LineSection out;
  out.direction = direction;
  out.anchor.assign(anchor.begin(), anchor.end());
  if (anchor.size() != static_cast<std::size_t>(region.dimension() - 1)) {
    throw ArgumentError("anchor has " + std::to_string(anchor.size()) + " components, expected " +
                        std::to_string(region.dimension() - 1));
  }
  if (region.dimension() == 1) {
    if (std::abs(direction.y) > 1e-12) throw ArgumentError("1D direction must be +x or -x");
    const double sgn = direction.x > 0 ? 1.0 : -1.0;
    const auto left = region.location(0, 0), right = region.location(1, 0);
    SectionInterval iv;
    if (sgn > 0) {
      iv = {region.a(), region.b(), region.lambda_at(direction, left), region.lambda_at(direction, right),
            left, right};
    } else {
      iv = {-region.b(), -region.a(), region.lambda_at(direction, right), region.lambda_at(direction, left),
            right, left};
    }
    out.intervals.push_back(iv);
    return out;
  }

  const double y0 = anchor.front();
  std::vector<double> cuts;
  for (const auto& seg : region.segments()) detail::line_crossings(seg, direction, y0, cuts);
  if (cuts.size() < 2) return out;
  std::sort(cuts.begin(), cuts.end());
  const double scale = std::max(1.0, std::abs(cuts.back()) + std::abs(cuts.front()));
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [&](double a, double b) { return std::abs(a - b) < 1e-12 * scale; }),
             cuts.end());

  // classify the pieces between consecutive cuts, merging across tangent touches
  std::optional<double> open;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const bool inside = region.contains(out.point(mid));
    if (inside && !open) open = cuts[i];
    if (!inside && open) {
      out.intervals.push_back({*open, cuts[i]});
      open.reset();
    }
  }
  if (open) out.intervals.push_back({*open, cuts.back()});

  for (auto& iv : out.intervals) {
    iv.at_minus = detail::piercing_location(region, out.point(iv.x_minus), direction);
    iv.at_plus = detail::piercing_location(region, out.point(iv.x_plus), direction);
    iv.lambda_minus = region.lambda_at(direction, iv.at_minus);
    iv.lambda_plus = region.lambda_at(direction, iv.at_plus);
  }
  return out;
}

inline LineSection line_section(const Region& region, Vec2 direction, double anchor) {
  const double a[1] = {anchor};
  return line_section(region, direction, std::span<const double>(a, 1));
}

inline LineSection line_section(const Region& region, Vec2 direction) {
  return line_section(region, direction, std::span<const double>{});
}

/// Transverse coordinate range of the region for lines along `direction`,
/// together with the break points where the section length has kinks.
inline std::vector<double> transverse_breakpoints(const Region& region, Vec2 direction) {
  std::vector<double> out;
  if (region.dimension() == 1) return out;
  const Vec2 t = perp(direction);
  for (const auto& s : region.segments()) {
    out.push_back(dot(s.p0, t));
    out.push_back(dot(s.p1, t));
    if (s.kind == SegmentKind::arc) {
      // extreme transverse points of the arc
      for (double sgn : {1.0, -1.0}) {
        double phi = std::atan2(sgn * t.y, sgn * t.x);
        while (phi < s.phi0) phi += 2 * pi;
        if (phi <= s.phi1) out.push_back(dot(s.center, t) + sgn * s.radius);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-13; }),
            out.end());
  return out;
}

// --- boundary quadrature ---------------------------------------------------

struct BoundaryNode {
  Vec2 point;
  Vec2 normal;
  double weight = 0.0;
  BoundaryLocation location;
};

/// Gauss-Legendre nodes over the boundary, distributed over segments in
/// proportion to their length. For an interval the two endpoints carry unit
/// (counting) weight.
inline std::vector<BoundaryNode> boundary_quadrature(const Region& region, int n_points) {
  if (n_points < 8) throw ArgumentError("boundary_quadrature needs n_points >= 8");
  if (!(region.area() > 0)) throw GeometryError("degenerate region");
  std::vector<BoundaryNode> out;
  if (region.dimension() == 1) {
    for (std::size_t i = 0; i < 2; ++i) {
      auto loc = region.location(i, 0);
      out.push_back({loc.point, loc.normal, 1.0, loc});
    }
    return out;
  }
  constexpr int order = 4;
  const double perim = region.perimeter();
  const auto& segs = region.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double len = segs[i].length();
    const int pts = std::max(order, static_cast<int>(std::lround(n_points * len / perim)));
    const int panels = std::max(1, (pts + order - 1) / order);
    for (const auto& node : quad::composite(0.0, 1.0, panels, order)) {
      auto loc = region.location(i, node.x);
      out.push_back({loc.point, loc.normal, node.w * len, loc});
    }
  }
  return out;
}

// --- boundary partition ----------------------------------------------------

struct BoundaryPiece {
  std::size_t segment = 0;
  double t0 = 0.0;
  double t1 = 1.0;
};

struct BoundaryPartition {
  std::vector<BoundaryPiece> positive;  // n . l > 0
  std::vector<BoundaryPiece> negative;  // n . l < 0
  std::vector<BoundaryPiece> tangent;   // n . l = 0 on a set of positive length
};

inline BoundaryPartition partition_boundary(const Region& region, Vec2 direction) {
  require_unit(direction, "partition direction");
  BoundaryPartition out;
  const auto classify = [&](double nd, BoundaryPiece piece) {
    if (nd > tangency_tolerance) out.positive.push_back(piece);
    else if (nd < -tangency_tolerance) out.negative.push_back(piece);
    else out.tangent.push_back(piece);
  };
  if (region.dimension() == 1) {
    classify(-direction.x, {0, 0, 1});
    classify(direction.x, {1, 0, 1});
    return out;
  }
  const auto& segs = region.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    if (s.kind == SegmentKind::line) {
      classify(dot(s.normal(0.5), direction), {i, 0, 1});
      continue;
    }
    // n . l = cos(phi - phi_l) changes sign at phi_l +- pi/2
    const double phi_l = std::atan2(direction.y, direction.x);
    std::vector<double> ts = {0.0, 1.0};
    for (double z : {phi_l + pi / 2, phi_l - pi / 2}) {
      for (int k = -2; k <= 2; ++k) {
        const double phi = z + 2 * pi * k;
        if (phi > s.phi0 + 1e-12 && phi < s.phi1 - 1e-12) ts.push_back((phi - s.phi0) / (s.phi1 - s.phi0));
      }
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      const double tm = 0.5 * (ts[k] + ts[k + 1]);
      const double nd = dot(s.normal(tm), direction);
      // an arc is never tangent on a set of positive length
      if (nd > 0) out.positive.push_back({i, ts[k], ts[k + 1]});
      else out.negative.push_back({i, ts[k], ts[k + 1]});
    }
  }
  return out;
}

}  // namespace boxmom
