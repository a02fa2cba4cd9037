#include <gtest/gtest.h>

#include <random>

#include "boxmom/geometry.hpp"

using namespace boxmom;

namespace {

Region lshape() { return Region::polygon({{0, 0}, {3, 0}, {3, 1}, {2, 1}, {2, 2}, {0, 2}}); }

Region pentagon() { return Region::convex_polygon({{0, 0}, {2, 0}, {2.4, 1.0}, {1.0, 1.8}, {-0.3, 1.0}}); }

// brute-force maximal runs of the line inside the region
std::vector<std::pair<double, double>> sampled_runs(const Region& r, Vec2 l, double y0, double s0, double s1,
                                                    int samples = 10000) {
  std::vector<std::pair<double, double>> runs;
  bool in = false;
  double start = 0;
  const double ds = (s1 - s0) / samples;
  for (int i = 0; i <= samples; ++i) {
    const double s = s0 + (i + 0.5) * ds;
    const bool c = i < samples && r.contains(s * l + y0 * perp(l));
    if (c && !in) start = s - 0.5 * ds;
    if (!c && in) runs.emplace_back(start, s - 0.5 * ds);
    in = c;
  }
  return runs;
}

}  // namespace

TEST(LineSection, RectangleAlongXCarriesSideLambdas) {
  auto r = Region::rectangle(2, 1).with_lambda({1, 0}, BoundaryField::per_segment({0.0, 0.7, 0.0, -0.3}));
  const auto s = line_section(r, {1, 0}, 0.5);
  ASSERT_EQ(s.intervals.size(), 1u);
  EXPECT_NEAR(s.intervals[0].x_minus, 0.0, 1e-14);
  EXPECT_NEAR(s.intervals[0].x_plus, 2.0, 1e-14);
  // left side (segment 3) and right side (segment 1)
  EXPECT_EQ(s.intervals[0].lambda_minus, cplx(0, -0.3));
  EXPECT_EQ(s.intervals[0].lambda_plus, cplx(0, 0.7));
  EXPECT_EQ(s.intervals[0].at_minus.segment, 3u);
  EXPECT_EQ(s.intervals[0].at_plus.segment, 1u);
}

TEST(LineSection, LineOutsideRectangleIsEmpty) {
  EXPECT_TRUE(line_section(Region::rectangle(2, 1), {1, 0}, 1.5).intervals.empty());
}

TEST(LineSection, LShapeVerticalLines) {
  const auto r = lshape();
  // l = y: the transverse coordinate of perp(y) = (-1, 0) is -x
  const auto a = line_section(r, {0, 1}, -2.5);
  ASSERT_EQ(a.intervals.size(), 1u);
  EXPECT_NEAR(a.intervals[0].x_minus, 0.0, 1e-12);
  EXPECT_NEAR(a.intervals[0].x_plus, 1.0, 1e-12);
  const auto b = line_section(r, {0, 1}, -1.0);
  ASSERT_EQ(b.intervals.size(), 1u);
  EXPECT_NEAR(b.intervals[0].x_minus, 0.0, 1e-12);
  EXPECT_NEAR(b.intervals[0].x_plus, 2.0, 1e-12);
}

TEST(LineSection, LShapeDiagonalMatchesBruteForce) {
  const auto r = lshape();
  const Vec2 l = normalized({1, -1});
  for (double y0 : {1.2, 1.6, 2.0, 2.3, 2.47}) {
    const auto s = line_section(r, l, y0);
    const auto runs = sampled_runs(r, l, y0, -5, 5);
    ASSERT_EQ(s.intervals.size(), runs.size()) << "y0=" << y0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      EXPECT_NEAR(s.intervals[i].x_minus, runs[i].first, 2e-3);
      EXPECT_NEAR(s.intervals[i].x_plus, runs[i].second, 2e-3);
    }
  }
}

TEST(LineSection, EndpointsLieOnBoundary) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0, 2 * pi), off(-3, 3);
  for (const auto& r : {lshape(), pentagon(), Region::rounded_rectangle(2, 1, 0.2), Region::rectangle(2, 1)}) {
    for (int k = 0; k < 300; ++k) {
      const Vec2 l = rotated({1, 0}, ang(rng));
      const auto s = line_section(r, l, off(rng));
      for (const auto& iv : s.intervals) {
        EXPECT_LT(r.distance_to_boundary(s.point(iv.x_minus)), 1e-10);
        EXPECT_LT(r.distance_to_boundary(s.point(iv.x_plus)), 1e-10);
        EXPECT_LT(iv.x_minus, iv.x_plus);
      }
      for (std::size_t i = 1; i < s.intervals.size(); ++i) EXPECT_LE(s.intervals[i - 1].x_plus, s.intervals[i].x_minus);
    }
  }
}

TEST(LineSection, ConvexRegionsGiveAtMostOneInterval) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0, 2 * pi), off(-3, 3);
  for (const auto& r : {pentagon(), Region::rounded_rectangle(2, 1, 0.3), Region::rectangle(2, 1, {-1, 0.5})}) {
    for (int k = 0; k < 1000; ++k) EXPECT_LE(line_section(r, rotated({1, 0}, ang(rng)), off(rng)).intervals.size(), 1u);
  }
}

TEST(LineSection, ShrinkingRectangleShrinksIntervals) {
  const auto big = Region::rectangle(3, 2);
  const auto small = Region::rectangle(2, 1, {0.5, 0.5});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0, 2 * pi), off(-3, 3);
  for (int k = 0; k < 500; ++k) {
    const Vec2 l = rotated({1, 0}, ang(rng));
    const double y0 = off(rng);
    const auto a = line_section(small, l, y0), b = line_section(big, l, y0);
    if (a.intervals.empty()) continue;
    ASSERT_EQ(b.intervals.size(), 1u);
    EXPECT_GE(a.intervals[0].x_minus, b.intervals[0].x_minus - 1e-12);
    EXPECT_LE(a.intervals[0].x_plus, b.intervals[0].x_plus + 1e-12);
  }
}

TEST(LineSection, ArgumentErrors) {
  const auto r = Region::rectangle(2, 1);
  EXPECT_THROW(line_section(r, {1, 0}, std::vector<double>{}), ArgumentError);
  EXPECT_THROW(line_section(r, {2, 0}, 0.5), ArgumentError);
}

TEST(Region, SelfIntersectingPolygonIsRejected) {
  EXPECT_THROW(Region::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), GeometryError);
}

TEST(BoundaryQuadrature, RectanglePerimeterAndClosure) {
  const auto nodes = boundary_quadrature(Region::rectangle(2, 1), 256);
  double w = 0;
  Vec2 n{};
  for (const auto& b : nodes) {
    w += b.weight;
    n = n + b.normal * b.weight;
    EXPECT_NEAR(norm(b.normal), 1.0, 1e-14);
  }
  EXPECT_NEAR(w, 6.0, 1e-12);
  EXPECT_LT(norm(n), 1e-10);
}

TEST(BoundaryQuadrature, RoundedRectanglePerimeter) {
  double w = 0;
  for (const auto& b : boundary_quadrature(Region::rounded_rectangle(2, 1, 0.2), 512)) w += b.weight;
  EXPECT_NEAR(w, 6 - 8 * 0.2 + 2 * pi * 0.2, 1e-6);
}

TEST(BoundaryQuadrature, ClosureOnEveryRegion) {
  for (const auto& r : {lshape(), pentagon(), Region::rounded_rectangle(2, 1, 0.35)}) {
    for (int n : {64, 256}) {
      Vec2 acc{};
      double w = 0;
      for (const auto& b : boundary_quadrature(r, n)) {
        acc = acc + b.normal * b.weight;
        w += b.weight;
      }
      EXPECT_LT(norm(acc), 1e-10);
      EXPECT_NEAR(w, r.perimeter(), 1e-6);
    }
  }
}

TEST(BoundaryQuadrature, ConvergesForSmoothIntegrand) {
  // closed integral of n.x = 2 * area (divergence theorem)
  const auto r = Region::rounded_rectangle(2, 1, 0.3);
  const auto err = [&](int n) {
    double acc = 0;
    for (const auto& b : boundary_quadrature(r, n)) acc += b.weight * dot(b.normal, b.point);
    return std::abs(acc - 2 * r.area());
  };
  EXPECT_LT(err(64), 1e-6);
  EXPECT_LE(err(256), err(64) + 1e-12);
}

TEST(BoundaryQuadrature, RejectsTooFewPoints) {
  EXPECT_THROW(boundary_quadrature(Region::rectangle(1, 1), 7), ArgumentError);
}

TEST(PartitionBoundary, RectangleAlongX) {
  const auto p = partition_boundary(Region::rectangle(2, 1), {1, 0});
  ASSERT_EQ(p.positive.size(), 1u);
  ASSERT_EQ(p.negative.size(), 1u);
  ASSERT_EQ(p.tangent.size(), 2u);
  EXPECT_EQ(p.positive[0].segment, 1u);
  EXPECT_EQ(p.negative[0].segment, 3u);
  EXPECT_EQ(p.tangent[0].segment, 0u);
  EXPECT_EQ(p.tangent[1].segment, 2u);
}

TEST(PartitionBoundary, GenericDirectionHasNoTangentSet) {
  EXPECT_TRUE(partition_boundary(pentagon(), normalized({1, 0.37})).tangent.empty());
}

TEST(PartitionBoundary, RoundedRectangleTangentSetIsTheHorizontalFlats) {
  const auto p = partition_boundary(Region::rounded_rectangle(2, 1, 0.2), {1, 0});
  ASSERT_EQ(p.tangent.size(), 2u);
  EXPECT_EQ(p.tangent[0].segment, 0u);
  EXPECT_EQ(p.tangent[1].segment, 4u);
}

TEST(BoundaryField, TableInterpolatesPeriodically) {
  const auto f = BoundaryField::table({{0.0, 1.0}, {2.0, 3.0}});
  BoundaryLocation loc;
  loc.s = 1.0;
  EXPECT_DOUBLE_EQ(f.at(loc, 4.0), 2.0);
  loc.s = 3.0;  // between s = 2 and s = 4 (= 0)
  EXPECT_DOUBLE_EQ(f.at(loc, 4.0), 2.0);
}

TEST(RobinAngle, DirichletAndNeumannLimits) {
  EXPECT_TRUE(RobinAngle::from_gamma(std::numeric_limits<double>::infinity()).dirichlet());
  EXPECT_NEAR(RobinAngle::from_gamma(0.0).alpha, pi / 2, 1e-15);
  EXPECT_NEAR(std::tan(RobinAngle::from_gamma(2.0).alpha), 0.5, 1e-14);
}
