#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "boxmom/state.hpp"

using namespace boxmom;

namespace {

std::vector<cplx> random_field(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

// Gaussian packet on [0, L] plus cubic corrections p, q chosen so that
// gamma_0 psi - psi' = 0 at x = 0 and gamma_1 psi + psi' = 0 at x = L.
// p = x (1 - x/L)^2 has p'(0) = 1 and p(0) = p(L) = p'(L) = 0; q = x^2 (x - L)/L^2
// has q'(L) = 1 and vanishes with its slope at 0.
std::function<cplx(double)> robin_packet(double L, double g0, double g1) {
  const auto base = gaussian_packet_1d(0.45 * L, 0.12 * L, 7.0);
  const auto f = [base](double x) { return base.value({x, 0}); };
  const auto df = [base](double x) { return base.gradient({x, 0}).x; };
  const cplx a = g0 * f(0) - df(0);
  const cplx b = -g1 * f(L) - df(L);
  return [=](double x) {
    const double p = x * (1 - x / L) * (1 - x / L), q = x * x * (x - L) / (L * L);
    return f(x) + a * p + b * q;
  };
}

}  // namespace

TEST(Grid, ForRegion) {
  const auto g = Grid::for_region(Region::rectangle(2, 1, {0.5, -1}), 1.0 / 16);
  EXPECT_EQ(g.nx, 32);
  EXPECT_EQ(g.ny, 16);
  EXPECT_EQ(g.point(32, 16), (Vec2{2.5, 0.0}));
  double w = 0;
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) w += g.weight(i, j);
  EXPECT_NEAR(w, 2.0, 1e-14);
  EXPECT_THROW(Grid::for_region(Region::rounded_rectangle(2, 1, 0.1), 0.1), DomainError);
  EXPECT_THROW(Grid::for_region(Region::interval(0, 1), 0.0), ArgumentError);
}

TEST(EmbedPhysical, NormalizedFieldHasUnitDoubledNorm) {
  const auto g = Grid::for_region(Region::interval(0, 1), 1.0 / 200);
  std::vector<cplx> psi(g.size());
  double n2 = 0;
  for (int i = 0; i <= g.nx; ++i) {
    psi[i] = std::exp(cplx(-std::pow(g.point(i).x - 0.5, 2) / 0.02, 3 * g.point(i).x));
    n2 += g.weight(i) * std::norm(psi[i]);
  }
  for (auto& v : psi) v /= std::sqrt(n2);
  const auto s = embed_physical(g, psi);
  EXPECT_TRUE(s.physical());
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-14);
}

TEST(EmbedPhysical, RoundTrip) {
  std::mt19937_64 rng(1);
  const auto g = Grid::for_region(Region::rectangle(1, 1), 1.0 / 8);
  const auto psi = random_field(g.size(), rng);
  const auto s = embed_physical(g, psi);
  const auto back = s.scalar();
  for (std::size_t k = 0; k < psi.size(); ++k) {
    EXPECT_NEAR(std::abs(back[k] - psi[k]), 0.0, 1e-15 * std::abs(psi[k]) + 1e-300);
    EXPECT_EQ(s.even()[k], s.odd()[k]);
  }
}

TEST(EmbedPhysical, Errors) {
  const auto g = Grid::for_region(Region::interval(0, 1), 0.1);
  EXPECT_THROW(embed_physical(g, std::vector<cplx>(g.size())), NumericalError);
  EXPECT_THROW(embed_physical(g, std::vector<cplx>(3, 1.0)), ArgumentError);
}

TEST(WaveState, NormalizeIsIdempotent) {
  std::mt19937_64 rng(2);
  const auto g = Grid::for_region(Region::rectangle(2, 1), 1.0 / 16);
  auto s = WaveState(g, random_field(g.size(), rng), random_field(g.size(), rng));
  EXPECT_FALSE(s.physical());
  s.normalize();
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-14);
  auto t = s;
  t.normalize();
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_LT(std::abs(t.even()[k] - s.even()[k]), 1e-15);
    EXPECT_LT(std::abs(t.odd()[k] - s.odd()[k]), 1e-15);
  }
}

TEST(WaveState, InnerProductIsConjugateSymmetricAndPositive) {
  std::mt19937_64 rng(3);
  const auto g = Grid::for_region(Region::rectangle(1, 0.5), 1.0 / 12);
  for (int k = 0; k < 100; ++k) {
    const WaveState a(g, random_field(g.size(), rng), random_field(g.size(), rng));
    const WaveState b(g, random_field(g.size(), rng), random_field(g.size(), rng));
    const cplx ab = inner(a, b), ba = inner(b, a);
    EXPECT_LT(std::abs(ab - std::conj(ba)), 1e-12 * std::abs(ab) + 1e-14);
    EXPECT_GT(inner(a, a).real(), 0.0);
    EXPECT_LT(std::abs(inner(a, a).imag()), 1e-14 * inner(a, a).real());
  }
}

TEST(WaveState, PhysicalInnerProductEqualsSingleComponent) {
  std::mt19937_64 rng(4);
  const auto g = Grid::for_region(Region::rectangle(1, 1), 1.0 / 10);
  for (int k = 0; k < 20; ++k) {
    const auto f = random_field(g.size(), rng), h = random_field(g.size(), rng);
    cplx single{};
    for (int j = 0; j <= g.ny; ++j)
      for (int i = 0; i <= g.nx; ++i) single += g.weight(i, j) * std::conj(f[g.index(i, j)]) * h[g.index(i, j)];
    EXPECT_LT(std::abs(inner(embed_physical(g, f), embed_physical(g, h)) - single), 1e-12 * std::abs(single));
  }
}

TEST(WaveState, DifferentGridsRejected) {
  const auto a = Grid::for_region(Region::interval(0, 1), 0.1), b = Grid::for_region(Region::interval(0, 1), 0.05);
  EXPECT_THROW(inner(embed_physical(a, std::vector<cplx>(a.size(), 1.0)), embed_physical(b, std::vector<cplx>(b.size(), 1.0))),
               ArgumentError);
}

TEST(ProbabilityCurrent, RealFieldCarriesNoCurrent) {
  std::mt19937_64 rng(5);
  const auto g = Grid::for_region(Region::rectangle(1, 1), 1.0 / 16);
  auto f = random_field(g.size(), rng);
  for (auto& v : f) v = v.real();
  const auto j = probability_current(embed_physical(g, f), 1.3);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_EQ(j.jx[k], 0.0);
    EXPECT_EQ(j.jy[k], 0.0);
  }
  EXPECT_EQ(boundary_flux(embed_physical(g, f), 1.0), 0.0);
}

TEST(ProbabilityCurrent, PlaneWaveEnvelope) {
  const double k = 5, m = 2;
  const auto g = Grid::for_region(Region::interval(0, 1), 1e-3);
  const auto s = sample_physical(g, gaussian_packet_1d(0.5, 0.1, k));
  const auto j = probability_current(s, m);
  const auto psi = s.scalar();
  for (int i = 400; i <= 600; ++i) EXPECT_NEAR(j.jx[i], k / m * std::norm(psi[i]), 1e-4);
}

TEST(ProbabilityCurrent, NonPhysicalStateIsDomainError) {
  const auto g = Grid::for_region(Region::interval(0, 1), 0.1);
  const WaveState s(g, std::vector<cplx>(g.size(), 1.0), std::vector<cplx>(g.size(), 2.0));
  EXPECT_THROW(probability_current(s, 1.0), DomainError);
  EXPECT_THROW(boundary_flux(s, 1.0), DomainError);
}

TEST(BoundaryFlux, RobinCompatibleStateConvergesAtSecondOrder1D) {
  const double L = 2;
  const auto psi = robin_packet(L, 1.0, 0.5);
  std::vector<double> flux;
  for (double h : {1.0 / 64, 1.0 / 128, 1.0 / 256}) {
    const auto g = Grid::for_region(Region::interval(0, L), h);
    std::vector<cplx> v(g.size());
    for (int i = 0; i <= g.nx; ++i) v[i] = psi(g.point(i).x);
    auto s = embed_physical(g, v);
    s.normalize();
    flux.push_back(boundary_flux(s, 1.0));
  }
  EXPECT_GT(flux[0], 0.0);
  for (std::size_t i = 1; i < flux.size(); ++i) EXPECT_GT(std::log2(flux[i - 1] / flux[i]), 1.7);
}

TEST(BoundaryFlux, RobinCompatibleStateConvergesAtSecondOrder2D) {
  // Robin in x, Dirichlet in y via sin(pi y)
  const double L = 2;
  const auto px = robin_packet(L, 2.0, 0.0);
  std::vector<double> flux, peak;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    const auto g = Grid::for_region(Region::rectangle(L, 1), h);
    std::vector<cplx> v(g.size());
    for (int j = 0; j <= g.ny; ++j)
      for (int i = 0; i <= g.nx; ++i) v[g.index(i, j)] = px(g.point(i, j).x) * std::sin(pi * g.point(i, j).y);
    auto s = embed_physical(g, v);
    s.normalize();
    flux.push_back(boundary_flux(s, 1.0));
    peak.push_back(max_normal_current(s, 1.0));
  }
  for (std::size_t i = 1; i < flux.size(); ++i) {
    EXPECT_GT(std::log2(flux[i - 1] / flux[i]), 1.7);
    EXPECT_GT(std::log2(peak[i - 1] / peak[i]), 1.7);
  }
}

TEST(BoundaryFlux, AnalyticRobinStateHasNoFlux) {
  const double L = 1.5;
  const auto f = robin_packet(L, 0.7, 1.3);
  const double e = 1e-6;
  AnalyticState s;
  s.value = [f](Vec2 p) { return f(p.x); };
  s.gradient = [f, e](Vec2 p) { return CVec2{(f(p.x + e) - f(p.x - e)) / (2 * e), 0.0}; };
  EXPECT_LT(boundary_flux(s, Region::interval(0, L), 1.0), 1e-8);
}

TEST(StateCsv, RoundTripIsExact) {
  std::mt19937_64 rng(6);
  const auto g = Grid::for_region(Region::rectangle(1.5, 1, {-0.25, 0.125}), 1.0 / 8);
  const WaveState s(g, random_field(g.size(), rng), random_field(g.size(), rng));
  std::stringstream ss;
  write_state_csv(ss, s, "rectangle");
  const auto back = read_state_csv(ss);
  EXPECT_EQ(back.region_id, "rectangle");
  EXPECT_EQ(back.state.grid(), g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_EQ(back.state.even()[k], s.even()[k]);
    EXPECT_EQ(back.state.odd()[k], s.odd()[k]);
  }
  EXPECT_FALSE(back.state.physical());
}

TEST(StateCsv, MalformedInputsRejected) {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_state_csv(in);
  };
  const std::string header = "# region=interval_1d dim=1 nx=2 ny=0 x0=0 y0=0 hx=0.5 hy=1\n";
  const std::string cols = "index,re_even,im_even,re_odd,im_odd\n";
  const std::string rows = "0,1,0,1,0\n1,1,0,1,0\n2,1,0,1,0\n";
  EXPECT_NO_THROW(parse(header + cols + rows));
  EXPECT_TRUE(parse(header + cols + rows).state.physical());
  EXPECT_THROW(parse(cols + rows), ArgumentError);
  EXPECT_THROW(parse("# region=interval_1d dim=1 nx=2 ny=0 x0=0 y0=0 hx=0.5\n" + cols + rows), ArgumentError);
  EXPECT_THROW(parse("# region=interval_1d dim=1 nx=2 ny=0 x0=0 y0=0 hx=0.5 hy=1 extra=3\n" + cols + rows),
               ArgumentError);
  EXPECT_THROW(parse("# region=interval_1d dim=1 nx=two ny=0 x0=0 y0=0 hx=0.5 hy=1\n" + cols + rows), ArgumentError);
  EXPECT_THROW(parse(header + "index,a,b\n" + rows), ArgumentError);
  EXPECT_THROW(parse(header + cols + "0,1,0,1,0\n1,1,0,1,0\n"), ArgumentError);
  EXPECT_THROW(parse(header + cols + rows + "3,1,0,1,0\n"), ArgumentError);
  EXPECT_THROW(parse(header + cols + "0,1,0,1\n1,1,0,1,0\n2,1,0,1,0\n"), ArgumentError);
}

TEST(RandomPacketState, CentersRespectTheMargin) {
  std::mt19937_64 rng(7);
  const auto pent = Region::convex_polygon({{0, 0}, {2, 0}, {2.4, 1.0}, {1.0, 1.8}, {-0.3, 1.0}});
  RandomStateOptions opt;
  opt.packets = 1;
  opt.width_min = 0.03;
  opt.width_max = 0.05;
  opt.margin = 6;
  for (int k = 0; k < 50; ++k) {
    const auto s = random_packet_state(pent, rng, opt);
    // |psi| peaks at the center, which is inside with distance >= 6 widths
    double best = 0;
    Vec2 arg{};
    for (double x = -0.3; x <= 2.4; x += 0.01)
      for (double y = 0; y <= 1.8; y += 0.01)
        if (std::abs(s.value({x, y})) > best) best = std::abs(s.value({x, y})), arg = {x, y};
    EXPECT_TRUE(pent.contains(arg));
    for (const auto& b : boundary_quadrature(pent, 256)) EXPECT_LT(std::abs(s.value(b.point)), 1e-3 * best);
  }
}

TEST(RandomPacketState, DeterministicForASeed) {
  const auto r = Region::rectangle(2, 1);
  std::mt19937_64 a(9), b(9);
  const auto sa = random_packet_state(r, a), sb = random_packet_state(r, b);
  for (Vec2 p : {Vec2{0.3, 0.2}, Vec2{1.1, 0.7}, Vec2{1.9, 0.5}}) EXPECT_EQ(sa.value(p), sb.value(p));
}

TEST(RandomPacketState, AnalyticDerivativesAgreeWithFiniteDifferences) {
  std::mt19937_64 rng(10);
  const auto s = random_packet_state(Region::rectangle(2, 1), rng);
  const double e = 1e-5;
  for (Vec2 p : {Vec2{0.4, 0.3}, Vec2{1.2, 0.6}}) {
    const CVec2 g = s.gradient(p);
    EXPECT_LT(std::abs(g.x - (s.value(p + Vec2{e, 0}) - s.value(p - Vec2{e, 0})) / (2 * e)), 1e-5 * (1 + std::abs(g.x)));
    EXPECT_LT(std::abs(g.y - (s.value(p + Vec2{0, e}) - s.value(p - Vec2{0, e})) / (2 * e)), 1e-5 * (1 + std::abs(g.y)));
    const double e2 = 1e-4;
    const cplx lap = (s.value(p + Vec2{e2, 0}) + s.value(p - Vec2{e2, 0}) + s.value(p + Vec2{0, e2}) +
                      s.value(p - Vec2{0, e2}) - 4.0 * s.value(p)) /
                     (e2 * e2);
    EXPECT_LT(std::abs(s.laplacian(p) - lap), 1e-3 * (1 + std::abs(lap)));
  }
}

TEST(WallCorrected, VanishesOnEverySide) {
  const auto r = Region::rectangle(2, 1, {0.5, 0.25});
  const auto psi = wall_corrected(gaussian_packet({1.0, 0.6}, 0.3, {2, -1}), r);
  for (double t = 0; t <= 1.0; t += 0.05) {
    EXPECT_LT(std::abs(psi.value({0.5 + 2 * t, 0.25})), 1e-15);
    EXPECT_LT(std::abs(psi.value({0.5 + 2 * t, 1.25})), 1e-15);
    EXPECT_LT(std::abs(psi.value({0.5, 0.25 + t})), 1e-15);
    EXPECT_LT(std::abs(psi.value({2.5, 0.25 + t})), 1e-15);
  }
  const auto line = wall_corrected(gaussian_packet_1d(0.3, 0.2, 4), Region::interval(0, 1));
  EXPECT_LT(std::abs(line.value({0, 0})), 1e-15);
  EXPECT_LT(std::abs(line.value({1, 0})), 1e-15);
  EXPECT_THROW(wall_corrected(psi, Region::rounded_rectangle(2, 1, 0.1)), DomainError);
}

TEST(AnalyticNormalize, UnitNormAndZeroFieldRejected) {
  const auto r = Region::convex_polygon({{0, 0}, {2, 0}, {2.4, 1.0}, {1.0, 1.8}, {-0.3, 1.0}});
  const auto s = normalize(gaussian_packet({1, 0.8}, 0.2, {1, 1}), r);
  EXPECT_NEAR(analytic_norm_squared(s, r, {}), 1.0, 1e-12);
  EXPECT_THROW(normalize(gaussian_packet({1, 0.8}, 0.2, {1, 1}).scaled(0.0), r), NumericalError);
}
