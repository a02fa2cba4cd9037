#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "boxmom/evolution.hpp"

using namespace boxmom;

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigen_of(const HamiltonianOperator& H) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(Eigen::MatrixXcd(H.matrix()));
}

Region robin_rectangle() {
  return Region::rectangle(2, 1).with_gamma(BoundaryField::per_segment({0.7, 1.5, 0.0, 3.0}));
}

}  // namespace

TEST(Hamiltonian, DirichletBoxGroundState) {
  const auto r = Region::interval(0, pi);
  const auto g = Grid::for_region(r, pi / 400);
  const auto H = build_hamiltonian(r, g, 1.0, Potential::zero());
  EXPECT_EQ(H.unknowns(), 399u);
  EXPECT_NEAR(eigen_of(H).eigenvalues()[0], 0.5, 1e-4);
}

TEST(Hamiltonian, NeumannGroundStateIsConstant) {
  const auto r = Region::interval(0, 1).with_gamma(BoundaryField::constant(0.0));
  const auto g = Grid::for_region(r, 1.0 / 64);
  const auto H = build_hamiltonian(r, g, 1.0, Potential::zero());
  const auto es = eigen_of(H);
  EXPECT_NEAR(es.eigenvalues()[0], 0.0, 1e-10);
  const auto psi = H.from_unknowns(es.eigenvectors().col(0));
  for (const auto& v : psi) EXPECT_NEAR(std::abs(v / psi[0] - 1.0), 0.0, 1e-10);
}

TEST(Hamiltonian, RobinEigenvalueMatchesTranscendentalRoot) {
  // gamma psi - psi' = 0 at 0, Dirichlet at 1: psi = sin(k (1 - x)) needs tan(k) = -k / gamma
  const double gamma = 2.0;
  const auto r = Region::interval(0, 1).with_gamma(BoundaryField::per_segment({gamma, std::numeric_limits<double>::infinity()}));
  double k = 2.5;  // root in (pi/2, pi)
  for (int it = 0; it < 50; ++it) {
    const double f = std::tan(k) + k / gamma, df = 1 / (std::cos(k) * std::cos(k)) + 1 / gamma;
    k -= f / df;
  }
  std::vector<double> err;
  for (double h : {1.0 / 64, 1.0 / 128}) {
    const auto H = build_hamiltonian(r, Grid::for_region(r, h), 1.0, Potential::zero());
    err.push_back(std::abs(eigen_of(H).eigenvalues()[0] - 0.5 * k * k));
  }
  EXPECT_LT(err[1], 1e-3);
  EXPECT_GT(std::log2(err[0] / err[1]), 1.7);
}

TEST(Hamiltonian, HermitianForRandomRealGamma) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 5);
  for (int k = 0; k < 10; ++k) {
    const auto r = Region::rectangle(1.5, 1).with_gamma(BoundaryField::per_segment({u(rng), u(rng), u(rng), u(rng)}));
    const auto H = build_hamiltonian(r, Grid::for_region(r, 1.0 / 16), 1.0, Potential::harmonic(2, {0.7, 0.5}));
    EXPECT_LT(hermiticity_residual(H), 1e-12);
  }
}

TEST(Hamiltonian, DirichletLimitIsHermitian) {
  const auto r = Region::rectangle(1, 1);
  EXPECT_LT(hermiticity_residual(build_hamiltonian(r, Grid::for_region(r, 1.0 / 16), 1.0, Potential::zero())), 1e-12);
}

TEST(Hamiltonian, ImaginaryGammaBreaksHermiticity) {
  const auto g = Grid::for_region(Region::rectangle(1, 1), 1.0 / 16);
  std::vector<SideBC> sides(4, SideBC::robin(1.0));
  sides[1] = SideBC::robin(cplx(1.0, 0.1));
  const auto H = assemble_hamiltonian(g, 1.0, std::vector<double>(g.size()), sides);
  EXPECT_GT(hermiticity_residual(H), 1e-3);
  // the residual grows linearly with the injected imaginary part
  sides[1] = SideBC::robin(cplx(1.0, 0.2));
  const double r2 = hermiticity_residual(assemble_hamiltonian(g, 1.0, std::vector<double>(g.size()), sides));
  EXPECT_NEAR(r2 / hermiticity_residual(H), 2.0, 1e-9);
}

TEST(Hamiltonian, ValidationErrors) {
  const auto g = Grid::for_region(Region::interval(0, 1), 0.1);
  std::vector<SideBC> sides = {SideBC::robin(cplx(1, 0.1)), SideBC::dirichlet_side()};
  EXPECT_THROW(build_hamiltonian(g, 1.0, std::vector<double>(g.size()), sides), ValidationError);
  std::vector<double> v(g.size());
  v[3] = std::nan("");
  EXPECT_THROW(build_hamiltonian(g, 1.0, v, {SideBC::dirichlet_side(), SideBC::dirichlet_side()}), ValidationError);
  v[3] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(build_hamiltonian(g, 1.0, v, {SideBC::dirichlet_side(), SideBC::dirichlet_side()}), ValidationError);
  EXPECT_THROW(build_hamiltonian(g, 0.0, std::vector<double>(g.size()), {SideBC::dirichlet_side(), SideBC::dirichlet_side()}),
               ArgumentError);
}

TEST(Hamiltonian, TooCoarseGridIsResolutionError) {
  Grid g;
  g.nx = 2;
  g.hx = 0.5;
  EXPECT_THROW(assemble_hamiltonian(g, 1.0, std::vector<double>(g.size()), {SideBC::dirichlet_side(), SideBC::dirichlet_side()}),
               ResolutionError);
}

TEST(Hamiltonian, TableGammaNeedsPerSideValues) {
  const auto r = Region::rectangle(1, 1).with_gamma(BoundaryField::table({{0.0, 1.0}, {2.0, 2.0}}));
  EXPECT_THROW(build_hamiltonian(r, Grid::for_region(r, 0.1), 1.0, Potential::zero()), DomainError);
}

TEST(CrankNicolson, EigenstatePhaseRotationIsThirdOrder) {
  const auto r = robin_rectangle();
  const auto H = build_hamiltonian(r, Grid::for_region(r, 1.0 / 8), 1.0, Potential::linear({0.3, -0.2}));
  const auto es = eigen_of(H);
  const Eigen::VectorXcd u = es.eigenvectors().col(2);
  const double E = es.eigenvalues()[2];
  std::vector<double> err;
  for (double dt : {0.02, 0.01}) {
    CrankNicolson cn(H, dt);
    err.push_back((cn.step(u) - std::exp(cplx(0, -E * dt)) * u).norm());
  }
  EXPECT_LT(err[0], std::pow(E * 0.02, 3));
  EXPECT_NEAR(std::log2(err[0] / err[1]), 3.0, 0.05);
}

TEST(CrankNicolson, NormDriftOverAThousandSteps) {
  const auto r = robin_rectangle();
  const auto g = Grid::for_region(r, 1.0 / 16);
  const auto H = build_hamiltonian(r, g, 1.0, Potential::harmonic(3, {1, 0.5}));
  auto s = sample_physical(g, gaussian_packet({0.8, 0.5}, 0.15, {4, 2}));
  s.normalize();
  CrankNicolson cn(H, 1e-3);
  EXPECT_TRUE(cn.separable_path());
  Eigen::VectorXcd u = H.to_unknowns(s.scalar());
  const double n0 = u.squaredNorm();
  const double e0 = std::real(u.dot(H.matrix() * u)) / n0;
  for (int k = 0; k < 1000; ++k) u = cn.step(u);
  EXPECT_LT(std::abs(u.squaredNorm() - n0), 1e-8);
  EXPECT_LT(std::abs(std::real(u.dot(H.matrix() * u)) / u.squaredNorm() - e0), 1e-8 * std::abs(e0));
}

TEST(CrankNicolson, SeparableAndSparsePathsAgree) {
  const auto r = robin_rectangle();
  const auto g = Grid::for_region(r, 1.0 / 16);
  const Potential V = Potential::harmonic(2, {1.1, 0.4});
  const auto fast = build_hamiltonian(r, g, 1.0, V);
  const auto plain = build_hamiltonian(g, 1.0, sample_potential(g, V, 1.0), side_conditions(r));
  ASSERT_TRUE(fast.separable());
  ASSERT_FALSE(plain.separable());
  CrankNicolson a(fast, 2e-3), b(plain, 2e-3);
  EXPECT_TRUE(a.separable_path());
  EXPECT_FALSE(b.separable_path());
  auto s = sample_physical(g, gaussian_packet({0.9, 0.5}, 0.2, {3, -1}));
  Eigen::VectorXcd ua = fast.to_unknowns(s.scalar()), ub = ua;
  for (int k = 0; k < 50; ++k) {
    ua = a.step(ua);
    ub = b.step(ub);
  }
  EXPECT_LT((ua - ub).norm(), 1e-11 * ua.norm());
  EXPECT_LT(a.last_residual(), 1e-10);
}

TEST(CrankNicolson, SineTransformPathAgreesWithSparseLU) {
  // Dirichlet y sides and an x-only potential keep Hy Toeplitz
  constexpr double D = std::numeric_limits<double>::infinity();
  const auto r = Region::rectangle(1.5, 1).with_gamma(BoundaryField::per_segment({D, 0.7, D, 1.5}));
  const auto g = Grid::for_region(r, 1.0 / 24);
  const Potential V = Potential::linear({0.3, 0});
  const auto fast = build_hamiltonian(r, g, 1.0, V);
  const auto plain = build_hamiltonian(g, 1.0, sample_potential(g, V, 1.0), side_conditions(r));
  CrankNicolson a(fast, 2e-3), b(plain, 2e-3);
  ASSERT_TRUE(a.sine_path());
  EXPECT_FALSE(CrankNicolson(build_hamiltonian(robin_rectangle(), Grid::for_region(robin_rectangle(), 1.0 / 16), 1.0,
                                               Potential::zero()),
                             2e-3)
                   .sine_path());
  auto s = sample_physical(g, gaussian_packet({0.7, 0.4}, 0.15, {3, 2}));
  Eigen::VectorXcd ua = fast.to_unknowns(s.scalar()), ub = ua;
  for (int k = 0; k < 50; ++k) {
    ua = a.step(ua);
    ub = b.step(ub);
  }
  EXPECT_LT((ua - ub).norm(), 1e-11 * ua.norm());
}

TEST(CrankNicolson, OneDimensionalSeparablePath) {
  const auto r = Region::interval(0, 2).with_gamma(BoundaryField::per_segment({1.0, 0.5}));
  const auto g = Grid::for_region(r, 1.0 / 64);
  const Potential V = Potential::harmonic(1.5, {0.8, 0});
  const auto fast = build_hamiltonian(r, g, 1.0, V);
  const auto plain = build_hamiltonian(g, 1.0, sample_potential(g, V, 1.0), side_conditions(r));
  CrankNicolson a(fast, 1e-3), b(plain, 1e-3);
  auto s = sample_physical(g, gaussian_packet_1d(1.0, 0.1, 6));
  Eigen::VectorXcd ua = fast.to_unknowns(s.scalar()), ub = ua;
  for (int k = 0; k < 100; ++k) {
    ua = a.step(ua);
    ub = b.step(ub);
  }
  EXPECT_LT((ua - ub).norm(), 1e-11 * ua.norm());
}

TEST(CrankNicolson, FreePacketMovesAtGroupVelocity) {
  // walls 10 widths away; <p> is read from the initial state
  const auto r = Region::rectangle(6, 4);
  const auto g = Grid::for_region(r, 1.0 / 64);
  const double m = 2.0;
  const auto H = build_hamiltonian(r, g, m, Potential::zero());
  auto s = sample_physical(g, gaussian_packet({2.0, 2.0}, 0.2, {3, -1}));
  s.normalize();
  RecordOptions opt;
  opt.spectral = false;
  opt.forces = false;
  opt.every = 50;
  const auto run = evolve(r, H, Potential::zero(), s, 1e-3, 200, opt);
  const Vec2 x0 = run.series.front().position, p = run.series.front().gradient_re;
  EXPECT_NEAR(p.x, 3.0, 1e-2);
  for (const auto& snap : run.series) {
    const Vec2 expect = x0 + p * (snap.t / m);
    EXPECT_LT(norm(snap.position - expect), 1e-3) << "t=" << snap.t;
  }
}

TEST(CrankNicolson, RejectsBadInputs) {
  const auto r = Region::interval(0, 1);
  const auto g = Grid::for_region(r, 0.1);
  const auto H = build_hamiltonian(r, g, 1.0, Potential::zero());
  EXPECT_THROW(CrankNicolson(H, 0.0), ArgumentError);
  const auto other = Grid::for_region(r, 0.05);
  EXPECT_THROW(evolve(r, H, Potential::zero(), sample_physical(other, gaussian_packet_1d(0.5, 0.1, 0)), 1e-3, 1),
               ArgumentError);
}

TEST(Evolve, RecordsTheRequestedSnapshots) {
  const auto r = Region::interval(0, 1);
  const auto g = Grid::for_region(r, 1.0 / 64);
  const auto H = build_hamiltonian(r, g, 1.0, Potential::zero());
  RecordOptions opt;
  opt.every = 4;
  opt.modes = 16;
  const auto run = evolve(r, H, Potential::zero(), sample_physical(g, gaussian_packet_1d(0.5, 0.1, 2)), 1e-3, 20, opt);
  ASSERT_EQ(run.series.size(), 6u);
  EXPECT_DOUBLE_EQ(run.series.back().t, 0.02);
  EXPECT_EQ(run.series.back().side_force.size(), 2u);
  EXPECT_TRUE(run.final_state.physical());
}
