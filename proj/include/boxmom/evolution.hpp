#pragma once

// H = -(1/2m) Lap + V on interval and rectangle grids with Robin sides, and
// Crank-Nicolson propagation of physical states.
//
// Robin sides keep their boundary nodes; the ghost value is eliminated with the
// boundary condition and the boundary row carries trapezoid weight 1/2. The
// weighted operator W H is symmetric, so the assembled matrix acts on
// u = sqrt(w) Psi as S = W^{1/2} H W^{-1/2}. Dirichlet nodes are dropped.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/FFT>
#include <cmath>
#include <functional>
#include <vector>

#include "boxmom/core.hpp"
#include "boxmom/geometry.hpp"
#include "boxmom/model.hpp"
#include "boxmom/observables.hpp"
#include "boxmom/state.hpp"

namespace boxmom {

using SparseMatrix = Eigen::SparseMatrix<cplx>;
using ComplexVector = Eigen::VectorXcd;

namespace detail {

struct Axis1D {
  int first = 0;  // first kept node
  int last = 0;   // last kept node
  std::vector<Eigen::Triplet<cplx>> entries;  // -d^2/dx^2, symmetrized, on kept nodes (local index)

  int count() const { return last - first + 1; }
};

inline Axis1D axis_operator(int n, double h, const SideBC& lo, const SideBC& hi) {
  Axis1D a;
  a.first = lo.dirichlet ? 1 : 0;
  a.last = hi.dirichlet ? n - 1 : n;
  const double h2 = h * h;
  const double r2 = std::sqrt(2.0);
  for (int i = a.first; i <= a.last; ++i) {
    const int k = i - a.first;
    if (i == 0) {
      // ghost: Psi_{-1} = Psi_1 - 2h gamma Psi_0
      a.entries.emplace_back(k, k, (2.0 + 2.0 * h * lo.gamma) / h2);
      a.entries.emplace_back(k, k + 1, -r2 / h2);
    } else if (i == n) {
      a.entries.emplace_back(k, k, (2.0 + 2.0 * h * hi.gamma) / h2);
      a.entries.emplace_back(k, k - 1, -r2 / h2);
    } else {
      a.entries.emplace_back(k, k, 2.0 / h2);
      if (i - 1 >= a.first) a.entries.emplace_back(k, k - 1, (i - 1 == 0 ? -r2 : -1.0) / h2);
      if (i + 1 <= a.last) a.entries.emplace_back(k, k + 1, (i + 1 == n ? -r2 : -1.0) / h2);
    }
  }
  return a;
}

}  // namespace detail

class HamiltonianOperator {
 public:
  const Grid& grid() const { return grid_; }
  double mass() const { return mass_; }
  const std::vector<SideBC>& sides() const { return sides_; }
  const std::vector<double>& potential_samples() const { return v_; }
  const SparseMatrix& matrix() const { return s_; }
  std::size_t unknowns() const { return static_cast<std::size_t>(s_.rows()); }

  /// u = sqrt(w) Psi on kept nodes.
  ComplexVector to_unknowns(std::span<const cplx> psi) const {
    ComplexVector u(unknowns());
    for (std::size_t k = 0; k < map_.size(); ++k) {
      if (map_[k] >= 0) u[map_[k]] = std::sqrt(weight_[k]) * psi[k];
    }
    return u;
  }
  std::vector<cplx> from_unknowns(const ComplexVector& u) const {
    std::vector<cplx> psi(map_.size(), cplx{});
    for (std::size_t k = 0; k < map_.size(); ++k) {
      if (map_[k] >= 0) psi[k] = u[map_[k]] / std::sqrt(weight_[k]);
    }
    return psi;
  }

  /// <H> of a physical grid state, normalized.
  double energy(const WaveState& state) const {
    const auto u = to_unknowns(state.scalar());
    return std::real(u.dot(s_ * u)) / u.squaredNorm();
  }

  /// True when H = Hx (x) I + I (x) Hy with real tridiagonal factors.
  bool separable() const { return separable_; }
  const detail::Axis1D& axis_x() const { return ax_; }
  const detail::Axis1D& axis_y() const { return ay_; }
  /// Diagonal potential entries per kept node along each axis (separable only).
  const std::vector<double>& axis_potential_x() const { return vx_; }
  const std::vector<double>& axis_potential_y() const { return vy_; }

  friend HamiltonianOperator assemble_hamiltonian(const Grid&, double, std::vector<double>, std::vector<SideBC>);
  friend HamiltonianOperator build_hamiltonian(const Region&, const Grid&, double, const Potential&);

 private:
  bool separable_ = false;
  detail::Axis1D ax_, ay_;
  std::vector<double> vx_, vy_;
  Grid grid_;
  double mass_ = 1.0;
  std::vector<double> v_;
  std::vector<SideBC> sides_;
  std::vector<int> map_;        // node -> unknown, -1 for removed Dirichlet nodes
  std::vector<double> weight_;  // trapezoid weights per node
  SparseMatrix s_;
};

/// Unchecked assembly: gamma may be complex (Hermiticity diagnostics).
inline HamiltonianOperator assemble_hamiltonian(const Grid& grid, double mass, std::vector<double> v,
                                                std::vector<SideBC> sides) {
  if (!(mass > 0)) throw ArgumentError("mass must be positive");
  if (v.size() != grid.size()) throw ArgumentError("potential samples do not match the grid");
  const std::size_t expect = grid.dim == 1 ? 2 : 4;
  if (sides.size() != expect) throw ArgumentError("side condition count does not match the grid");
  if (grid.nx < 3 || (grid.dim == 2 && grid.ny < 3)) throw ResolutionError("grid needs at least 4 nodes per axis");

  HamiltonianOperator H;
  H.grid_ = grid;
  H.mass_ = mass;
  H.v_ = std::move(v);
  H.sides_ = sides;
  H.weight_.resize(grid.size());
  H.map_.assign(grid.size(), -1);

  // sides: interval [left, right]; rectangle [bottom, right, top, left]
  const SideBC& left = grid.dim == 1 ? sides[0] : sides[3];
  const SideBC& right = sides[1];
  const auto ax = detail::axis_operator(grid.nx, grid.hx, left, right);
  detail::Axis1D ay;
  if (grid.dim == 2) ay = detail::axis_operator(grid.ny, grid.hy, sides[0], sides[2]);
  const int nxa = ax.count();
  const int nya = grid.dim == 2 ? ay.count() : 1;
  const int jfirst = grid.dim == 2 ? ay.first : 0;
  const int jlast = grid.dim == 2 ? ay.last : 0;

  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i <= grid.nx; ++i) {
      const auto k = grid.index(i, j);
      H.weight_[k] = grid.weight(i, j);
      if (i >= ax.first && i <= ax.last && j >= jfirst && j <= jlast) {
        H.map_[k] = (j - jfirst) * nxa + (i - ax.first);
      }
    }
  }

  const double c = 1.0 / (2 * mass);
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(nxa) * nya * 5);
  for (int jj = 0; jj < nya; ++jj) {
    for (const auto& e : ax.entries) t.emplace_back(jj * nxa + e.row(), jj * nxa + e.col(), c * e.value());
  }
  if (grid.dim == 2) {
    for (int ii = 0; ii < nxa; ++ii) {
      for (const auto& e : ay.entries) t.emplace_back(e.row() * nxa + ii, e.col() * nxa + ii, c * e.value());
    }
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (H.map_[k] >= 0) t.emplace_back(H.map_[k], H.map_[k], H.v_[k]);
  }
  const int n = nxa * nya;
  H.s_.resize(n, n);
  H.s_.setFromTriplets(t.begin(), t.end());
  H.s_.makeCompressed();
  H.ax_ = ax;
  H.ay_ = ay;
  return H;
}

inline std::vector<double> sample_potential(const Grid& grid, const Potential& V, double mass) {
  std::vector<double> v(grid.size());
  for (int j = 0; j <= grid.ny; ++j)
    for (int i = 0; i <= grid.nx; ++i) v[grid.index(i, j)] = V.value(grid.point(i, j), mass);
  return v;
}

/// Checked construction: real gamma per side and finite potential samples.
inline HamiltonianOperator build_hamiltonian(const Grid& grid, double mass, std::vector<double> v,
                                             const std::vector<SideBC>& sides) {
  for (const auto& s : sides) {
    if (!s.dirichlet && (std::abs(s.gamma.imag()) > 0 || !std::isfinite(s.gamma.real()))) {
      throw ValidationError("gamma must be real for a self-adjoint Hamiltonian");
    }
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw ValidationError("potential is singular (non-finite sample)");
  }
  return assemble_hamiltonian(grid, mass, std::move(v), sides);
}

inline HamiltonianOperator build_hamiltonian(const Region& region, const Grid& grid, double mass,
                                             const Potential& V) {
  auto H = build_hamiltonian(grid, mass, sample_potential(grid, V, mass), side_conditions(region));
  // catalog potentials split into x and y parts
  H.vx_.clear();
  H.vy_.clear();
  for (int i = H.ax_.first; i <= H.ax_.last; ++i) {
    H.vx_.push_back(grid.dim == 1 ? V.value(grid.point(i), mass) : V.axis_value(0, grid.x0 + i * grid.hx, mass));
  }
  if (grid.dim == 2) {
    for (int j = H.ay_.first; j <= H.ay_.last; ++j) H.vy_.push_back(V.axis_value(1, grid.y0 + j * grid.hy, mass));
  }
  H.separable_ = true;
  return H;
}

/// max |S_ij - conj(S_ji)|.
inline double hermiticity_residual(const HamiltonianOperator& H) {
  const SparseMatrix adj = H.matrix().adjoint();
  const SparseMatrix diff = H.matrix() - adj;
  double m = 0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

/// Crank-Nicolson: (1 + i dt/2 H) u' = (1 - i dt/2 H) u.
///
/// Separable operators are solved exactly in the eigenbasis of Hy with one
/// tridiagonal system per y mode; anything else uses one sparse LU
/// factorization. Both paths check the residual of the full sparse system.
class CrankNicolson {
 public:
  CrankNicolson(const HamiltonianOperator& H, double dt) : H_(&H), dt_(dt) {
    if (!(dt > 0)) throw ArgumentError("dt must be positive");
    const int n = static_cast<int>(H.unknowns());
    SparseMatrix id(n, n);
    id.setIdentity();
    a_ = id + cplx(0, 0.5 * dt) * H.matrix();
    b_ = id - cplx(0, 0.5 * dt) * H.matrix();
    a_.makeCompressed();
    bool real_gamma = true;
    for (const auto& s : H.sides()) real_gamma = real_gamma && (s.dirichlet || s.gamma.imag() == 0.0);
    fast_ = H.separable() && real_gamma;
    if (fast_) {
      setup_separable();
    } else {
      lu_.analyzePattern(a_);
      lu_.factorize(a_);
      if (lu_.info() != Eigen::Success) throw NumericalError("Crank-Nicolson factorization failed");
    }
  }

  double dt() const { return dt_; }
  const HamiltonianOperator& hamiltonian() const { return *H_; }
  double last_residual() const { return residual_; }
  bool separable_path() const { return fast_; }
  // y modes by fast sine transform (Toeplitz Hy: Dirichlet y sides, no y potential)
  bool sine_path() const { return sine_; }

  ComplexVector step(const ComplexVector& u) {
    const ComplexVector rhs = b_ * u;
    ComplexVector next = fast_ ? solve_separable(rhs) : ComplexVector(lu_.solve(rhs));
    if (!fast_ && lu_.info() != Eigen::Success) throw NumericalError("Crank-Nicolson solve failed");
    residual_ = (a_ * next - rhs).norm() / std::max(rhs.norm(), 1e-300);
    if (!(residual_ < 1e-10)) {
      throw NumericalError("Crank-Nicolson solve residual " + std::to_string(residual_) + " above 1e-10");
    }
    return next;
  }

  WaveState step(const WaveState& state) {
    const auto psi = H_->from_unknowns(step(H_->to_unknowns(state.scalar())));
    return embed_physical(state.grid(), psi);
  }

 private:
  // tridiagonal factors of Hx (kept nodes), scaled by 1/2m, plus Vx
  static void axis_tridiagonal(const detail::Axis1D& a, double c, const std::vector<double>& v,
                               std::vector<double>& diag, std::vector<double>& off) {
    const int n = a.count();
    diag.assign(n, 0.0);
    off.assign(std::max(n - 1, 0), 0.0);
    for (const auto& e : a.entries) {
      if (e.row() == e.col()) diag[e.row()] += c * e.value().real();
      else if (e.col() == e.row() + 1) off[e.row()] = c * e.value().real();
    }
    for (int i = 0; i < n; ++i) diag[i] += v[i];
  }

  void setup_separable() {
    const auto& H = *H_;
    const double c = 1.0 / (2 * H.mass());
    std::vector<double> dx, ox;
    axis_tridiagonal(H.axis_x(), c, H.axis_potential_x(), dx, ox);
    nx_ = static_cast<int>(dx.size());
    std::vector<double> mu = {0.0};
    ny_ = 1;
    if (H.grid().dim == 2) {
      std::vector<double> dy, oy;
      axis_tridiagonal(H.axis_y(), c, H.axis_potential_y(), dy, oy);
      ny_ = static_cast<int>(dy.size());
      const auto flat = [](const std::vector<double>& v) {
        for (double x : v) {
          if (std::abs(x - v.front()) > 1e-13 * std::abs(v.front())) return false;
        }
        return true;
      };
      sine_ = ny_ > 1 && flat(dy) && flat(oy);
      if (sine_) {
        mu.resize(ny_);
        for (int k = 0; k < ny_; ++k) mu[k] = dy[0] + 2 * oy[0] * std::cos(pi * (k + 1) / (ny_ + 1));
        buf_.assign(2 * (ny_ + 1), cplx{});
      } else {
        Eigen::MatrixXd ty = Eigen::MatrixXd::Zero(ny_, ny_);
        for (int j = 0; j < ny_; ++j) {
          ty(j, j) = dy[j];
          if (j + 1 < ny_) ty(j, j + 1) = ty(j + 1, j) = oy[j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ty);
        if (es.info() != Eigen::Success) throw NumericalError("eigen-decomposition of Hy failed");
        q_ = es.eigenvectors();
        mu.assign(es.eigenvalues().data(), es.eigenvalues().data() + ny_);
      }
    }
    // forward-elimination coefficients per y mode for (1 + i dt/2 (Hx + mu_j))
    const cplx s(0, 0.5 * dt_);
    cprime_.resize(static_cast<std::size_t>(nx_) * ny_);
    denom_.resize(static_cast<std::size_t>(nx_) * ny_);
    sub_.resize(nx_);
    for (int i = 0; i + 1 < nx_; ++i) sub_[i] = s * ox[i];
    for (int j = 0; j < ny_; ++j) {
      cplx* cp = &cprime_[static_cast<std::size_t>(j) * nx_];
      cplx* dn = &denom_[static_cast<std::size_t>(j) * nx_];
      for (int i = 0; i < nx_; ++i) {
        const cplx b = 1.0 + s * (dx[i] + mu[j]);
        const cplx den = i == 0 ? b : b - sub_[i - 1] * cp[i - 1];
        dn[i] = 1.0 / den;
        cp[i] = i + 1 < nx_ ? sub_[i] * dn[i] : cplx{};
      }
    }
  }

  // r <- r S with S_jk = sqrt(2/(n+1)) sin(pi (j+1)(k+1)/(n+1)); S is its own inverse.
  // Odd extension of each row: F_k = -2i sum_j x_j sin(pi j k/(n+1)).
  void sine_transform(Eigen::MatrixXcd& r) const {
    const int m = 2 * (ny_ + 1);
    const double scale = std::sqrt(2.0 / (ny_ + 1));
    for (int i = 0; i < nx_; ++i) {
      for (int j = 0; j < ny_; ++j) {
        buf_[j + 1] = r(i, j);
        buf_[m - j - 1] = -r(i, j);
      }
      fft_.fwd(spec_, buf_);
      for (int k = 0; k < ny_; ++k) r(i, k) = cplx(0, 0.5 * scale) * spec_[k + 1];
    }
  }

  void to_y_modes(Eigen::MatrixXcd& r, bool inverse) const {
    if (ny_ < 2) return;
    if (sine_) return sine_transform(r);
    Eigen::MatrixXd re, im;
    if (inverse) {
      re = r.real() * q_.transpose();
      im = r.imag() * q_.transpose();
    } else {
      re = r.real() * q_;
      im = r.imag() * q_;
    }
    r.real() = re;
    r.imag() = im;
  }

  ComplexVector solve_separable(const ComplexVector& rhs) const {
    Eigen::MatrixXcd r = Eigen::Map<const Eigen::MatrixXcd>(rhs.data(), nx_, ny_);
    to_y_modes(r, false);
    for (int j = 0; j < ny_; ++j) {
      const cplx* cp = &cprime_[static_cast<std::size_t>(j) * nx_];
      const cplx* dn = &denom_[static_cast<std::size_t>(j) * nx_];
      auto col = r.col(j);
      col(0) *= dn[0];
      for (int i = 1; i < nx_; ++i) col(i) = (col(i) - sub_[i - 1] * col(i - 1)) * dn[i];
      for (int i = nx_ - 2; i >= 0; --i) col(i) -= cp[i] * col(i + 1);
    }
    to_y_modes(r, true);
    return Eigen::Map<const ComplexVector>(r.data(), r.size());
  }

  const HamiltonianOperator* H_;
  double dt_;
  SparseMatrix a_, b_;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  bool fast_ = false, sine_ = false;
  int nx_ = 0, ny_ = 0;
  Eigen::MatrixXd q_;
  mutable Eigen::FFT<double> fft_;
  mutable std::vector<cplx> buf_, spec_;
  std::vector<cplx> cprime_, denom_, sub_;
  double residual_ = 0.0;
};

inline WaveState step_crank_nicolson(const WaveState& state, const HamiltonianOperator& H, double dt) {
  CrankNicolson cn(H, dt);
  return cn.step(state);
}

// --- runs ----------------------------------------------------------------------

struct Snapshot {
  double t = 0.0;
  Vec2 position{};
  Vec2 pR{};          // spectral, per axis
  Vec2 gradient_re{};  // Re <-i grad>
  Vec2 pI{};
  double energy = 0.0;
  double norm = 0.0;
  Vec2 grad_V{};
  Vec2 boundary_force{};
  std::vector<Vec2> side_force;  // per grid side, same order as the sides
  Vec2 pI_rate{};  // 1/2 closed integral n div j
  double flux = 0.0;
  double max_normal_current = 0.0;
  double pR_tail = 0.0;
};

struct RecordOptions {
  int every = 1;
  int modes = 64;
  bool spectral = true;
  bool spectral_y = true;  // 2D only
  bool forces = true;
};

struct EvolutionRun {
  WaveState initial;
  double dt = 0.0;
  int steps = 0;
  int record_every = 1;
  double mass = 1.0;
  Potential potential;
  std::vector<SideBC> sides;
  std::vector<Snapshot> series;
  WaveState final_state;
};

/// d<p_I>/dt with div j taken from the assembled operator at the wall nodes,
/// so the boundary stencil is the one that drives the evolution.
inline Vec2 pI_rate_discrete(const HamiltonianOperator& H, const GridField& f) {
  const auto u = H.to_unknowns(f.psi);
  const auto hpsi = H.from_unknowns(H.matrix() * u);
  Vec2 acc{};
  for (const auto& b : grid_boundary(f.grid)) {
    const auto k = b.index;
    const double divj = -2.0 * std::imag(std::conj(f.psi[k]) * hpsi[k]);
    acc = acc + b.normal * (0.5 * b.weight * divj);
  }
  if (f.grid.dim == 1) acc.y = 0;
  return acc / f.norm2;
}

inline Snapshot observe(const WaveState& s, double t, const Region& region, const HamiltonianOperator& H,
                        const Potential& V, const RecordOptions& opt) {
  const GridField f(s);
  Snapshot o;
  o.t = t;
  o.norm = f.norm2;
  o.position = mean_position(f);
  const auto g = expect_gradient(f);
  o.gradient_re = {g.x.real(), g.y.real()};
  o.pI = expect_pI(f);
  o.energy = H.energy(s);
  if (opt.spectral) {
    const auto px = expect_pR_spectral(f, region, {1, 0}, opt.modes);
    o.pR.x = px.value;
    o.pR_tail = px.tail;
    if (s.grid().dim == 2 && opt.spectral_y) {
      const auto py = expect_pR_spectral(f, region, {0, 1}, opt.modes);
      o.pR.y = py.value;
      o.pR_tail = std::max(o.pR_tail, py.tail);
    }
  } else {
    o.pR = o.gradient_re;
  }
  if (opt.forces) {
    o.grad_V = expect_grad_V(f, V, H.mass());
    o.boundary_force = boundary_force(f, H.sides(), H.mass());
    for (int side = 0; side < static_cast<int>(H.sides().size()); ++side) {
      o.side_force.push_back(boundary_force(f, H.sides(), H.mass(), side));
    }
    o.pI_rate = pI_rate_discrete(H, f);
    const auto [flux, peak] = boundary_flux_stats(f, H.mass());
    o.flux = flux;
    o.max_normal_current = peak;
  }
  return o;
}

/// Propagates `initial` for `steps` CN steps, recording observables every
/// `opt.every` steps (including t = 0).
inline EvolutionRun evolve(const Region& region, const HamiltonianOperator& H, const Potential& V,
                           const WaveState& initial, double dt, int steps, const RecordOptions& opt = {}) {
  if (steps < 0) throw ArgumentError("step count must be non-negative");
  if (!(initial.grid() == H.grid())) throw ArgumentError("state and Hamiltonian grids differ");
  initial.require_physical();
  EvolutionRun run;
  run.initial = initial;
  run.dt = dt;
  run.steps = steps;
  if (opt.every < 1) throw ArgumentError("record interval must be positive");
  run.record_every = opt.every;
  run.mass = H.mass();
  run.potential = V;
  run.sides = H.sides();
  CrankNicolson cn(H, dt);
  ComplexVector u = H.to_unknowns(initial.scalar());
  const auto snapshot = [&](int n) {
    const WaveState s = embed_physical(H.grid(), H.from_unknowns(u));
    run.series.push_back(observe(s, n * dt, region, H, V, opt));
  };
  snapshot(0);
  for (int n = 1; n <= steps; ++n) {
    u = cn.step(u);
    if (n % opt.every == 0) snapshot(n);
  }
  run.final_state = embed_physical(H.grid(), H.from_unknowns(u));
  return run;
}

}  // namespace boxmom
