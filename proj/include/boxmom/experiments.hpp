#pragma once

// Experiment runners behind the CLI: each writes its artifacts into an output
// directory and returns the written file names plus a JSON summary.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boxmom/commutability.hpp"
#include "boxmom/config.hpp"
#include "boxmom/ehrenfest.hpp"
#include "boxmom/evolution.hpp"
#include "boxmom/momentum_modes.hpp"
#include "boxmom/observables.hpp"

namespace boxmom {

struct RunOutput {
  std::vector<std::string> files;  // relative to the output directory
  nlohmann::json summary;
};

/// 17 significant digits, so a re-read reproduces the double exactly.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot write " + path.string());
    row_strings(header);
  }
  void row(const std::vector<double>& values) {
    std::vector<std::string> s;
    s.reserve(values.size());
    for (double v : values) s.push_back(fmt17(v));
    row_strings(s);
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

namespace detail {

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

inline nlohmann::json vec_json(Vec2 v) { return nlohmann::json::array({v.x, v.y}); }

inline void require_grid_region(const Region& region) {
  if (region.kind() != RegionKind::interval && region.kind() != RegionKind::rectangle)
    throw ConfigError("/region/kind", "evolution runs on intervals and rectangles only");
}

/// Transverse anchors: `lines` midpoints across the extent of the region
/// perpendicular to `dir`.
inline std::vector<double> anchors(const Region& region, Vec2 dir, int lines) {
  if (region.dimension() == 1) return {0.0};
  double lo = 1e300, hi = -1e300;
  for (const auto& b : boundary_quadrature(region, 512)) {
    const double t = dot(b.point, perp(dir));
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  std::vector<double> out;
  for (int i = 0; i < lines; ++i) out.push_back(lo + (hi - lo) * (i + 0.5) / lines);
  return out;
}

inline AnalyticState analytic_state(const ExperimentConfig& c) {
  const auto& s = c.state;
  const Region& r = c.region;
  switch (s.kind) {
    case StateSpec::Kind::gaussian:
      return r.dimension() == 1 ? gaussian_packet_1d(s.center.x, s.width, s.momentum.x)
                                : gaussian_packet(s.center, s.width, s.momentum);
    case StateSpec::Kind::eigenmode: {
      if (r.kind() != RegionKind::interval && r.kind() != RegionKind::rectangle)
        throw ConfigError("/state/kind", "eigenmode states need an interval or a rectangle");
      const double kx = pi * s.n[0] / r.lx();
      if (r.dimension() == 1) return standing_wave(kx, 0.0, 0.0, pi / 2, r.origin());
      return standing_wave(kx, 0.0, pi * s.n[1] / r.ly(), 0.0, r.origin());
    }
    case StateSpec::Kind::random: {
      std::mt19937_64 rng(c.seed);
      return random_packet_state(r, rng, s.random);
    }
    case StateSpec::Kind::csv:
      break;
  }
  throw ConfigError("/state/kind", "this experiment needs an analytic state (gaussian, eigenmode or random)");
}

inline WaveState csv_state(const Grid& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/state/path", "cannot read " + path);
  StateFile f;
  try {
    f = read_state_csv(in);
  } catch (const ArgumentError& e) {
    throw ConfigError("/state/path", e.what());
  }
  const Grid& h = f.state.grid();
  if (h.dim != g.dim || h.nx != g.nx || h.ny != g.ny || std::abs(h.hx - g.hx) > 1e-12 || std::abs(h.hy - g.hy) > 1e-12 ||
      std::abs(h.x0 - g.x0) > 1e-12 || std::abs(h.y0 - g.y0) > 1e-12)
    throw ConfigError("/state/path", "state grid does not match the region and numerics.h");
  if (!f.state.physical()) throw ConfigError("/state/path", "state is not in the physical sector");
  return WaveState(g, std::vector<cplx>(f.state.even().begin(), f.state.even().end()),
                   std::vector<cplx>(f.state.odd().begin(), f.state.odd().end()));
}

inline WaveState grid_state(const ExperimentConfig& c, const Grid& g) {
  if (c.state.kind == StateSpec::Kind::csv) return csv_state(g, c.state.path);
  AnalyticState psi = analytic_state(c);
  if (c.state.kind == StateSpec::Kind::gaussian && c.state.wall_compatible) psi = wall_corrected(psi, c.region);
  auto s = sample_physical(g, psi);
  s.normalize();
  return s;
}

inline std::vector<std::string> snapshot_header(int dim, std::size_t sides) {
  std::vector<std::string> h = {"t", "x", "y", "pR_x", "pR_y", "grad_re_x", "grad_re_y", "pI_x", "pI_y", "energy",
                                "norm", "gradV_x", "gradV_y", "F_x", "F_y", "pI_rate_x", "pI_rate_y", "flux",
                                "max_normal_current", "pR_tail"};
  (void)dim;
  for (std::size_t s = 0; s < sides; ++s) {
    h.push_back("F_side" + std::to_string(s) + "_x");
    h.push_back("F_side" + std::to_string(s) + "_y");
  }
  return h;
}

inline std::vector<double> snapshot_row(const Snapshot& o) {
  std::vector<double> r = {o.t,           o.position.x,   o.position.y,   o.pR.x,       o.pR.y,
                           o.gradient_re.x, o.gradient_re.y, o.pI.x,       o.pI.y,       o.energy,
                           o.norm,        o.grad_V.x,     o.grad_V.y,     o.boundary_force.x, o.boundary_force.y,
                           o.pI_rate.x,   o.pI_rate.y,    o.flux,         o.max_normal_current, o.pR_tail};
  for (const auto& f : o.side_force) {
    r.push_back(f.x);
    r.push_back(f.y);
  }
  return r;
}

struct GridRun {
  Grid grid;
  HamiltonianOperator H;
  EvolutionRun run;
};

inline GridRun grid_run(const ExperimentConfig& c) {
  require_grid_region(c.region);
  const auto& n = c.numerics;
  Grid g = Grid::for_region(c.region, n.h);
  auto H = build_hamiltonian(c.region, g, c.mass, c.potential);
  // drop Dirichlet wall nodes before normalizing
  auto s = embed_physical(g, H.from_unknowns(H.to_unknowns(grid_state(c, g).scalar())));
  s.normalize();
  RecordOptions ro;
  ro.every = n.record_every;
  ro.modes = n.modes;
  auto run = evolve(c.region, H, c.potential, s, n.dt, n.steps, ro);
  return {g, std::move(H), std::move(run)};
}

inline double norm_drift(const EvolutionRun& run) {
  double d = 0;
  for (const auto& s : run.series) d = std::max(d, std::abs(s.norm - run.series.front().norm));
  return d;
}

inline double max_flux(const EvolutionRun& run) {
  double f = 0;
  for (const auto& s : run.series) f = std::max(f, s.flux);
  return f;
}

}  // namespace detail

inline RunOutput run_spectrum(const ExperimentConfig& c, const std::filesystem::path& out) {
  RunOutput r;
  CsvWriter csv(out / "spectrum.csv", {"direction_x", "direction_y", "anchor", "interval", "x_minus", "x_plus",
                                       "lambda_minus", "lambda_plus", "theta", "n", "k", "sigma_re", "sigma_im",
                                       "quantization_residual", "degenerate"});
  std::size_t lines_with_intervals = 0, degenerate = 0;
  double worst = 0;
  for (const Vec2 d : c.directions) {
    for (double y0 : detail::anchors(c.region, d, c.numerics.lines)) {
      const auto section = c.region.dimension() == 1 ? line_section(c.region, d) : line_section(c.region, d, y0);
      if (section.intervals.empty()) continue;
      ++lines_with_intervals;
      const auto u = union_spectrum(section, c.numerics.n_range[0], c.numerics.n_range[1]);
      for (const auto& e : u.entries) {
        const auto& iv = section.intervals[e.interval_id];
        const auto ladder = spectrum(iv, e.mode.n, e.mode.n);
        const double res = ladder.quantization_residual(e.mode.k);
        worst = std::max(worst, res);
        degenerate += e.degenerate;
        csv.row({d.x, d.y, y0, double(e.interval_id), iv.x_minus, iv.x_plus, iv.lambda_minus.imag(),
                 iv.lambda_plus.imag(), ladder.theta, double(e.mode.n), e.mode.k, e.mode.sigma.real(),
                 e.mode.sigma.imag(), res, double(e.degenerate)});
      }
    }
  }
  r.files = {"spectrum.csv"};
  r.summary = {{"lines_with_intervals", lines_with_intervals},
               {"max_quantization_residual", worst},
               {"degenerate_entries", degenerate}};
  return r;
}

inline RunOutput run_modes(const ExperimentConfig& c, const std::filesystem::path& out) {
  RunOutput r;
  const Vec2 d = c.directions.front();
  const auto a = detail::anchors(c.region, d, 1);
  const auto section = c.region.dimension() == 1 ? line_section(c.region, d) : line_section(c.region, d, a.front());
  if (section.intervals.empty()) throw DomainError("the central line misses the region");
  CsvWriter csv(out / "modes.csv", {"interval", "n", "k", "s", "even_re", "even_im", "odd_re", "odd_im"});
  nlohmann::json per = nlohmann::json::array();
  const int samples = c.numerics.quadrature_points;
  for (std::size_t i = 0; i < section.intervals.size(); ++i) {
    const auto& iv = section.intervals[i];
    std::vector<MomentumMode> modes;
    for (int n = c.numerics.n_range[0]; n <= c.numerics.n_range[1]; ++n) modes.push_back(build_mode(iv, n, section.anchor));
    double bc = 0;
    for (const auto& m : modes) {
      bc = std::max(bc, m.boundary_residual());
      for (int j = 0; j <= samples; ++j) {
        const double s = iv.x_minus + iv.length() * j / samples;
        const cplx e = m.even(s), o = m.odd(s);
        csv.row({double(i), double(m.n), m.k, s, e.real(), e.imag(), o.real(), o.imag()});
      }
    }
    const auto mats = mode_matrices(modes, std::max(1000, samples));
    per.push_back({{"interval", i},
                   {"x_minus", iv.x_minus},
                   {"x_plus", iv.x_plus},
                   {"gram_deviation", mats.gram_deviation()},
                   {"hermiticity_deviation", mats.hermiticity_deviation()},
                   {"boundary_residual", bc}});
  }
  r.summary = {{"anchor", a.front()}, {"direction", detail::vec_json(d)}, {"intervals", per}};
  detail::write_json(out / "report.json", r.summary);
  r.files = {"modes.csv", "report.json"};
  return r;
}

inline RunOutput run_evolve(const ExperimentConfig& c, const std::filesystem::path& out) {
  RunOutput r;
  const auto gr = detail::grid_run(c);
  CsvWriter csv(out / "series.csv", detail::snapshot_header(gr.grid.dim, gr.H.sides().size()));
  for (const auto& s : gr.run.series) csv.row(detail::snapshot_row(s));
  const auto& first = gr.run.series.front();
  const auto& last = gr.run.series.back();
  r.summary = {{"unknowns", gr.H.unknowns()},
               {"hermiticity_residual", hermiticity_residual(gr.H)},
               {"norm_drift", detail::norm_drift(gr.run)},
               {"energy_drift", std::abs(last.energy - first.energy)},
               {"max_flux", detail::max_flux(gr.run)},
               {"final_position", detail::vec_json(last.position)},
               {"final_pR", detail::vec_json(last.pR)}};
  detail::write_json(out / "report.json", r.summary);
  {
    std::ofstream fs(out / "final_state.csv", std::ios::binary);
    write_state_csv(fs, gr.run.final_state, c.region.id());
  }
  r.files = {"series.csv", "final_state.csv", "report.json"};
  return r;
}

inline RunOutput run_ehrenfest(const ExperimentConfig& c, const std::filesystem::path& out) {
  RunOutput r;
  const auto gr = detail::grid_run(c);
  const auto& run = gr.run;
  CsvWriter series(out / "series.csv", detail::snapshot_header(gr.grid.dim, gr.H.sides().size()));
  for (const auto& s : run.series) series.row(detail::snapshot_row(s));

  std::vector<Vec2> axes = {{1, 0}};
  if (gr.grid.dim == 2) axes.push_back({0, 1});
  std::vector<std::string> header = {"t"};
  std::vector<std::vector<ResidualSeries>> cols;
  nlohmann::json per = nlohmann::json::object();
  const double tol = c.numerics.tolerance;
  bool ok = true;
  for (const Vec2 l : axes) {
    const std::string ax = l.x == 1 ? "x" : "y";
    auto pos = ehrenfest_position_residual(run, l);
    auto mom = ehrenfest_momentum_residual(run, l);
    auto abl = ehrenfest_momentum_residual(run, l, false);
    auto pir = pI_rate_residual(run, l);
    for (const char* name : {"position_", "momentum_", "ablation_", "pI_rate_"}) header.push_back(name + ax);
    const double ratio = abl.max() / std::max(mom.max(), 1e-300);
    const bool wall = abl.max() > 10 * tol;
    const bool pos_ok = pos.max() < tol;
    const bool force_ok = !wall || ratio >= 100;
    ok = ok && pos_ok && force_ok;
    per[ax] = {{"position_residual", pos.max()},
               {"momentum_residual", mom.max()},
               {"ablation_residual", abl.max()},
               {"ablation_ratio", ratio},
               {"pI_rate_residual", pir.max()},
               {"position_pass", pos_ok},
               {"boundary_force_pass", force_ok},
               {"boundary_force_applicable", wall}};
    cols.push_back({std::move(pos), std::move(mom), std::move(abl), std::move(pir)});
  }
  CsvWriter res(out / "residuals.csv", header);
  for (std::size_t i = 0; i < cols.front().front().t.size(); ++i) {
    std::vector<double> row = {cols.front().front().t[i]};
    for (const auto& group : cols)
      for (const auto& s : group) row.push_back(s.residual[i]);
    res.row(row);
  }
  nlohmann::json impulses = nlohmann::json::array();
  const double t_end = run.series.back().t;
  for (std::size_t s = 0; s < gr.H.sides().size(); ++s) {
    impulses.push_back(detail::vec_json(
        {boundary_impulse(run, {1, 0}, 0, t_end, int(s)), gr.grid.dim == 2 ? boundary_impulse(run, {0, 1}, 0, t_end, int(s)) : 0.0}));
  }
  const double drift = detail::norm_drift(run);
  const bool norm_ok = drift < 1e-8;
  ok = ok && norm_ok;
  r.summary = {{"axes", per},
               {"norm_drift", drift},
               {"norm_pass", norm_ok},
               {"max_flux", detail::max_flux(run)},
               {"side_impulse", impulses},
               {"tolerance", tol},
               {"passed", ok}};
  detail::write_json(out / "report.json", r.summary);
  r.files = {"series.csv", "residuals.csv", "report.json"};
  return r;
}

inline RunOutput run_uncertainty(const ExperimentConfig& c, const std::filesystem::path& out) {
  RunOutput r;
  UncertaintyOptions opt;
  opt.mass = c.mass;
  opt.quadrature.lines = c.numerics.lines;
  opt.quadrature.points_per_line = c.numerics.quadrature_points;
  opt.quadrature.boundary_points = c.numerics.boundary_points;
  opt.spectral.lines = c.numerics.lines;
  opt.spectral.modes = c.numerics.modes;
  std::vector<ObservableReport> reports;
  const int count = c.state.kind == StateSpec::Kind::random ? c.state.count : 1;
  std::mt19937_64 rng(c.seed);
  for (int k = 0; k < count; ++k) {
    AnalyticState psi = c.state.kind == StateSpec::Kind::random ? random_packet_state(c.region, rng, c.state.random)
                                                                 : detail::analytic_state(c);
    psi = normalize(psi, c.region, opt.quadrature);
    reports.push_back(uncertainty_report(psi, c.region, c.directions, c.m, opt));
  }
  std::vector<std::string> header = {"state"};
  for (const auto& [key, v] : reports.front().values) header.push_back(key);
  CsvWriter csv(out / "uncertainty.csv", header);
  double min_slack = 1e300;
  bool finite = true;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    std::vector<double> row = {double(k)};
    for (const auto& [key, v] : reports[k].values) row.push_back(v);
    csv.row(row);
    min_slack = std::min(min_slack, reports[k].at("slack"));
    finite = finite && reports[k].all_finite();
  }
  r.summary = {{"states", count},
               {"min_slack", min_slack},
               {"all_terms_finite", finite},
               {"passed", finite && min_slack >= -1e-8},
               {"meta", reports.front().meta}};
  detail::write_json(out / "report.json", r.summary);
  r.files = {"uncertainty.csv", "report.json"};
  return r;
}

inline RunOutput run_commute(const ExperimentConfig& c, const std::filesystem::path& out) {
  RunOutput r;
  if (c.region.dimension() != 2) throw ConfigError("/region/kind", "commutability needs a 2D region");
  const Vec2 l = c.directions.front();
  const auto v = classify_region(c.region, l, c.m);
  const auto w = position_momentum_commutes(l, c.m, 10, c.seed);
  r.summary = {{"region", v.region_id},
               {"l", detail::vec_json(v.l)},
               {"m", detail::vec_json(v.m)},
               {"verdict", to_string(v.verdict)},
               {"variant", to_string(v.variant)},
               {"reasons", v.reasons},
               {"residual_max", v.residual_max},
               {"residual_mean", v.residual_mean},
               {"arc_residual_min", v.arc_residual_min},
               {"literal_c2_max", v.literal_c2_max},
               {"probes", v.probes},
               {"position_momentum",
                {{"commutes", w.commutes}, {"dot", w.dot}, {"commutator_norm", w.commutator_norm}, {"states", w.states}}}};
  detail::write_json(out / "verdict.json", r.summary);
  r.files = {"verdict.json"};
  return r;
}

inline RunOutput run_experiment(const ExperimentConfig& c, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  switch (c.experiment) {
    case Experiment::spectrum: return run_spectrum(c, out);
    case Experiment::modes: return run_modes(c, out);
    case Experiment::evolve: return run_evolve(c, out);
    case Experiment::ehrenfest: return run_ehrenfest(c, out);
    case Experiment::uncertainty: return run_uncertainty(c, out);
    case Experiment::commute: return run_commute(c, out);
  }
  throw ArgumentError("unknown experiment");
}

}  // namespace boxmom
