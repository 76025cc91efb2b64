// Copyright 2026 The jumplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jumplab/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jumplab/ensemble.hpp"
#include "jumplab/errors.hpp"
#include "jumplab/format.hpp"
#include "jumplab/ipt.hpp"
#include "jumplab/parallel.hpp"
#include "jumplab/randwalk.hpp"
#include "jumplab/twolevel.hpp"

namespace jumplab {

namespace {

std::string density_header(int n) {
  std::string h = "t";
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const std::string ab = std::to_string(a) + "_" + std::to_string(b);
      h += ",re_" + ab + ",im_" + ab;
    }
  }
  return h;
}

void append_density_row(std::string& out, double t, const DensityState& rho) {
  std::vector<double> row{t};
  const ComplexMatrix& m = rho.matrix();
  for (int a = 0; a < rho.dim(); ++a) {
    for (int b = 0; b < rho.dim(); ++b) {
      row.push_back(m(a, b).real());
      row.push_back(m(a, b).imag());
    }
  }
  row.push_back(entropy(rho));
  append_csv_row(out, row);
}

std::string join_path(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string histogram_text(const std::vector<std::uint64_t>& h) {
  std::string s;
  for (std::size_t n = 0; n < h.size(); ++n) {
    if (h[n] == 0) continue;
    if (!s.empty()) s += ' ';
    s += std::to_string(n) + ":" + std::to_string(h[n]);
  }
  return s;
}

AtomModel model_of(const RunConfig& cfg) { return build_model(*cfg.model); }

void run_ensemble_mode(const RunConfig& cfg, RunReport& rep, std::ostringstream& sum) {
  const AtomModel m = model_of(cfg);
  const DensityState rho0 = initial_density(cfg, m.levels());
  const std::vector<double> grid = time_grid(cfg.t_max, cfg.output_grid_dt);
  const std::vector<DensityState> path = ensemble_path(m, rho0, grid);
  std::string out = density_header(m.levels()) + ",S\n";
  for (std::size_t k = 0; k < grid.size(); ++k) append_density_row(out, grid[k], path[k]);
  const std::string file = join_path(cfg.output_dir, "ensemble.csv");
  write_file(file, out);
  rep.files.push_back(file);
  sum << "grid points: " << grid.size() << "\n"
      << "final entropy: " << format_double(entropy(path.back())) << "\n";
}

void run_trajectory_mode(const RunConfig& cfg, const RunOptions& opt, RunReport& rep,
                         std::ostringstream& sum) {
  const AtomModel m = model_of(cfg);
  const PureProjector p0 = initial_projector(cfg, m.levels());
  EnsembleJob job;
  job.mode = cfg.mode == Mode::kDetect ? Unraveling::kDetect : Unraveling::kNoDetect;
  job.horizon = cfg.t_max;
  job.grid = time_grid(cfg.t_max, cfg.output_grid_dt);
  job.trajectories = cfg.trajectories;
  job.seed = cfg.seed;
  job.workers = opt.workers > 0 ? opt.workers : default_worker_count();

  TrajectorySink sink;
  std::ofstream jsonl;
  const std::string traj_file = join_path(cfg.output_dir, "trajectories.jsonl");
  std::string line;
  if (cfg.write_trajectories) {
    jsonl.open(traj_file, std::ios::binary | std::ios::trunc);
    if (!jsonl) throw Error("cannot open '" + traj_file + "' for writing");
    sink = [&](std::uint64_t index, const Trajectory& t) {
      line.clear();
      line += "{\"index\":" + std::to_string(index) + ",\"jumps\":[";
      for (std::size_t e = 0; e < t.events.size(); ++e) {
        if (e) line += ',';
        line += "{\"t\":";
        append_double(line, t.events[e].time);
        line += ",\"channel\":" + std::to_string(t.events[e].channel) + ",\"post_state\":";
        append_json_vector(line, t.events[e].post_state.vector());
        line += '}';
      }
      line += "],\"samples\":[";
      for (std::size_t s = 0; s < t.samples.size(); ++s) {
        if (s) line += ',';
        line += "{\"t\":";
        append_double(line, t.samples[s].time);
        line += ",\"state\":";
        append_json_vector(line, t.samples[s].state.vector());
        line += '}';
      }
      line += "],\"log_density\":";
      append_double(line, t.log_density);
      line += "}\n";
      jsonl.write(line.data(), static_cast<std::streamsize>(line.size()));
    };
  }

  const EnsembleResult res = run_ensemble(m, p0, job, sink);
  if (cfg.write_trajectories) {
    jsonl.close();
    if (!jsonl) throw Error("failed writing '" + traj_file + "'");
    rep.files.push_back(traj_file);
  }

  const std::vector<DensityState> mean = res.mean.mean();
  const std::vector<DensityState> exact =
      ensemble_path(m, DensityState::from_projector(p0), job.grid);
  std::string mean_csv = density_header(m.levels()) + ",S\n";
  std::string cmp_csv = "t,max_abs_dev,S_mean,S_exact\n";
  double worst = 0.0;
  for (std::size_t k = 0; k < job.grid.size(); ++k) {
    append_density_row(mean_csv, job.grid[k], mean[k]);
    const double dev = (mean[k].matrix() - exact[k].matrix()).cwiseAbs().maxCoeff();
    worst = std::max(worst, dev);
    append_csv_row(cmp_csv, {job.grid[k], dev, entropy(mean[k]), entropy(exact[k])});
  }
  const std::string mean_file = join_path(cfg.output_dir, "ensemble_mean.csv");
  const std::string cmp_file = join_path(cfg.output_dir, "comparison.csv");
  write_file(mean_file, mean_csv);
  write_file(cmp_file, cmp_csv);
  rep.files.push_back(mean_file);
  rep.files.push_back(cmp_file);
  sum << "trajectories: " << res.mean.count() << "\n"
      << "jump histogram (jumps:count): " << histogram_text(res.jump_histogram) << "\n"
      << "max |mean - exact|: " << format_double(worst) << "\n"
      << "workers: " << job.workers << "\n";
}

void run_twolevel_mode(const RunConfig& cfg, RunReport& rep, std::ostringstream& sum) {
  const double alpha = cfg.model->alpha;
  const PureProjector p0 = initial_projector(cfg, 2);
  const BlochVector e = bloch_from_projector(p0);
  const double gamma = bloch_azimuth(e);
  const std::vector<double> grid = time_grid(cfg.t_max, cfg.output_grid_dt);
  std::string out =
      "t,n1,n2,n3,S,e3_nodetect,survival_nodetect,e3_detect,survival_detect\n";
  for (double t : grid) {
    const BlochVector n = ensemble_bloch(e.n3, gamma, alpha, t);
    const double s = entropy(density_from_bloch(n));
    append_csv_row(out, {t, n.n1, n.n2, n.n3, s, nodetect_flow_e3(e.n3, alpha, t),
                         nodetect_survival_after(e.n3, alpha, t),
                         detect_flow_e3(e.n3, alpha, t), detect_survival_after(e.n3, alpha, t)});
  }
  const std::string file = join_path(cfg.output_dir, "twolevel.csv");
  write_file(file, out);
  rep.files.push_back(file);
  sum << "initial e3: " << format_double(e.n3) << "\n"
      << "grid points: " << grid.size() << "\n";
}

void run_randwalk_mode(const RunConfig& cfg, const RunOptions& opt, RunReport& rep,
                       std::ostringstream& sum) {
  const RandWalkSection& rw = *cfg.randwalk;
  const int side = rw.torus_side > 0 ? rw.torus_side
                                     : recommended_torus_side(rw.nu, rw.diffusion, cfg.t_max);
  const std::vector<double> grid = time_grid(cfg.t_max, cfg.output_grid_dt);
  const LatticeDensity rho0 = LatticeDensity::point_mass(rw.nu, side);

  struct Tally {
    std::vector<double> sq;
    double jumps = 0.0;
    std::vector<std::uint64_t> hits;
    std::vector<std::uint64_t> histogram;
  };
  Tally total{std::vector<double>(grid.size(), 0.0), 0.0,
              std::vector<std::uint64_t>(rho0.sites(), 0), {}};
  const int workers = opt.workers > 0 ? opt.workers : default_worker_count();
  ordered_parallel(
      cfg.trajectories, workers, 1024,
      [&](std::uint64_t b, std::uint64_t e) {
        Tally t{std::vector<double>(grid.size(), 0.0), 0.0,
                std::vector<std::uint64_t>(rho0.sites(), 0), {}};
        for (std::uint64_t k = b; k < e; ++k) {
          RandomStream rng(cfg.seed, k);
          const WalkPath w = sample_walk(rw.diffusion, rw.nu, cfg.t_max, rng);
          std::vector<int> x = w.start;
          std::size_t step = 0;
          for (std::size_t g = 0; g < grid.size(); ++g) {
            while (step < w.jumps() && w.times[step] <= grid[g]) {
              x[w.step_axis[step]] += w.step_sign[step];
              ++step;
            }
            double r2 = 0.0;
            for (int c : x) r2 += static_cast<double>(c) * c;
            t.sq[g] += r2;
          }
          t.jumps += static_cast<double>(w.jumps());
          ++t.hits[rho0.index(w.endpoint())];
          if (t.histogram.size() <= w.jumps()) t.histogram.resize(w.jumps() + 1, 0);
          ++t.histogram[w.jumps()];
        }
        return t;
      },
      [&](Tally&& t) {
        for (std::size_t g = 0; g < grid.size(); ++g) total.sq[g] += t.sq[g];
        total.jumps += t.jumps;
        for (std::size_t s = 0; s < total.hits.size(); ++s) total.hits[s] += t.hits[s];
        if (total.histogram.size() < t.histogram.size()) total.histogram.resize(t.histogram.size(), 0);
        for (std::size_t n = 0; n < t.histogram.size(); ++n) total.histogram[n] += t.histogram[n];
      });

  const double count = static_cast<double>(cfg.trajectories);
  std::string stats = "t,entropy,msd_lattice,msd_theory,msd_walks\n";
  LatticeDensity last = rho0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    last = diffusion_evolve(rho0, rw.diffusion, grid[g]);
    double msd = 0.0;
    const std::vector<double>& v = last.values();
    for (std::size_t s = 0; s < v.size(); ++s) {
      std::size_t rest = s;
      double r2 = 0.0;
      for (int a = 0; a < rw.nu; ++a) {
        const double c = static_cast<double>(static_cast<int>(rest % side) - last.origin());
        r2 += c * c;
        rest /= side;
      }
      msd += v[s] * r2;
    }
    append_csv_row(stats, {grid[g], lattice_entropy(last), msd,
                           2.0 * rw.nu * rw.diffusion * grid[g], total.sq[g] / count});
  }
  std::string dens;
  for (int a = 0; a < rw.nu; ++a) dens += "x" + std::to_string(a) + ",";
  dens += "rho,freq_walks\n";
  for (std::size_t s = 0; s < last.sites(); ++s) {
    std::vector<double> row;
    std::size_t rest = s;
    for (int a = 0; a < rw.nu; ++a) {
      row.push_back(static_cast<double>(static_cast<int>(rest % side) - last.origin()));
      rest /= side;
    }
    row.push_back(last.values()[s]);
    row.push_back(static_cast<double>(total.hits[s]) / count);
    append_csv_row(dens, row);
  }
  const std::string stats_file = join_path(cfg.output_dir, "randwalk_stats.csv");
  const std::string dens_file = join_path(cfg.output_dir, "randwalk_density.csv");
  write_file(stats_file, stats);
  write_file(dens_file, dens);
  rep.files.push_back(stats_file);
  rep.files.push_back(dens_file);
  sum << "walks: " << cfg.trajectories << "\n"
      << "torus side: " << side << "\n"
      << "jump histogram (jumps:count): " << histogram_text(total.histogram) << "\n"
      << "mean jumps: " << format_double(total.jumps / count) << " (theory "
      << format_double(2.0 * rw.nu * rw.diffusion * cfg.t_max) << ")\n"
      << "msd at t_max: " << format_double(total.sq.back() / count) << " (theory "
      << format_double(2.0 * rw.nu * rw.diffusion * cfg.t_max) << ")\n";
}

void run_ipt_mode(const RunConfig& cfg, RunReport& rep, std::ostringstream& sum) {
  const IptSection& ip = *cfg.ipt;
  const EigenPath path = ipt_integrate_linear(ip.h0, ip.v, ip.steps);
  const int n = static_cast<int>(ip.h0.rows());
  std::string out = "t";
  for (int j = 0; j < n; ++j) out += ",E_" + std::to_string(j);
  for (int j = 0; j < n; ++j) out += ",E_direct_" + std::to_string(j);
  out += ",max_eigenvalue_err,max_projector_err\n";
  double worst_e = 0.0, worst_p = 0.0;
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    const double t = path.times[k];
    const EigenDecomposition direct =
        hermitian_eigen(HermitianOperator(ComplexMatrix(ip.h0 + t * ip.v)));
    std::vector<double> row{t};
    double err_e = 0.0, err_p = 0.0;
    for (int j = 0; j < n; ++j) row.push_back(path.values[k](j));
    for (int j = 0; j < n; ++j) {
      row.push_back(direct.values(j));
      err_e = std::max(err_e, std::abs(direct.values(j) - path.values[k](j)));
      const ComplexVector u = direct.vectors.col(j);
      err_p = std::max(err_p, (path.projectors[k][j] - u * u.adjoint()).norm());
    }
    row.push_back(err_e);
    row.push_back(err_p);
    worst_e = std::max(worst_e, err_e);
    worst_p = std::max(worst_p, err_p);
    append_csv_row(out, row);
  }
  const std::string file = join_path(cfg.output_dir, "eigenpath.csv");
  write_file(file, out);
  rep.files.push_back(file);
  sum << "steps: " << ip.steps << "\n"
      << "max eigenvalue error: " << format_double(worst_e) << "\n"
      << "max projector error: " << format_double(worst_p) << "\n";
}

}  // namespace

DensityState initial_density(const RunConfig& cfg, int levels) {
  if (!cfg.initial) throw ConfigError("initial", "section is required");
  const InitialSection& in = *cfg.initial;
  try {
    switch (in.kind) {
      case InitialSection::Kind::kVector:
        return DensityState::from_projector(PureProjector::from_vector(in.vector));
      case InitialSection::Kind::kDensity:
        return DensityState::from_matrix(in.density);
      case InitialSection::Kind::kBloch:
        return density_from_bloch({in.bloch[0], in.bloch[1], in.bloch[2]});
      case InitialSection::Kind::kLevel:
        return DensityState::from_projector(PureProjector::basis_state(levels, in.level));
    }
  } catch (const ValidationError& e) {
    throw ConfigError("initial", e.what());
  }
  throw ConfigError("initial", "unsupported initial state");
}

PureProjector initial_projector(const RunConfig& cfg, int levels) {
  if (!cfg.initial) throw ConfigError("initial", "section is required");
  const InitialSection& in = *cfg.initial;
  try {
    switch (in.kind) {
      case InitialSection::Kind::kVector:
        return PureProjector::from_vector(in.vector);
      case InitialSection::Kind::kLevel:
        return PureProjector::basis_state(levels, in.level);
      case InitialSection::Kind::kDensity:
        return PureProjector::from_projector(in.density);
      case InitialSection::Kind::kBloch: {
        const BlochVector n{in.bloch[0], in.bloch[1], in.bloch[2]};
        if (!n.is_pure()) throw ValidationError("Bloch vector is not on the unit sphere");
        return project_rank1(HermitianOperator(density_from_bloch(n).matrix()));
      }
    }
  } catch (const Error& e) {
    throw ConfigError("initial", std::string("a pure initial state is required: ") + e.what());
  }
  throw ConfigError("initial", "unsupported initial state");
}

RunReport run(const RunConfig& cfg, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(cfg.output_dir);
  RunReport rep;
  std::ostringstream sum;
  sum << "mode: " << mode_name(cfg.mode) << "\n";
  if (cfg.model && cfg.mode != Mode::kTwoLevel) {
    const AtomModel m = model_of(cfg);
    const Connectivity c = check_connectivity(m);
    if (!c.connected) {
      std::string stranded;
      for (int j = 0; j < m.levels(); ++j) {
        if (c.witness[j].empty()) stranded += (stranded.empty() ? "" : ", ") + std::to_string(j);
      }
      rep.warnings.push_back("levels " + stranded +
                             " have no decay chain to the ground state; the ensemble "
                             "need not relax to it");
    }
  }
  switch (cfg.mode) {
    case Mode::kEnsemble: run_ensemble_mode(cfg, rep, sum); break;
    case Mode::kNoDetect:
    case Mode::kDetect: run_trajectory_mode(cfg, options, rep, sum); break;
    case Mode::kTwoLevel: run_twolevel_mode(cfg, rep, sum); break;
    case Mode::kRandWalk: run_randwalk_mode(cfg, options, rep, sum); break;
    case Mode::kIpt: run_ipt_mode(cfg, rep, sum); break;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const std::string& f : rep.files) sum << "wrote: " << f << "\n";
  sum << "wall time: " << format_double(std::round(wall * 1000.0) / 1000.0) << " s\n";
  rep.summary = sum.str();
  return rep;
}

}  // namespace jumplab
