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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <tuple>
#include <vector>

#include "jumplab/config.hpp"
#include "jumplab/detect.hpp"
#include "jumplab/ensemble.hpp"
#include "jumplab/errors.hpp"
#include "jumplab/ipt.hpp"
#include "jumplab/lindblad.hpp"
#include "jumplab/model.hpp"
#include "jumplab/nodetect.hpp"
#include "jumplab/randwalk.hpp"
#include "jumplab/run.hpp"
#include "jumplab/twolevel.hpp"

namespace py = pybind11;
using namespace jumplab;

namespace {

PureProjector as_state(const ComplexVector& v) { return PureProjector::from_vector(v); }

Unraveling as_unraveling(const std::string& name) {
  if (name == "nodetect") return Unraveling::kNoDetect;
  if (name == "detect") return Unraveling::kDetect;
  throw ValidationError("unraveling must be 'nodetect' or 'detect'");
}

py::dict trajectory_dict(const Trajectory& t) {
  py::list events, samples;
  for (const JumpEvent& e : t.events) {
    events.append(py::dict(py::arg("time") = e.time, py::arg("channel") = e.channel,
                           py::arg("post_state") = e.post_state.vector(),
                           py::arg("rate") = e.rate_at_jump));
  }
  for (const StateSample& s : t.samples) {
    samples.append(py::make_tuple(s.time, s.state.vector()));
  }
  return py::dict(py::arg("initial") = t.initial.vector(), py::arg("horizon") = t.horizon,
                  py::arg("events") = events, py::arg("samples") = samples,
                  py::arg("log_density") = t.log_density);
}

Trajectory trajectory_from_dict(const py::dict& d) {
  Trajectory t{as_state(d["initial"].cast<ComplexVector>()), {}, d["horizon"].cast<double>(), {},
               0.0};
  for (const py::handle e : d["events"]) {
    const py::dict ev = e.cast<py::dict>();
    t.events.push_back({ev["time"].cast<double>(), ev["channel"].cast<int>(),
                        as_state(ev["post_state"].cast<ComplexVector>()),
                        ev["rate"].cast<double>()});
  }
  for (const py::handle s : d["samples"]) {
    const auto [time, v] = s.cast<std::pair<double, ComplexVector>>();
    t.samples.push_back({time, as_state(v)});
  }
  if (d.contains("log_density")) t.log_density = d["log_density"].cast<double>();
  return t;
}

std::vector<ComplexMatrix> matrices(const std::vector<DensityState>& states) {
  std::vector<ComplexMatrix> out;
  out.reserve(states.size());
  for (const DensityState& s : states) out.push_back(s.matrix());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Quantum-jump unravelings of Lindblad dynamics.";

  auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(mod, "ValidationError", base.ptr());
  py::register_exception<ConfigError>(mod, "ConfigError", base.ptr());
  py::register_exception<NumericalError>(mod, "NumericalError", base.ptr());
  py::register_exception<CapacityError>(mod, "CapacityError", base.ptr());
  py::register_exception<LookupError>(mod, "LookupError", base.ptr());
  py::register_exception<IllPosedRetraction>(mod, "IllPosedRetraction", base.ptr());
  py::register_exception<NearDegeneracyError>(mod, "NearDegeneracyError", base.ptr());
  py::register_exception<DomainTooSmall>(mod, "DomainTooSmall", base.ptr());

  py::class_<AtomModel>(mod, "AtomModel")
      .def_property_readonly("levels", &AtomModel::levels)
      .def_property_readonly("energies", &AtomModel::energies)
      .def_property_readonly("alpha", &AtomModel::alpha)
      .def_property_readonly("hamiltonian", &AtomModel::hamiltonian)
      .def_property_readonly("decay_widths", &AtomModel::decay_widths)
      .def_property_readonly("transitions", [](const AtomModel& m) {
        std::vector<std::tuple<int, int, cd>> out;
        for (const Transition& t : m.transitions()) out.emplace_back(t.lower, t.upper, t.amplitude);
        return out;
      });

  mod.def(
      "build_model",
      [](std::vector<double> energies, const std::vector<std::tuple<int, int, cd>>& transitions,
         double alpha) {
        ModelSpec spec{std::move(energies), {}, alpha};
        for (const auto& [i, j, d] : transitions) spec.transitions.push_back({i, j, d});
        return build_model(spec);
      },
      py::arg("energies"), py::arg("transitions"), py::arg("alpha"));
  mod.def("is_connected", [](const AtomModel& m) { return check_connectivity(m).connected; });

  mod.def("generator_apply", &generator_apply, py::arg("model"), py::arg("omega"));
  mod.def(
      "ensemble_evolve",
      [](const AtomModel& m, const ComplexMatrix& rho, double t) {
        return ensemble_evolve(m, DensityState::from_matrix(rho), t).matrix();
      },
      py::arg("model"), py::arg("rho"), py::arg("t"));
  mod.def(
      "ensemble_path",
      [](const AtomModel& m, const ComplexMatrix& rho, const std::vector<double>& times) {
        return matrices(ensemble_path(m, DensityState::from_matrix(rho), times));
      },
      py::arg("model"), py::arg("rho"), py::arg("times"));
  mod.def(
      "entropy", [](const ComplexMatrix& rho) { return entropy(DensityState::from_matrix(rho)); },
      py::arg("rho"));

  mod.def(
      "jump_spectrum",
      [](const AtomModel& m, const ComplexVector& psi) {
        std::vector<std::pair<double, ComplexVector>> out;
        for (const JumpChannel& c : jump_spectrum(m, as_state(psi))) {
          out.emplace_back(c.rate, c.target.vector());
        }
        return out;
      },
      py::arg("model"), py::arg("psi"));
  mod.def(
      "survival_log_rate",
      [](const AtomModel& m, const ComplexVector& psi) { return survival_log_rhs(m, as_state(psi)); },
      py::arg("model"), py::arg("psi"));
  mod.def(
      "detection_rates",
      [](const AtomModel& m, const ComplexVector& psi) {
        std::vector<std::pair<int, double>> out;
        for (const LevelRate& r : channel_rates(m, as_state(psi))) out.emplace_back(r.level, r.rate);
        return out;
      },
      py::arg("model"), py::arg("psi"));

  mod.def(
      "sample_trajectory",
      [](const AtomModel& m, const ComplexVector& psi, double horizon, const std::string& unraveling,
         std::uint64_t seed, std::uint64_t index, std::vector<double> sample_times) {
        RandomStream rng(seed, index);
        SamplerOptions opt;
        opt.sample_times = std::move(sample_times);
        const Trajectory t = as_unraveling(unraveling) == Unraveling::kNoDetect
                                 ? sample_trajectory(m, as_state(psi), horizon, rng, opt)
                                 : sample_trajectory_detect(m, as_state(psi), horizon, rng, opt);
        return trajectory_dict(t);
      },
      py::arg("model"), py::arg("psi"), py::arg("horizon"), py::arg("unraveling") = "nodetect",
      py::arg("seed") = 0, py::arg("index") = 0,
      py::arg("sample_times") = std::vector<double>{});
  mod.def(
      "trajectory_log_density",
      [](const AtomModel& m, const py::dict& traj, const std::string& unraveling) {
        const Trajectory t = trajectory_from_dict(traj);
        if (as_unraveling(unraveling) == Unraveling::kDetect) {
          return trajectory_log_density_detect(m, t);
        }
        SamplerOptions opt;
        for (const StateSample& s : t.samples) opt.sample_times.push_back(s.time);
        return trajectory_log_density(m, t, opt);
      },
      py::arg("model"), py::arg("trajectory"), py::arg("unraveling") = "nodetect");

  mod.def(
      "run_ensemble",
      [](const AtomModel& m, const ComplexVector& psi, double horizon, std::vector<double> grid,
         std::uint64_t trajectories, const std::string& unraveling, std::uint64_t seed,
         int workers) {
        EnsembleJob job;
        job.mode = as_unraveling(unraveling);
        job.horizon = horizon;
        job.grid = std::move(grid);
        job.trajectories = trajectories;
        job.seed = seed;
        job.workers = workers;
        std::optional<EnsembleResult> r;
        {
          py::gil_scoped_release release;
          r.emplace(run_ensemble(m, as_state(psi), job));
        }
        return py::make_tuple(matrices(r->mean.mean()), r->jump_histogram);
      },
      py::arg("model"), py::arg("psi"), py::arg("horizon"), py::arg("grid"),
      py::arg("trajectories"), py::arg("unraveling") = "nodetect", py::arg("seed") = 0,
      py::arg("workers") = 1);

  mod.def(
      "ensemble_bloch",
      [](double e3, double gamma, double alpha, double t) {
        const BlochVector n = ensemble_bloch(e3, gamma, alpha, t);
        return std::array<double, 3>{n.n1, n.n2, n.n3};
      },
      py::arg("e3"), py::arg("gamma"), py::arg("alpha"), py::arg("t"));
  mod.def("nodetect_flow_e3", &nodetect_flow_e3, py::arg("e3"), py::arg("alpha"), py::arg("t"));
  mod.def("detect_flow_e3", &detect_flow_e3, py::arg("e3"), py::arg("alpha"), py::arg("t"));
  mod.def("nodetect_hazard", &nodetect_hazard, py::arg("e3"), py::arg("alpha"));
  mod.def("detect_hazard", &detect_hazard, py::arg("e3"), py::arg("alpha"));

  mod.def(
      "diffusion_evolve",
      [](int nu, int side, double diffusion, double t) {
        return diffusion_evolve(LatticeDensity::point_mass(nu, side), diffusion, t).values();
      },
      py::arg("nu"), py::arg("side"), py::arg("diffusion"), py::arg("t"));
  mod.def("recommended_torus_side", &recommended_torus_side, py::arg("nu"), py::arg("diffusion"),
          py::arg("t"));
  mod.def(
      "sample_walk_endpoint",
      [](double diffusion, int nu, double horizon, std::uint64_t seed, std::uint64_t index) {
        RandomStream rng(seed, index);
        const WalkPath w = sample_walk(diffusion, nu, horizon, rng);
        return py::make_tuple(w.endpoint(), w.jumps(), walk_log_density(w, diffusion, nu));
      },
      py::arg("diffusion"), py::arg("nu"), py::arg("horizon"), py::arg("seed") = 0,
      py::arg("index") = 0);

  mod.def(
      "eigenpath_linear",
      [](const ComplexMatrix& h0, const ComplexMatrix& v, int steps) {
        const EigenPath p = ipt_integrate_linear(h0, v, steps);
        return py::make_tuple(p.times, p.values, p.projectors);
      },
      py::arg("h0"), py::arg("v"), py::arg("steps"));

  mod.def(
      "run_config",
      [](const std::string& path, const std::string& out, int workers) {
        ConfigOverrides ov;
        if (!out.empty()) ov.output_dir = out;
        const RunConfig cfg = parse_config(path, ov);
        RunReport r;
        {
          py::gil_scoped_release release;
          r = run(cfg, RunOptions{workers});
        }
        return r.files;
      },
      py::arg("path"), py::arg("out") = "", py::arg("workers") = 1);
}
