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

#include "jumplab/ensemble.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "jumplab/detect.hpp"
#include "jumplab/nodetect.hpp"
#include "jumplab/parallel.hpp"

namespace jumplab {

int default_worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("JUMPLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = static_cast<int>(std::min<long>(cap, 1024));
  }
  return n;
}

std::vector<double> time_grid(double t_max, double dt) {
  std::vector<double> g;
  const auto n = static_cast<std::uint64_t>(std::floor(t_max / dt * (1.0 + 1e-12)));
  for (std::uint64_t k = 0; k <= n; ++k) g.push_back(std::min(t_max, static_cast<double>(k) * dt));
  if (g.back() < t_max * (1.0 - 1e-12)) g.push_back(t_max);
  return g;
}

Trajectory ensemble_member(const AtomModel& m, const PureProjector& initial,
                           const EnsembleJob& job, std::uint64_t index) {
  RandomStream rng(job.seed, index);
  SamplerOptions opt;
  opt.sample_times = job.grid;
  return job.mode == Unraveling::kDetect
             ? sample_trajectory_detect(m, initial, job.horizon, rng, opt)
             : sample_trajectory(m, initial, job.horizon, rng, opt);
}

EnsembleResult run_ensemble(const AtomModel& m, const PureProjector& initial,
                            const EnsembleJob& job, const TrajectorySink& sink) {
  struct Chunk {
    std::uint64_t begin;
    std::vector<Trajectory> trajs;
    EnsembleAccumulator part;
  };
  EnsembleResult result{EnsembleAccumulator(m.levels(), job.grid), {}};
  ordered_parallel(
      job.trajectories, job.workers, job.chunk_size,
      [&](std::uint64_t b, std::uint64_t e) {
        Chunk c{b, {}, EnsembleAccumulator(m.levels(), job.grid)};
        c.trajs.reserve(e - b);
        for (std::uint64_t k = b; k < e; ++k) {
          try {
            c.trajs.push_back(ensemble_member(m, initial, job, k));
          } catch (const NumericalError& err) {
            throw TrajectoryFailure(k, err.what());
          }
          c.part.add(c.trajs.back());
        }
        return c;
      },
      [&](Chunk&& c) {
        for (std::size_t i = 0; i < c.trajs.size(); ++i) {
          const Trajectory& t = c.trajs[i];
          const std::size_t n = t.events.size();
          if (result.jump_histogram.size() <= n) result.jump_histogram.resize(n + 1, 0);
          ++result.jump_histogram[n];
          if (sink) sink(c.begin + i, t);
        }
        result.mean.merge(c.part);
      });
  return result;
}

}  // namespace jumplab
