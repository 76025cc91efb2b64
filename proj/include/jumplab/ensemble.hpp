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

#pragma once

// Monte Carlo ensembles of jump trajectories. Trajectory k draws from
// RandomStream(seed, k), so results depend on (seed, k) only and not on the
// number of workers.

#include <cstdint>
#include <functional>
#include <vector>

#include "jumplab/errors.hpp"
#include "jumplab/model.hpp"
#include "jumplab/trajectory.hpp"

namespace jumplab {

/// A numerical failure inside one trajectory.
class TrajectoryFailure : public NumericalError {
 public:
  TrajectoryFailure(std::uint64_t index, const std::string& what)
      : NumericalError("trajectory " + std::to_string(index) + ": " + what), index_(index) {}
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_;
};

struct EnsembleJob {
  Unraveling mode = Unraveling::kNoDetect;
  double horizon = 1.0;
  std::vector<double> grid;
  std::uint64_t trajectories = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  /// Trajectories per work chunk; part of the reduction order, so keep it
  /// fixed when comparing runs.
  std::uint64_t chunk_size = 256;
};

struct EnsembleResult {
  EnsembleAccumulator mean;
  /// jump_histogram[n] counts trajectories with n jumps.
  std::vector<std::uint64_t> jump_histogram;
};

/// Called in index order on the calling thread.
using TrajectorySink = std::function<void(std::uint64_t index, const Trajectory& traj)>;

/// Samples job.trajectories histories from `initial`, sampled on job.grid.
/// Throws TrajectoryFailure (lowest failing index) on a numerical failure.
EnsembleResult run_ensemble(const AtomModel& m, const PureProjector& initial,
                            const EnsembleJob& job, const TrajectorySink& sink = {});

/// One trajectory of the ensemble, as run_ensemble would produce it.
Trajectory ensemble_member(const AtomModel& m, const PureProjector& initial,
                           const EnsembleJob& job, std::uint64_t index);

/// 0, dt, 2 dt, ... up to t_max, with t_max appended if the grid misses it.
std::vector<double> time_grid(double t_max, double dt);

}  // namespace jumplab
