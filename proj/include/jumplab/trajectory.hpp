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

// Trajectory records shared by both unravelings, and the ensemble average
// over them.

#include <cstdint>
#include <vector>

#include "jumplab/lindblad.hpp"
#include "jumplab/linalg.hpp"

namespace jumplab {

/// Whether emitted photons are recorded.
enum class Unraveling { kNoDetect, kDetect };

/// One quantum jump. For the no-detection unraveling `channel` is the
/// 1-based index delta of the target eigenprojector, rates sorted
/// descending; for the detection unraveling it is the energy level the atom
/// lands on (0-based).
struct JumpEvent {
  double time = 0.0;
  int channel = 0;
  PureProjector post_state;
  double rate_at_jump = 0.0;
};

struct StateSample {
  double time = 0.0;
  PureProjector state;
};

/// A sampled history on [0, horizon]. log_density is the log of a density
/// over the jump times (and a probability over channels), not a probability.
struct Trajectory {
  PureProjector initial;
  std::vector<JumpEvent> events;
  double horizon = 0.0;
  std::vector<StateSample> samples;
  double log_density = 0.0;
};

struct SamplerOptions {
  /// Times in [0, horizon], nondecreasing, at which the state is recorded.
  std::vector<double> sample_times;
  /// Integrator step; 0 picks min(0.01, 0.05/alpha, 0.05/(E_max - E_min)).
  double max_step = 0.0;
};

/// Fixed integrator step for a model, as described in SamplerOptions.
double default_step(const AtomModel& m);

/// Running sum of sampled projectors on a fixed grid. Merging accumulators
/// in a fixed order gives results independent of how trajectories were
/// distributed over workers.
class EnsembleAccumulator {
 public:
  EnsembleAccumulator(int dim, std::vector<double> grid);

  /// Throws ValidationError if the trajectory was not sampled on the grid.
  void add(const Trajectory& traj);
  void merge(const EnsembleAccumulator& other);

  std::uint64_t count() const { return count_; }
  const std::vector<double>& grid() const { return grid_; }
  std::vector<DensityState> mean() const;

 private:
  int dim_;
  std::vector<double> grid_;
  std::vector<ComplexMatrix> sums_;
  std::uint64_t count_ = 0;
};

/// Pointwise average of the sampled projectors of `trajs` on `grid`.
std::vector<DensityState> ensemble_mean(const std::vector<Trajectory>& trajs,
                                        const std::vector<double>& grid);

}  // namespace jumplab
