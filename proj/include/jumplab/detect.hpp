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

// Unraveling of the Lindblad flow when every emitted photon is recorded.
// Between detections the state follows exp(t L') renormalized; a detection
// leaves the atom in the energy eigenstate at the lower end of the decay.

#include <utility>
#include <vector>

#include "jumplab/lindblad.hpp"
#include "jumplab/model.hpp"
#include "jumplab/random.hpp"
#include "jumplab/trajectory.hpp"

namespace jumplab {

struct Propagated {
  PureProjector state;
  /// Tr exp(dt L')[P], the probability of no detection during dt.
  double survival = 1.0;
};

/// exp(dt L')[P] normalized and retracted to rank 1. Throws NumericalError
/// if the survival probability underflows tol::kSurvivalUnderflow.
Propagated effective_propagate(const AtomModel& m, const PureProjector& p, double dt);
/// Same, reusing a prebuilt L' superoperator.
Propagated effective_propagate(const Superoperator& noJump, const PureProjector& p,
                               double dt);

struct LevelRate {
  int level = 0;
  double rate = 0.0;
};

/// Detection rate into each level that is the lower end of some allowed
/// transition: rate_i = alpha sum_j |d_ij|^2 <j|P|j>. Ascending level order.
std::vector<LevelRate> channel_rates(const AtomModel& m, const PureProjector& p);

/// Samples one detection history on [0, horizon]. JumpEvent::channel holds
/// the level the atom lands on.
Trajectory sample_trajectory_detect(const AtomModel& m, const PureProjector& initial,
                                    double horizon, RandomStream& rng,
                                    const SamplerOptions& options = {});

/// log W of a detection history, recomputed through the L' superoperator.
/// Throws ValidationError on inconsistent samples or post-jump states.
double trajectory_log_density_detect(const AtomModel& m, const Trajectory& traj);

}  // namespace jumplab
