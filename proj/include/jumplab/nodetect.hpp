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

// Unraveling of the Lindblad flow when emitted photons are not recorded.
// Between jumps the atom follows the nonlinear projector flow
//   dP/dt = (1 - P) L[P] P + P L[P] (1 - P),
// and it jumps onto an eigenprojector of (1 - P) L[P] (1 - P) at a rate
// given by the matching eigenvalue.

#include <vector>

#include "jumplab/model.hpp"
#include "jumplab/random.hpp"
#include "jumplab/trajectory.hpp"

namespace jumplab {

/// S = -(1 - P) L[P] P + P L[P] (1 - P); anti-Hermitian.
ComplexMatrix coupling_operator(const AtomModel& m, const PureProjector& p);

/// (1 - P) L[P] P + P L[P] (1 - P); Hermitian, traceless, off-diagonal with
/// respect to P.
ComplexMatrix nojump_rhs(const AtomModel& m, const PureProjector& p);

/// d ln p_nj / dt = Tr(P L[P]) <= 0, minus the total jump rate.
double survival_log_rhs(const AtomModel& m, const PureProjector& p);

struct JumpChannel {
  double rate = 0.0;
  PureProjector target;
};

/// Eigen-decomposition of (1 - P) L[P] (1 - P) on the range of 1 - P:
/// N - 1 channels with rates in descending order (tiny negative roundoff
/// clipped to 0). Targets are mutually orthogonal and orthogonal to P.
std::vector<JumpChannel> jump_spectrum(const AtomModel& m, const PureProjector& p);

/// Deterministic no-jump evolution over duration t >= 0 with the sampler's
/// integrator. log_survival is ln p_nj, the integral of survival_log_rhs.
struct NoJumpFlow {
  PureProjector state;
  double log_survival = 0.0;
};

NoJumpFlow nojump_flow(const AtomModel& m, const PureProjector& p, double t,
                       double max_step = 0.0);

/// Samples one history on [0, horizon]. Jump times are drawn by inverting
/// the survival function: an Exp(1) threshold is compared with the
/// integrated hazard, and the crossing inside a step is located by cubic
/// Hermite interpolation before the step is repeated up to it.
/// Throws NumericalError if the integration breaks down.
Trajectory sample_trajectory(const AtomModel& m, const PureProjector& initial,
                             double horizon, RandomStream& rng,
                             const SamplerOptions& options = {});

/// Recomputes log W of a trajectory by integrating its segments again.
/// Throws ValidationError if a stored sample or post-jump state departs
/// from the recomputed one by more than tol::kTrajectoryState, or if the
/// event list is malformed.
double trajectory_log_density(const AtomModel& m, const Trajectory& traj,
                              const SamplerOptions& options = {});

}  // namespace jumplab
