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

// Closed-form results for the two-level atom H = diag(0, 1), D = |0><1|,
// used as oracles for the generic machinery.
//
// Bloch convention (ground state stored first):
//   Omega = [[(1 - n3)/2, (n1 + i n2)/2], [(n1 - i n2)/2, (1 + n3)/2]],
// so n3 = +1 is the excited state, n3 = -1 the ground state, and the free
// precession turns n1 + i n2 as exp(i t).

#include <array>

#include "jumplab/lindblad.hpp"
#include "jumplab/trajectory.hpp"

namespace jumplab {

struct BlochVector {
  double n1 = 0.0;
  double n2 = 0.0;
  double n3 = 0.0;

  double norm() const;
  bool is_pure() const;
};

/// Throws ValidationError for a non-2x2 density.
BlochVector bloch_from_density(const DensityState& omega);
/// Throws ValidationError if |n| > 1 + tol::kBlochNorm.
DensityState density_from_bloch(const BlochVector& n);
BlochVector bloch_from_projector(const PureProjector& p);

/// Ensemble state at time t started from the pure state with third
/// component e3 and azimuth gamma:
///   n1 + i n2 = exp(-alpha t / 2) sqrt(1 - e3^2) exp(i (gamma + t)),
///   n3 = (1 + e3) exp(-alpha t) - 1.
BlochVector ensemble_bloch(double e3, double gamma, double alpha, double t);
/// General mixed initial condition.
BlochVector ensemble_bloch(const BlochVector& n0, double alpha, double t);

/// Azimuth of the transverse part, atan2(n2, n1), and 0 on the axis.
double bloch_azimuth(const BlochVector& n);

/// Right-hand side of the ensemble Bloch equation
///   dn/dt = e3 x n - (alpha/2) (2 e3 + n + n3 e3).
BlochVector bloch_rhs(const BlochVector& n, double alpha);
/// One explicit Euler step of the Bloch equation.
BlochVector bloch_euler_step(const BlochVector& n, double alpha, double dt);

/// Third component between photon emissions (unrecorded photons):
///   de3/dt = -(alpha/2) (1 + e3) (1 - e3) (2 + e3),
/// solved through its partial-fraction antiderivative.
double nodetect_flow_e3(double e3, double alpha, double t);
/// Probability of no jump while e3 moves from e_start to e_end along that
/// flow: [(1 - e_s)^2 (2 + e_s) / ((1 - e_e)^2 (2 + e_e))]^(1/6).
double nodetect_survival(double e_start, double e_end);
/// Same over a segment of duration tau; exp(-alpha tau) at e3 = 1.
double nodetect_survival_after(double e3, double alpha, double tau);
/// Total jump rate (alpha/4) (1 + e3)^2.
double nodetect_hazard(double e3, double alpha);

/// Third component between detections, tanh(atanh(e3) - alpha t / 2), with
/// e3 = +-1 kept fixed.
double detect_flow_e3(double e3, double alpha, double t);
/// (1 - e_start) / (1 - e_end).
double detect_survival(double e_start, double e_end);
/// Same over a segment of duration tau; exp(-alpha tau) at e3 = 1.
double detect_survival_after(double e3, double alpha, double tau);
/// Total detection rate (alpha/2) (1 + e3).
double detect_hazard(double e3, double alpha);

/// Density W of a two-level trajectory, assembled from the closed-form
/// survival and rate factors above (not its logarithm). Throws
/// ValidationError for a trajectory that is not two-level.
double trajectory_density_twolevel(const Trajectory& traj, double alpha,
                                   Unraveling mode);

}  // namespace jumplab
