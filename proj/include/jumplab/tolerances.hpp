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

/// Every numerical threshold used by the library lives here.
namespace jumplab::tol {

/// Hard cap on the number of atomic levels (superoperators up to 256x256).
inline constexpr int kMaxLevels = 16;

/// |A_ij - conj(A_ji)| allowed for a matrix to count as Hermitian.
inline constexpr double kHermitian = 1e-12;

/// Relative eigenvalue gap below which two eigenvalues are treated as one
/// degenerate block.
inline constexpr double kDegenerateGap = 1e-9;

/// Rank-1 retraction needs the top eigenvalue separated by this relative gap.
inline constexpr double kRank1Gap = 1e-9;

/// Pure-projector invariants: ||P^2 - P||_F and |Tr P - 1|.
inline constexpr double kIdempotent = 1e-9;
inline constexpr double kUnitTrace = 1e-10;

/// Density-matrix invariants.
inline constexpr double kDensityTrace = 1e-10;
inline constexpr double kDensityEigen = 1e-10;

/// Propagated densities may dip this far below zero before we call it a
/// genuine loss of positivity.
inline constexpr double kPositivityFloor = 1e-9;

/// Entropy clips eigenvalues in (-kEntropyClip, 0) to zero.
inline constexpr double kEntropyClip = 1e-9;

/// Bloch vectors: |n| <= 1 + kBlochNorm; pure iff | |n| - 1 | <= kBlochPure.
inline constexpr double kBlochNorm = 1e-12;
inline constexpr double kBlochPure = 1e-9;

/// Survival probability below which the no-jump propagator reports underflow.
inline constexpr double kSurvivalUnderflow = 1e-300;

/// Integrator defaults for the no-detection projector flow.
inline constexpr double kMaxStep = 0.01;
inline constexpr double kStepPerRate = 0.05;

/// Trajectory consistency: stored and recomputed states/densities.
inline constexpr double kTrajectoryState = 1e-6;

/// Eigenpath invariants and the default near-degeneracy threshold (relative
/// to ||H||).
inline constexpr double kEigenPath = 1e-8;
inline constexpr double kIptGapRelative = 1e-6;

/// Lattice densities.
inline constexpr double kLatticeMass = 1e-12;
inline constexpr double kWrapAround = 1e-8;

}  // namespace jumplab::tol
