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

// Classical analogue: continuous-time nearest-neighbour random walk on Z^nu
// (truncated to a periodic torus) and the lattice heat equation
// d rho/dt = D Laplacian rho.

#include <cstdint>
#include <vector>

#include "jumplab/random.hpp"

namespace jumplab {

/// Probability distribution on the torus (Z/L)^nu. Site coordinates run over
/// [0, L) per axis, axis 0 varying fastest; the origin of Z^nu sits at
/// coordinate L/2 (integer division) on every axis.
class LatticeDensity {
 public:
  /// Throws ValidationError for negative, non-finite or unnormalized values
  /// (tolerance tol::kLatticeMass), or a size other than L^nu.
  LatticeDensity(int nu, int side, std::vector<double> values);
  /// Unit mass at the origin.
  static LatticeDensity point_mass(int nu, int side);

  int nu() const { return nu_; }
  int side() const { return side_; }
  int origin() const { return side_ / 2; }
  std::size_t sites() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  /// Flat index of a site given its displacement from the origin (wrapped).
  std::size_t index(const std::vector<int>& displacement) const;
  double at(const std::vector<int>& displacement) const { return values_[index(displacement)]; }

 private:
  int nu_;
  int side_;
  std::vector<double> values_;
};

/// Upper bound on the kernel mass that reaches the torus seam:
/// nu * P(Poisson(2 D t) >= floor((L + 1) / 2)).
double wraparound_bound(int nu, int side, double diffusion, double t);

/// Smallest odd L with L >= 8 ceil(sqrt(2 nu D t)) + 1 and
/// wraparound_bound <= tol::kWrapAround.
int recommended_torus_side(int nu, double diffusion, double t);

/// exp(t D Laplacian) rho0 on the torus, applied one axis at a time through
/// the dense one-dimensional kernel. Throws DomainTooSmall when
/// wraparound_bound exceeds tol::kWrapAround.
LatticeDensity diffusion_evolve(const LatticeDensity& rho0, double diffusion, double t);

/// A walk on Z^nu. Step k moves along axis step_axis[k] by step_sign[k].
struct WalkPath {
  int nu = 1;
  std::vector<int> start;
  std::vector<double> times;
  std::vector<int> step_axis;
  std::vector<int> step_sign;
  double horizon = 0.0;

  std::size_t jumps() const { return times.size(); }
  std::vector<int> endpoint() const;
};

/// Exponential(2 nu D) holding times, directions uniform over the 2 nu unit
/// vectors. Throws ValidationError for D <= 0, nu < 1 or horizon <= 0.
WalkPath sample_walk(double diffusion, int nu, double horizon, RandomStream& rng);

/// n ln D - 2 nu D horizon.
double walk_log_density(const WalkPath& path, double diffusion, int nu);

/// -sum rho ln rho.
double lattice_entropy(const LatticeDensity& rho);

}  // namespace jumplab
