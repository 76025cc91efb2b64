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

#include "jumplab/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jumplab/errors.hpp"

namespace jumplab {

double default_step(const AtomModel& m) {
  double h = tol::kMaxStep;
  h = std::min(h, tol::kStepPerRate / m.alpha());
  if (m.levels() > 1) h = std::min(h, tol::kStepPerRate / m.energy_span());
  return h;
}

EnsembleAccumulator::EnsembleAccumulator(int dim, std::vector<double> grid)
    : dim_(dim), grid_(std::move(grid)) {
  sums_.assign(grid_.size(), ComplexMatrix::Zero(dim, dim));
}

void EnsembleAccumulator::add(const Trajectory& traj) {
  if (traj.samples.size() != grid_.size()) {
    throw ValidationError("trajectory has " + std::to_string(traj.samples.size()) +
                          " samples, grid has " + std::to_string(grid_.size()));
  }
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    const StateSample& s = traj.samples[k];
    if (s.time != grid_[k] || s.state.dim() != dim_) {
      throw ValidationError("trajectory sample " + std::to_string(k) +
                            " does not match the ensemble grid");
    }
    const ComplexVector& v = s.state.vector();
    sums_[k].noalias() += v * v.adjoint();
  }
  ++count_;
}

void EnsembleAccumulator::merge(const EnsembleAccumulator& other) {
  if (other.grid_ != grid_ || other.dim_ != dim_) {
    throw ValidationError("cannot merge ensembles on different grids");
  }
  for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k] += other.sums_[k];
  count_ += other.count_;
}

std::vector<DensityState> EnsembleAccumulator::mean() const {
  if (count_ == 0) throw ValidationError("empty ensemble");
  std::vector<DensityState> out;
  out.reserve(sums_.size());
  for (const ComplexMatrix& s : sums_) {
    out.push_back(DensityState::from_matrix(s / static_cast<double>(count_)));
  }
  return out;
}

std::vector<DensityState> ensemble_mean(const std::vector<Trajectory>& trajs,
                                        const std::vector<double>& grid) {
  if (trajs.empty()) throw ValidationError("empty ensemble");
  EnsembleAccumulator acc(trajs.front().initial.dim(), grid);
  for (const Trajectory& t : trajs) acc.add(t);
  return acc.mean();
}

}  // namespace jumplab
