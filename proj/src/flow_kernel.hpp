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

// Allocation-free evaluation of the no-detection vector field for the
// trajectory samplers. Relies on H and K being diagonal and on every jump
// operator having a single nonzero entry.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "jumplab/model.hpp"

namespace jumplab::detail {

using StateVec = Eigen::Matrix<cd, Eigen::Dynamic, 1, 0, tol::kMaxLevels, 1>;

class FlowKernel {
 public:
  explicit FlowKernel(const AtomModel& m);

  int dim() const { return n_; }

  /// f = (1 - P) L[P] psi for P = |psi><psi|, and the total jump rate
  /// Tr((1 - P) L[P]) = sum_T alpha |d|^2 |psi_j|^2 (1 - |psi_i|^2).
  void eval(const StateVec& psi, StateVec& f, double& hazard) const;

  /// One classical RK4 step of (psi, Lambda), with Lambda' = hazard. k1 and
  /// its hazard may be supplied to save an evaluation.
  void rk4(const StateVec& psi, const StateVec& k1, double hz1, double h,
           StateVec& out, double& dlambda) const;

 private:
  struct Channel {
    int lower;
    int upper;
    double rate;
  };
  int n_;
  std::array<double, tol::kMaxLevels> energy_{};
  std::array<double, tol::kMaxLevels> width_{};
  std::vector<Channel> channels_;
};

}  // namespace jumplab::detail
