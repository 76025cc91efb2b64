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

#include "flow_kernel.hpp"

#include <cmath>

namespace jumplab::detail {

FlowKernel::FlowKernel(const AtomModel& m) : n_(m.levels()) {
  for (int k = 0; k < n_; ++k) {
    energy_[k] = m.energies()[k];
    width_[k] = m.decay_widths()(k);
  }
  for (const Transition& t : m.transitions()) {
    channels_.push_back({t.lower, t.upper, m.alpha() * std::norm(t.amplitude)});
  }
}

void FlowKernel::eval(const StateVec& psi, StateVec& f, double& hazard) const {
  std::array<double, tol::kMaxLevels> pop;
  double mean_e = 0.0;
  double mean_k = 0.0;
  for (int k = 0; k < n_; ++k) {
    pop[k] = std::norm(psi(k));
    mean_e += energy_[k] * pop[k];
    mean_k += width_[k] * pop[k];
  }
  f.resize(n_);
  for (int k = 0; k < n_; ++k) {
    f(k) = cd(-0.5 * (mean_k + width_[k]), -(energy_[k] - mean_e)) * psi(k);
  }
  hazard = 0.0;
  for (const Channel& c : channels_) {
    f(c.lower) += c.rate * pop[c.upper] * psi(c.lower);
    hazard += c.rate * pop[c.upper] * (1.0 - pop[c.lower]);
  }
  const cd overlap = psi.dot(f);
  f -= overlap * psi;
}

void FlowKernel::rk4(const StateVec& psi, const StateVec& k1, double hz1, double h,
                     StateVec& out, double& dlambda) const {
  StateVec k2, k3, k4, tmp;
  double hz2, hz3, hz4;
  tmp = psi + (0.5 * h) * k1;
  eval(tmp, k2, hz2);
  tmp = psi + (0.5 * h) * k2;
  eval(tmp, k3, hz3);
  tmp = psi + h * k3;
  eval(tmp, k4, hz4);
  out = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  out.normalize();
  dlambda = (h / 6.0) * (hz1 + 2.0 * hz2 + 2.0 * hz3 + hz4);
}

}  // namespace jumplab::detail
