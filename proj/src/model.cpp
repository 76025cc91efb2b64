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

#include "jumplab/model.hpp"

#include <cmath>
#include <string>

#include "jumplab/errors.hpp"

namespace jumplab {

int AtomModel::find_transition(int lower, int upper) const {
  for (std::size_t k = 0; k < transitions_.size(); ++k) {
    if (transitions_[k].lower == lower && transitions_[k].upper == upper) {
      return static_cast<int>(k);
    }
  }
  return -1;
}

AtomModel build_model(const ModelSpec& spec) {
  const int n = static_cast<int>(spec.energies.size());
  if (n == 0) throw ConfigError("model.energies", "at least one level is required");
  if (n > tol::kMaxLevels) {
    throw CapacityError("model.energies: " + std::to_string(n) +
                        " levels exceed the cap of " + std::to_string(tol::kMaxLevels));
  }
  for (int k = 0; k < n; ++k) {
    if (!std::isfinite(spec.energies[k])) {
      throw ConfigError("model.energies", "energies must be finite");
    }
    if (k > 0 && !(spec.energies[k] > spec.energies[k - 1])) {
      throw ConfigError("model.energies", "energies must be strictly increasing");
    }
  }
  if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) {
    throw ConfigError("model.alpha", "coupling must be a positive finite number");
  }

  AtomModel m;
  m.energies_ = spec.energies;
  m.alpha_ = spec.alpha;
  for (std::size_t k = 0; k < spec.transitions.size(); ++k) {
    const Transition& t = spec.transitions[k];
    const std::string key = "model.transitions[" + std::to_string(k) + "]";
    if (t.lower < 0 || t.upper >= n || t.lower >= n || t.upper < 0) {
      throw ConfigError(key, "level index out of range");
    }
    if (t.upper <= t.lower) {
      throw ConfigError(key, "a decay must go from a higher to a lower level (j > i)");
    }
    if (t.amplitude == cd(0.0) || !std::isfinite(std::abs(t.amplitude))) {
      throw ConfigError(key, "transition amplitude must be nonzero and finite");
    }
    if (m.find_transition(t.lower, t.upper) >= 0) {
      throw ConfigError(key, "duplicate transition");
    }
    m.transitions_.push_back(t);
  }

  m.hamiltonian_ = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m.hamiltonian_(k, k) = spec.energies[k];
  m.widths_ = RealVector::Zero(n);
  for (const Transition& t : m.transitions_) {
    m.widths_(t.upper) += spec.alpha * std::norm(t.amplitude);
  }
  return m;
}

ComplexMatrix transition_operator(const AtomModel& m, int lower, int upper) {
  const int k = m.find_transition(lower, upper);
  if (k < 0) {
    throw LookupError("no allowed transition (" + std::to_string(lower) + ", " +
                      std::to_string(upper) + ")");
  }
  ComplexMatrix d = ComplexMatrix::Zero(m.levels(), m.levels());
  d(lower, upper) = m.transitions()[k].amplitude;
  return d;
}

Connectivity check_connectivity(const AtomModel& m) {
  const int n = m.levels();
  // Breadth-first search upward from the ground state: level j is reached
  // through (i, j) once level i is.
  std::vector<int> next(n, -1);
  std::vector<bool> reached(n, false);
  reached[0] = true;
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> grown;
    for (int j = 0; j < n; ++j) {
      if (reached[j]) continue;
      for (int i : frontier) {
        if (m.find_transition(i, j) >= 0) {
          reached[j] = true;
          next[j] = i;
          grown.push_back(j);
          break;
        }
      }
    }
    frontier = std::move(grown);
  }

  Connectivity out;
  out.witness.resize(n);
  for (int j = 0; j < n; ++j) {
    if (!reached[j]) {
      out.connected = false;
      continue;
    }
    for (int k = j; k != -1; k = next[k]) out.witness[j].push_back(k);
  }
  return out;
}

}  // namespace jumplab
