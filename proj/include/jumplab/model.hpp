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

#include <vector>

#include "jumplab/linalg.hpp"

namespace jumplab {

/// Allowed decay upper -> lower with amplitude d = <lower|D|upper>.
struct Transition {
  int lower = 0;
  int upper = 0;
  cd amplitude{1.0, 0.0};
};

/// Unvalidated model description, as read from a configuration file.
struct ModelSpec {
  std::vector<double> energies;
  std::vector<Transition> transitions;
  double alpha = 0.0;
};

/// A few-level atom with diagonal Hamiltonian diag(E_0, ..., E_{N-1}),
/// levels ordered by increasing energy (level 0 is the ground state), and
/// decay channels D_ij = d_ij |i><j| for every allowed (i, j), j > i.
///
/// For N = 2 this stores the ground state first; the excited state is
/// level 1 and the jump operator D_01 is the lowering operator.
class AtomModel {
 public:
  int levels() const { return static_cast<int>(energies_.size()); }
  const std::vector<double>& energies() const { return energies_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  double alpha() const { return alpha_; }

  /// diag(E_0, ..., E_{N-1}).
  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }

  /// alpha * sum_{(ij)} D_ij^* D_ij; diagonal, entry j is the total decay
  /// width of level j.
  const RealVector& decay_widths() const { return widths_; }

  /// E_{N-1} - E_0.
  double energy_span() const { return energies_.back() - energies_.front(); }

  /// Index into transitions() of (lower, upper), or -1.
  int find_transition(int lower, int upper) const;

 private:
  friend AtomModel build_model(const ModelSpec& spec);
  std::vector<double> energies_;
  std::vector<Transition> transitions_;
  double alpha_ = 0.0;
  ComplexMatrix hamiltonian_;
  RealVector widths_;
};

/// Validates a ModelSpec. Throws ConfigError (key "model.*") on an empty or
/// non-increasing energy list, lower >= upper, out-of-range or duplicate
/// transitions, a zero amplitude, or alpha <= 0; CapacityError when more
/// than tol::kMaxLevels levels are requested.
AtomModel build_model(const ModelSpec& spec);

/// D_ij as a matrix: the single nonzero entry d_ij sits at (i, j).
/// Throws LookupError if (i, j) is not an allowed transition.
ComplexMatrix transition_operator(const AtomModel& m, int lower, int upper);

/// Whether every excited level decays to the ground state through a chain of
/// allowed transitions. witness[j] lists one such chain j -> ... -> 0
/// (shortest, ties broken by the smallest intermediate level); it is empty
/// for stranded levels and {0} for the ground state itself.
struct Connectivity {
  bool connected = true;
  std::vector<std::vector<int>> witness;
};

Connectivity check_connectivity(const AtomModel& m);

}  // namespace jumplab
