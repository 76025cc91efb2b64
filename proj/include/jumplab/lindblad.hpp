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

// Ensemble-state layer: the Lindblad generator, its split into a
// non-trace-preserving part L' and a jump part L'', superoperators and exact
// propagation of density matrices.

#include <utility>
#include <vector>

#include "jumplab/linalg.hpp"
#include "jumplab/model.hpp"

namespace jumplab {

/// Positive, unit-trace density matrix.
class DensityState {
 public:
  /// Throws ValidationError unless m is Hermitian, |Tr m - 1| <=
  /// tol::kDensityTrace and every eigenvalue is >= -eigen_floor.
  static DensityState from_matrix(const ComplexMatrix& m,
                                  double eigen_floor = tol::kDensityEigen);
  static DensityState from_projector(const PureProjector& p);
  static DensityState maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  explicit DensityState(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// L[Omega] = -i[H, Omega] + alpha sum_T (D Omega D^* - {Omega, D^* D}/2).
/// Omega need not have unit trace. Throws ValidationError on a dimension
/// mismatch.
ComplexMatrix generator_apply(const AtomModel& m, const ComplexMatrix& omega);

/// L = L' + L'' with L''[Omega] = alpha sum_T D Omega D^* and
/// L'[Omega] = -i[H, Omega] - {Omega, K}/2, K = alpha sum_T D^* D.
struct GeneratorSplit {
  ComplexMatrix prime;
  ComplexMatrix doubleprime;
};

GeneratorSplit generator_split(const AtomModel& m, const ComplexMatrix& omega);

/// Column-stacking: vec(Omega)[i + N j] = Omega(i, j), so that
/// vec(A Omega B) = (B^T kron A) vec(Omega).
ComplexVector vectorize(const ComplexMatrix& omega);
ComplexMatrix unvectorize(const ComplexVector& v, int dim);

enum class GeneratorPart { kFull, kNoJump };

/// Matrix of L (kFull) or L' (kNoJump) acting on vectorized operators.
class Superoperator {
 public:
  Superoperator(ComplexMatrix matrix, int dim, GeneratorPart part)
      : s_(std::move(matrix)), dim_(dim), part_(part) {}

  int dim() const { return dim_; }
  GeneratorPart part() const { return part_; }
  const ComplexMatrix& matrix() const { return s_; }

  ComplexMatrix apply(const ComplexMatrix& omega) const;
  /// exp(t S).
  ComplexMatrix propagator(double t) const { return matrix_exp(ComplexMatrix(t * s_)); }
  /// unvec(exp(t S) vec(omega)).
  ComplexMatrix apply_propagated(const ComplexMatrix& omega, double t) const;

 private:
  ComplexMatrix s_;
  int dim_;
  GeneratorPart part_;
};

/// Throws CapacityError above tol::kMaxLevels levels.
Superoperator build_superoperator(const AtomModel& m, GeneratorPart which);

/// exp(t L) applied to omega0. Eigenvalues down to -tol::kPositivityFloor
/// are accepted as roundoff; anything lower raises NumericalError.
DensityState ensemble_evolve(const AtomModel& m, const DensityState& omega0,
                             double t);
DensityState ensemble_evolve(const Superoperator& full,
                             const DensityState& omega0, double t);

/// The exact flow sampled at every entry of `times` (nondecreasing, >= 0).
std::vector<DensityState> ensemble_path(const AtomModel& m,
                                        const DensityState& omega0,
                                        const std::vector<double>& times);

/// -Tr(Omega ln Omega), natural log, 0 ln 0 = 0.
double entropy(const DensityState& omega);

}  // namespace jumplab
