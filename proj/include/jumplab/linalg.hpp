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

// Dense complex linear algebra for small systems: Hermitian eigenproblems,
// matrix exponentials and the rank-1 retraction used by the trajectory
// samplers.

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "jumplab/tolerances.hpp"

namespace jumplab {

using cd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cd kI{0.0, 1.0};

/// A ComplexMatrix that has been checked to be Hermitian. Construction
/// symmetrizes away the (tolerated) roundoff asymmetry.
class HermitianOperator {
 public:
  /// Throws ValidationError if m is not square, has non-finite entries, or
  /// is not Hermitian within tol::kHermitian (scaled by max(1, max|m_ij|)).
  explicit HermitianOperator(const ComplexMatrix& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Largest |A_ij - conj(A_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

/// Eigenvalues in descending order with orthonormal eigenvector columns.
struct EigenDecomposition {
  RealVector values;
  ComplexMatrix vectors;

  ComplexMatrix reconstruct() const;
};

/// Eigen-decomposition of a Hermitian operator.
///
/// Eigenvalues come out in descending order. Every eigenvector is scaled so
/// that its first component with magnitude above 1e-8 is real and positive.
/// Inside a degenerate block (relative gap < tol::kDegenerateGap) columns are
/// ordered by the index of that leading component, then by its magnitude
/// (descending). The result is a pure function of the input bits.
EigenDecomposition hermitian_eigen(const HermitianOperator& h);

/// exp(M) by scaling and squaring with a degree-13 Pade approximant.
/// Throws NumericalError if the result is not finite.
ComplexMatrix matrix_exp(const ComplexMatrix& m);
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m);

/// Rescales v so that its first component with |v_k| > 1e-8 is real and
/// positive.
void canonicalize_phase(ComplexVector& v);

/// Rank-1 orthogonal projection |v><v|, stored through its unit vector.
class PureProjector {
 public:
  /// Normalizes v; throws ValidationError on a zero or non-finite vector.
  static PureProjector from_vector(const ComplexVector& v);

  /// Validates that p is a rank-1 projector (P^2 = P within
  /// tol::kIdempotent, Tr P = 1 within tol::kUnitTrace).
  static PureProjector from_projector(const ComplexMatrix& p);

  /// |k><k| in the computational (energy) basis.
  static PureProjector basis_state(int dim, int k);

  int dim() const { return static_cast<int>(v_.size()); }
  /// Unit vector with canonical phase.
  const ComplexVector& vector() const { return v_; }
  ComplexMatrix matrix() const { return v_ * v_.adjoint(); }
  /// 1 - P.
  ComplexMatrix complement() const;

  /// <v|A|v>.
  cd expectation(const ComplexMatrix& a) const { return v_.dot(a * v_); }

  /// ||P - Q||_F, computed without forming either matrix.
  double distance(const PureProjector& other) const;

 private:
  explicit PureProjector(ComplexVector v) : v_(std::move(v)) {}
  ComplexVector v_;
};

/// Dominant eigenprojector of a (near) rank-1 positive matrix. Idempotent
/// on exact projectors and invariant under positive rescaling.
/// Throws IllPosedRetraction when the top eigenvalue is not separated from
/// the next one by tol::kRank1Gap (relative).
PureProjector project_rank1(const HermitianOperator& omega);

/// Frobenius norm.
inline double frobenius(const ComplexMatrix& m) { return m.norm(); }

}  // namespace jumplab
