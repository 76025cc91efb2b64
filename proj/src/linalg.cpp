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

#include "jumplab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "jumplab/errors.hpp"

namespace jumplab {

namespace {

constexpr double kLeadingComponent = 1e-8;

int leading_index(const ComplexVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > kLeadingComponent) return static_cast<int>(k);
  }
  return static_cast<int>(v.size());
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError("Hermitian operator must be a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw ValidationError("Hermitian operator has non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = hermiticity_defect(m);
  if (defect > tol::kHermitian * scale) {
    throw ValidationError("matrix is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

ComplexMatrix EigenDecomposition::reconstruct() const {
  return vectors * values.cast<cd>().asDiagonal() * vectors.adjoint();
}

void canonicalize_phase(ComplexVector& v) {
  const int k = leading_index(v);
  if (k >= v.size()) return;
  v *= std::conj(v(k)) / std::abs(v(k));
  v(k) = cd(v(k).real(), 0.0);
}

EigenDecomposition hermitian_eigen(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  const int n = h.dim();
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    ComplexVector v = solver.eigenvectors().col(n - 1 - k);
    canonicalize_phase(v);
    out.vectors.col(k) = v;
  }

  const double scale = out.values.cwiseAbs().maxCoeff();
  const double block_gap = tol::kDegenerateGap * std::max(scale, 1e-300);
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && out.values(stop - 1) - out.values(stop) < block_gap) {
      ++stop;
    }
    if (stop - start > 1) {
      std::vector<int> order(stop - start);
      std::iota(order.begin(), order.end(), start);
      std::vector<int> lead(n);
      for (int k = start; k < stop; ++k) lead[k] = leading_index(out.vectors.col(k));
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (lead[a] != lead[b]) return lead[a] < lead[b];
        if (lead[a] >= n) return false;
        return std::abs(out.vectors(lead[a], a)) > std::abs(out.vectors(lead[b], b));
      });
      ComplexMatrix block(n, stop - start);
      RealVector vals(stop - start);
      for (int k = 0; k < stop - start; ++k) {
        block.col(k) = out.vectors.col(order[k]);
        vals(k) = out.values(order[k]);
      }
      out.vectors.middleCols(start, stop - start) = block;
      out.values.segment(start, stop - start) = vals;
    }
    start = stop;
  }
  return out;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  if (!m.allFinite()) throw NumericalError("matrix_exp: non-finite input");
  ComplexMatrix out = m.exp();
  if (!out.allFinite()) throw NumericalError("matrix_exp: overflow");
  return out;
}

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw NumericalError("matrix_exp: non-finite input");
  Eigen::MatrixXd out = m.exp();
  if (!out.allFinite()) throw NumericalError("matrix_exp: overflow");
  return out;
}

PureProjector PureProjector::from_vector(const ComplexVector& v) {
  if (v.size() == 0 || !v.allFinite()) {
    throw ValidationError("state vector must be finite and non-empty");
  }
  const double norm = v.norm();
  if (norm == 0.0) throw ValidationError("state vector is zero");
  ComplexVector u = v / norm;
  canonicalize_phase(u);
  return PureProjector(std::move(u));
}

PureProjector PureProjector::from_projector(const ComplexMatrix& p) {
  const HermitianOperator h(p);
  const ComplexMatrix& m = h.matrix();
  if (std::abs(m.trace() - 1.0) > tol::kUnitTrace) {
    throw ValidationError("projector trace differs from 1");
  }
  if ((m * m - m).norm() > tol::kIdempotent) {
    throw ValidationError("matrix is not idempotent");
  }
  return project_rank1(h);
}

PureProjector PureProjector::basis_state(int dim, int k) {
  if (k < 0 || k >= dim) throw ValidationError("basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return PureProjector(std::move(v));
}

ComplexMatrix PureProjector::complement() const {
  return ComplexMatrix::Identity(dim(), dim()) - matrix();
}

double PureProjector::distance(const PureProjector& other) const {
  // ||P - Q||_F^2 = 2 - 2 |<v|w>|^2 for unit vectors.
  const double overlap = std::norm(v_.dot(other.v_));
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
}

PureProjector project_rank1(const HermitianOperator& omega) {
  const EigenDecomposition eig = hermitian_eigen(omega);
  const double top = eig.values(0);
  if (!(top > 0.0)) {
    throw IllPosedRetraction("rank-1 retraction needs a positive top eigenvalue");
  }
  if (omega.dim() > 1 && top - eig.values(1) <= tol::kRank1Gap * top) {
    throw IllPosedRetraction("top eigenvalue is degenerate");
  }
  return PureProjector::from_vector(eig.vectors.col(0));
}

}  // namespace jumplab
