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

#include "jumplab/lindblad.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "jumplab/errors.hpp"

namespace jumplab {

namespace {

void check_dim(const AtomModel& m, const ComplexMatrix& omega) {
  if (omega.rows() != m.levels() || omega.cols() != m.levels()) {
    throw ValidationError("operator is " + std::to_string(omega.rows()) + "x" +
                          std::to_string(omega.cols()) + " but the model has " +
                          std::to_string(m.levels()) + " levels");
  }
}

double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityState checked_result(const ComplexMatrix& raw) {
  const ComplexMatrix h = 0.5 * (raw + raw.adjoint());
  const double lo = min_eigenvalue(h);
  if (lo < -tol::kPositivityFloor) {
    throw NumericalError("propagated density lost positivity (eigenvalue " +
                         std::to_string(lo) + ")");
  }
  return DensityState::from_matrix(h, tol::kPositivityFloor);
}

}  // namespace

DensityState DensityState::from_matrix(const ComplexMatrix& m, double eigen_floor) {
  const HermitianOperator h(m);
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > tol::kDensityTrace) {
    throw ValidationError("density matrix trace is " + std::to_string(tr));
  }
  const double lo = min_eigenvalue(h.matrix());
  if (lo < -eigen_floor) {
    throw ValidationError("density matrix has eigenvalue " + std::to_string(lo));
  }
  return DensityState(h.matrix());
}

DensityState DensityState::from_projector(const PureProjector& p) {
  return DensityState(p.matrix());
}

DensityState DensityState::maximally_mixed(int dim) {
  return DensityState(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

GeneratorSplit generator_split(const AtomModel& m, const ComplexMatrix& omega) {
  check_dim(m, omega);
  const int n = m.levels();
  // H and K are diagonal, D_ij has a single entry: everything reduces to
  // row/column scalings.
  GeneratorSplit out;
  out.prime.resize(n, n);
  const auto& e = m.energies();
  const RealVector& k = m.decay_widths();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out.prime(i, j) = cd(-0.5 * (k(i) + k(j)), -(e[i] - e[j])) * omega(i, j);
    }
  }
  out.doubleprime = ComplexMatrix::Zero(n, n);
  for (const Transition& t : m.transitions()) {
    out.doubleprime(t.lower, t.lower) +=
        m.alpha() * std::norm(t.amplitude) * omega(t.upper, t.upper);
  }
  return out;
}

ComplexMatrix generator_apply(const AtomModel& m, const ComplexMatrix& omega) {
  GeneratorSplit s = generator_split(m, omega);
  return s.prime + s.doubleprime;
}

ComplexVector vectorize(const ComplexMatrix& omega) {
  return Eigen::Map<const ComplexVector>(omega.data(), omega.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, int dim) {
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& omega) const {
  return unvectorize(s_ * vectorize(omega), dim_);
}

ComplexMatrix Superoperator::apply_propagated(const ComplexMatrix& omega,
                                              double t) const {
  return unvectorize(propagator(t) * vectorize(omega), dim_);
}

Superoperator build_superoperator(const AtomModel& m, GeneratorPart which) {
  const int n = m.levels();
  if (n > tol::kMaxLevels) {
    throw CapacityError("superoperator for " + std::to_string(n) + " levels");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix& h = m.hamiltonian();
  ComplexMatrix k = ComplexMatrix::Zero(n, n);
  k.diagonal() = m.decay_widths().cast<cd>();
  // -i(I x H - H^T x I) - (I x K + K^T x I)/2
  ComplexMatrix s = -kI * (Eigen::kroneckerProduct(id, h).eval() -
                           Eigen::kroneckerProduct(h.transpose(), id).eval());
  s -= 0.5 * (Eigen::kroneckerProduct(id, k).eval() +
              Eigen::kroneckerProduct(k.transpose(), id).eval());
  if (which == GeneratorPart::kFull) {
    for (const Transition& t : m.transitions()) {
      const ComplexMatrix d = transition_operator(m, t.lower, t.upper);
      s += m.alpha() * Eigen::kroneckerProduct(d.conjugate(), d).eval();
    }
  }
  return Superoperator(std::move(s), n, which);
}

DensityState ensemble_evolve(const Superoperator& full, const DensityState& omega0,
                             double t) {
  if (!(t >= 0.0)) throw ValidationError("evolution time must be >= 0");
  if (full.part() != GeneratorPart::kFull) {
    throw ValidationError("ensemble evolution needs the full generator");
  }
  if (omega0.dim() != full.dim()) throw ValidationError("dimension mismatch");
  if (t == 0.0) return omega0;
  return checked_result(full.apply_propagated(omega0.matrix(), t));
}

DensityState ensemble_evolve(const AtomModel& m, const DensityState& omega0,
                             double t) {
  return ensemble_evolve(build_superoperator(m, GeneratorPart::kFull), omega0, t);
}

std::vector<DensityState> ensemble_path(const AtomModel& m,
                                        const DensityState& omega0,
                                        const std::vector<double>& times) {
  const Superoperator full = build_superoperator(m, GeneratorPart::kFull);
  std::vector<DensityState> out;
  out.reserve(times.size());
  // Every point is propagated from t = 0 so errors do not accumulate.
  for (double t : times) out.push_back(ensemble_evolve(full, omega0, t));
  return out;
}

double entropy(const DensityState& omega) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(omega.matrix(),
                                                  Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double p = es.eigenvalues()(k);
    if (p < -tol::kEntropyClip) {
      throw NumericalError("negative density eigenvalue " + std::to_string(p));
    }
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace jumplab
