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

// Eigenvalue and eigenprojection paths along a Hermitian matrix curve H(t),
// t in [0, 1], obtained by integrating
//   dE_j/dt = Tr(P_j H'),   dP_j/dt = -[S, P_j],
//   S = sum_{i != j} P_i H' P_j / (E_i - E_j).

#include <functional>
#include <utility>
#include <vector>

#include "jumplab/linalg.hpp"

namespace jumplab {

/// values[k](j) and projectors[k][j] belong to times[k]. Eigenvalues keep
/// the descending order they have at t = 0.
struct EigenPath {
  std::vector<double> times;
  std::vector<RealVector> values;
  std::vector<std::vector<ComplexMatrix>> projectors;
};

/// (H(t), dH/dt(t)).
using MatrixCurve = std::function<std::pair<ComplexMatrix, ComplexMatrix>(double)>;

struct IptOptions {
  /// Smallest allowed eigenvalue gap, relative to the spectral norm of H.
  double gap_relative = tol::kIptGapRelative;
};

/// S = V M V^* with M_ij = (V^* H' V)_ij / (E_i - E_j) off the diagonal.
/// Throws NearDegeneracyError (parameter `t`) when two eigenvalues are
/// closer than options.gap_relative * ||H||.
ComplexMatrix ipt_generator(const HermitianOperator& h, const ComplexMatrix& hdot,
                            const EigenDecomposition& eigs, double t = 0.0,
                            const IptOptions& options = {});

/// Integrates the eigenpath over [0, 1] with `steps` RK4 steps, starting
/// from hermitian_eigen(H(0)). After every step the projector stack is
/// symmetrized and re-orthogonalized by diagonalizing sum_j (N - j) P_j.
/// Throws NearDegeneracyError naming the parameter where a gap closes.
EigenPath ipt_integrate(const MatrixCurve& curve, int steps,
                        const IptOptions& options = {});

/// The straight curve H0 + t V.
EigenPath ipt_integrate_linear(const ComplexMatrix& h0, const ComplexMatrix& v,
                               int steps, const IptOptions& options = {});

/// First-order perturbation of the simple eigenvalue E_k of H0 under
/// H0 + eps V: dE/deps = Tr(P V) and dP/deps = R V P + P V R, with R the
/// reduced resolvent sum_{E_i != E_k} P_i / (E_k - E_i). Other eigenvalues
/// may be degenerate.
struct FirstOrderShift {
  double eigenvalue_slope = 0.0;
  ComplexMatrix projector_slope;
};

FirstOrderShift first_order_shift(const HermitianOperator& h0, const ComplexMatrix& v,
                                  int index);

}  // namespace jumplab
