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

#include "jumplab/ipt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jumplab/errors.hpp"

namespace jumplab {

namespace {

struct FlagState {
  RealVector values;
  std::vector<ComplexMatrix> proj;
};

double spectral_scale(const RealVector& values) {
  return std::max(1.0, values.cwiseAbs().maxCoeff());
}

void check_gaps(const RealVector& e, double t, double scale, const IptOptions& opt) {
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    for (Eigen::Index j = i + 1; j < e.size(); ++j) {
      const double gap = std::abs(e(i) - e(j));
      if (gap < opt.gap_relative * scale) {
        throw NearDegeneracyError(t, static_cast<int>(i), static_cast<int>(j), gap);
      }
    }
  }
}

FlagState rhs(const FlagState& s, const ComplexMatrix& hdot) {
  const int n = static_cast<int>(s.proj.size());
  std::vector<ComplexMatrix> hp(n);
  for (int j = 0; j < n; ++j) hp[j] = hdot * s.proj[j];
  ComplexMatrix gen = ComplexMatrix::Zero(hdot.rows(), hdot.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) gen.noalias() += (s.proj[i] * hp[j]) / (s.values(i) - s.values(j));
    }
  }
  FlagState d;
  d.values.resize(n);
  d.proj.resize(n);
  for (int j = 0; j < n; ++j) {
    d.values(j) = hp[j].trace().real();
    d.proj[j] = s.proj[j] * gen - gen * s.proj[j];
  }
  return d;
}

FlagState axpy(const FlagState& s, double h, const FlagState& d) {
  FlagState out;
  out.values = s.values + h * d.values;
  out.proj.resize(s.proj.size());
  for (std::size_t j = 0; j < s.proj.size(); ++j) out.proj[j] = s.proj[j] + h * d.proj[j];
  return out;
}

// Nearest orthogonal flag: the eigenvectors of sum_j (N - j) P_j, matched to
// the projectors by their weights.
void cleanup(FlagState& s) {
  const int n = static_cast<int>(s.proj.size());
  ComplexMatrix w = ComplexMatrix::Zero(s.proj[0].rows(), s.proj[0].cols());
  for (int j = 0; j < n; ++j) {
    s.proj[j] = 0.5 * (s.proj[j] + s.proj[j].adjoint());
    w += static_cast<double>(n - j) * s.proj[j];
  }
  const EigenDecomposition ed = hermitian_eigen(HermitianOperator(0.5 * (w + w.adjoint())));
  for (int j = 0; j < n; ++j) {
    s.proj[j] = ed.vectors.col(j) * ed.vectors.col(j).adjoint();
  }
}

}  // namespace

ComplexMatrix ipt_generator(const HermitianOperator& h, const ComplexMatrix& hdot,
                            const EigenDecomposition& eigs, double t,
                            const IptOptions& options) {
  const int n = h.dim();
  if (hdot.rows() != n || hdot.cols() != n || eigs.values.size() != n) {
    throw ValidationError("dimension mismatch in the perturbation generator");
  }
  check_gaps(eigs.values, t, spectral_scale(eigs.values), options);
  const ComplexMatrix& v = eigs.vectors;
  ComplexMatrix m = v.adjoint() * hdot * v;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = i == j ? cd(0.0) : m(i, j) / (eigs.values(i) - eigs.values(j));
    }
  }
  return v * m * v.adjoint();
}

EigenPath ipt_integrate(const MatrixCurve& curve, int steps, const IptOptions& options) {
  if (steps < 1) throw ValidationError("eigenpath integration needs at least one step");
  const auto [h0, hdot0] = curve(0.0);
  const EigenDecomposition start = hermitian_eigen(HermitianOperator(h0));
  const int n = static_cast<int>(start.values.size());
  check_gaps(start.values, 0.0, spectral_scale(start.values), options);

  FlagState s;
  s.values = start.values;
  for (int j = 0; j < n; ++j) {
    s.proj.push_back(start.vectors.col(j) * start.vectors.col(j).adjoint());
  }
  EigenPath path;
  path.times.push_back(0.0);
  path.values.push_back(s.values);
  path.projectors.push_back(s.proj);

  const double h = 1.0 / steps;
  ComplexMatrix hdot_a = hdot0;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const ComplexMatrix hdot_m = curve(t + 0.5 * h).second;
    const auto [h_b, hdot_b] = curve(k + 1 == steps ? 1.0 : t + h);
    const FlagState k1 = rhs(s, hdot_a);
    const FlagState k2 = rhs(axpy(s, 0.5 * h, k1), hdot_m);
    const FlagState k3 = rhs(axpy(s, 0.5 * h, k2), hdot_m);
    const FlagState k4 = rhs(axpy(s, h, k3), hdot_b);
    FlagState next = axpy(s, h / 6.0, k1);
    next = axpy(next, h / 3.0, k2);
    next = axpy(next, h / 3.0, k3);
    next = axpy(next, h / 6.0, k4);
    cleanup(next);
    if (!next.values.allFinite()) {
      throw NumericalError("eigenpath integration diverged at t=" + std::to_string(t));
    }
    const double t_next = k + 1 == steps ? 1.0 : t + h;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> norm_est(h_b, Eigen::EigenvaluesOnly);
    check_gaps(next.values, t_next, spectral_scale(norm_est.eigenvalues()), options);
    s = std::move(next);
    hdot_a = hdot_b;
    path.times.push_back(t_next);
    path.values.push_back(s.values);
    path.projectors.push_back(s.proj);
  }
  return path;
}

EigenPath ipt_integrate_linear(const ComplexMatrix& h0, const ComplexMatrix& v, int steps,
                               const IptOptions& options) {
  const HermitianOperator base(h0);
  const HermitianOperator slope(v);
  if (base.dim() != slope.dim()) throw ValidationError("H0 and V differ in size");
  const ComplexMatrix a = base.matrix();
  const ComplexMatrix b = slope.matrix();
  return ipt_integrate([a, b](double t) { return std::make_pair(ComplexMatrix(a + t * b), b); },
                       steps, options);
}

FirstOrderShift first_order_shift(const HermitianOperator& h0, const ComplexMatrix& v,
                                  int index) {
  const EigenDecomposition ed = hermitian_eigen(h0);
  const int n = h0.dim();
  if (index < 0 || index >= n) throw ValidationError("eigenvalue index out of range");
  const double ek = ed.values(index);
  const double scale = spectral_scale(ed.values);
  const ComplexVector u = ed.vectors.col(index);
  ComplexMatrix r = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (i == index) continue;
    const double gap = ek - ed.values(i);
    if (std::abs(gap) < tol::kDegenerateGap * scale) {
      throw NearDegeneracyError(0.0, std::min(i, index), std::max(i, index), std::abs(gap));
    }
    r += ed.vectors.col(i) * ed.vectors.col(i).adjoint() / gap;
  }
  const ComplexMatrix p = u * u.adjoint();
  return {u.dot(v * u).real(), r * v * p + p * v * r};
}

}  // namespace jumplab
