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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "jumplab/errors.hpp"
#include "test_util.hpp"

namespace jumplab {
namespace {

using testing::random_hermitian;

ComplexMatrix sigma_x() {
  ComplexMatrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

TEST(IptGenerator, AntiHermitianAndMatchesFirstOrder) {
  std::mt19937_64 g(61);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const HermitianOperator h(random_hermitian(g, n));
    const ComplexMatrix v = random_hermitian(g, n);
    const EigenDecomposition e = hermitian_eigen(h);
    const ComplexMatrix s = ipt_generator(h, v, e);
    EXPECT_LE((s + s.adjoint()).norm(), 1e-11);
    for (int j = 0; j < n; ++j) {
      const ComplexMatrix p = e.vectors.col(j) * e.vectors.col(j).adjoint();
      const FirstOrderShift f = first_order_shift(h, v, j);
      EXPECT_NEAR(f.eigenvalue_slope, (p * v).trace().real(), 1e-12);
      EXPECT_LE((f.projector_slope + (s * p - p * s)).norm(), 1e-9);
    }
  }
}

TEST(FirstOrderShift, AgreesWithFiniteDifference) {
  std::mt19937_64 g(62);
  const HermitianOperator h(random_hermitian(g, 4));
  const ComplexMatrix v = random_hermitian(g, 4);
  const double eps = 1e-5;
  const EigenDecomposition plus = hermitian_eigen(HermitianOperator(h.matrix() + eps * v));
  const EigenDecomposition minus = hermitian_eigen(HermitianOperator(h.matrix() - eps * v));
  for (int j = 0; j < 4; ++j) {
    const FirstOrderShift f = first_order_shift(h, v, j);
    EXPECT_NEAR((plus.values(j) - minus.values(j)) / (2 * eps), f.eigenvalue_slope, 1e-7);
    const ComplexMatrix pp = plus.vectors.col(j) * plus.vectors.col(j).adjoint();
    const ComplexMatrix pm = minus.vectors.col(j) * minus.vectors.col(j).adjoint();
    EXPECT_LE(((pp - pm) / (2 * eps) - f.projector_slope).norm(), 1e-5);
  }
}

TEST(FirstOrderShift, DegenerateTargetIsRejected) {
  const HermitianOperator h(ComplexMatrix::Identity(3, 3));
  EXPECT_THROW(first_order_shift(h, ComplexMatrix::Zero(3, 3), 0), NearDegeneracyError);
}

TEST(IptIntegrate, ConstantCurveStaysPut) {
  std::mt19937_64 g(63);
  const ComplexMatrix h0 = random_hermitian(g, 3);
  const EigenPath path = ipt_integrate_linear(h0, ComplexMatrix::Zero(3, 3), 10);
  const EigenDecomposition e = hermitian_eigen(HermitianOperator(h0));
  ASSERT_EQ(path.times.size(), 11u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(path.values.back()(j), e.values(j), 1e-13);
    EXPECT_LE((path.projectors.back()[j] - path.projectors.front()[j]).norm(), 1e-12);
  }
}

TEST(IptIntegrate, GoldenRatioEndpoint) {
  ComplexMatrix h0(2, 2);
  h0 << 1.0, 0.0, 0.0, 0.0;
  const EigenPath path = ipt_integrate_linear(h0, sigma_x(), 400);
  EXPECT_NEAR(path.values.back()(0), (1 + std::sqrt(5.0)) / 2, 1e-10);
  EXPECT_NEAR(path.values.back()(1), (1 - std::sqrt(5.0)) / 2, 1e-10);
  const EigenDecomposition e = hermitian_eigen(HermitianOperator(h0 + sigma_x()));
  for (int j = 0; j < 2; ++j) {
    const ComplexMatrix p = e.vectors.col(j) * e.vectors.col(j).adjoint();
    EXPECT_LE((path.projectors.back()[j] - p).norm(), 1e-10);
  }
}

TEST(IptIntegrate, ProjectorInvariants) {
  std::mt19937_64 g(64);
  const EigenPath path = ipt_integrate_linear(random_hermitian(g, 4), random_hermitian(g, 4), 100);
  for (const auto& ps : path.projectors) {
    ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
    for (std::size_t j = 0; j < ps.size(); ++j) {
      sum += ps[j];
      EXPECT_LE((ps[j] * ps[j] - ps[j]).norm(), 1e-8);
      EXPECT_NEAR(ps[j].trace().real(), 1.0, 1e-8);
      for (std::size_t i = 0; i < j; ++i) EXPECT_LE((ps[i] * ps[j]).norm(), 1e-8);
    }
    EXPECT_LE((sum - ComplexMatrix::Identity(4, 4)).norm(), 1e-8);
  }
}

TEST(IptIntegrate, FourthOrderConvergence) {
  std::mt19937_64 g(65);
  const ComplexMatrix h0 = random_hermitian(g, 3), v = random_hermitian(g, 3);
  const RealVector exact = hermitian_eigen(HermitianOperator(h0 + v)).values;
  std::vector<double> err;
  for (int steps : {10, 20, 40}) {
    err.push_back((ipt_integrate_linear(h0, v, steps).values.back() - exact).cwiseAbs().maxCoeff());
  }
  EXPECT_GE(std::log2(err[0] / err[1]), 3.5);
  EXPECT_GE(std::log2(err[1] / err[2]), 3.5);
}

TEST(IptIntegrate, CurvedPath) {
  // H(t) = R(t) diag(2, 0, -1) R(t)^*, with R(t) = exp(-i t K).
  std::mt19937_64 g(66);
  const ComplexMatrix k = random_hermitian(g, 3);
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 2.0, 0.0, -1.0;
  const MatrixCurve curve = [&](double t) {
    const ComplexMatrix r = matrix_exp(ComplexMatrix(-kI * t * k));
    const ComplexMatrix h = r * d * r.adjoint();
    return std::make_pair(h, ComplexMatrix(-kI * (k * h - h * k)));
  };
  const EigenPath path = ipt_integrate(curve, 400);
  const ComplexMatrix r1 = matrix_exp(ComplexMatrix(-kI * k));
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(path.values.back()(j), d(j, j).real(), 1e-8);
    const ComplexVector u = r1.col(j);
    EXPECT_LE((path.projectors.back()[j] - u * u.adjoint()).norm(), 1e-8);
  }
}

TEST(IptIntegrate, CrossingIsReported) {
  ComplexMatrix h0 = ComplexMatrix::Zero(2, 2), v = ComplexMatrix::Zero(2, 2);
  h0.diagonal() << 1.0, -1.0;
  v.diagonal() << -2.0, 2.0;
  try {
    ipt_integrate_linear(h0, v, 64);
    FAIL() << "no error";
  } catch (const NearDegeneracyError& e) {
    EXPECT_NEAR(e.parameter(), 0.5, 0.02);
    EXPECT_EQ(e.first(), 0);
    EXPECT_EQ(e.second(), 1);
  }
}

}  // namespace
}  // namespace jumplab
