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
#include <random>

#include <gtest/gtest.h>

#include "jumplab/errors.hpp"
#include "test_util.hpp"

namespace jumplab {
namespace {

using testing::random_density;
using testing::random_hermitian;
using testing::reference_generator;

ComplexMatrix ground(int n) { return PureProjector::basis_state(n, 0).matrix(); }
ComplexMatrix excited2() { return PureProjector::basis_state(2, 1).matrix(); }

TEST(Generator, GroundIsStatic) {
  const AtomModel m = testing::two_level(0.7);
  EXPECT_EQ(generator_apply(m, ground(2)).norm(), 0.0);
}

TEST(Generator, ExcitedDecays) {
  const double alpha = 0.7;
  const AtomModel m = testing::two_level(alpha);
  const ComplexMatrix l = generator_apply(m, excited2());
  EXPECT_LE((l - alpha * (ground(2) - excited2())).norm(), 1e-15);
}

TEST(Generator, MatchesTermByTermFormula) {
  std::mt19937_64 g(21);
  for (int trial = 0; trial < 20; ++trial) {
    const AtomModel m = testing::random_model(g, 2 + trial % 4);
    const ComplexMatrix w = random_hermitian(g, m.levels());
    const ComplexMatrix l = generator_apply(m, w);
    EXPECT_LE((l - reference_generator(m, w)).norm(), 1e-13 * (1.0 + w.norm()));
    EXPECT_LE(std::abs(l.trace()), 1e-12 * (1.0 + w.norm()));
    EXPECT_LE(hermiticity_defect(l), 1e-13 * (1.0 + w.norm()));
  }
}

TEST(Generator, SplitSumsToWhole) {
  std::mt19937_64 g(22);
  for (int trial = 0; trial < 20; ++trial) {
    const AtomModel m = testing::random_model(g, 3);
    const ComplexMatrix w = random_hermitian(g, 3);
    const GeneratorSplit s = generator_split(m, w);
    EXPECT_LE((s.prime + s.doubleprime - generator_apply(m, w)).norm(), 1e-13);
  }
}

TEST(Generator, JumpPartIsPositive) {
  std::mt19937_64 g(23);
  for (int trial = 0; trial < 20; ++trial) {
    const AtomModel m = testing::random_model(g, 4);
    const GeneratorSplit s = generator_split(m, random_density(g, 4));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s.doubleprime);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-14);
  }
}

TEST(Generator, SplitOnTwoLevelProjectors) {
  const double alpha = 0.4;
  const AtomModel m = testing::two_level(alpha);
  const GeneratorSplit gs = generator_split(m, ground(2));
  EXPECT_EQ(gs.prime.norm(), 0.0);
  EXPECT_EQ(gs.doubleprime.norm(), 0.0);
  const GeneratorSplit es = generator_split(m, excited2());
  EXPECT_LE((es.doubleprime - alpha * ground(2)).norm(), 1e-15);
  EXPECT_LE((es.prime + alpha * excited2()).norm(), 1e-15);
}

TEST(Generator, ClosedSystemLimit) {
  // alpha must be positive in a model; a vanishing coupling is the limit.
  const AtomModel m = build_model({{0.0, 1.0, 1.7}, {{0, 1, {1.0, 0.0}}}, 1e-300});
  std::mt19937_64 g(24);
  const ComplexMatrix w = random_hermitian(g, 3);
  const ComplexMatrix h = m.hamiltonian();
  EXPECT_LE((generator_apply(m, w) - (-kI * (h * w - w * h))).norm(), 1e-14);
  EXPECT_LE(generator_split(m, w).doubleprime.norm(), 1e-290);
}

TEST(Generator, DimensionMismatch) {
  EXPECT_THROW(generator_apply(testing::two_level(1.0), ComplexMatrix::Identity(3, 3)),
               ValidationError);
}

TEST(Superoperator, ColumnStackingConvention) {
  ComplexMatrix w(2, 2);
  w << 1.0, 2.0, 3.0, 4.0;
  const ComplexVector v = vectorize(w);
  EXPECT_EQ(v(1), cd(3.0));
  EXPECT_EQ(v(2), cd(2.0));
  EXPECT_EQ(unvectorize(v, 2), w);
}

TEST(Superoperator, MatchesGeneratorOnProbes) {
  std::mt19937_64 g(25);
  for (int n : {2, 3, 4}) {
    const AtomModel m = testing::random_model(g, n);
    const Superoperator full = build_superoperator(m, GeneratorPart::kFull);
    const Superoperator nojump = build_superoperator(m, GeneratorPart::kNoJump);
    for (int probe = 0; probe < 20; ++probe) {
      const ComplexMatrix w = random_hermitian(g, n);
      EXPECT_LE((full.apply(w) - generator_apply(m, w)).norm(), 1e-12);
      EXPECT_LE((nojump.apply(w) - generator_split(m, w).prime).norm(), 1e-12);
    }
  }
}

TEST(Superoperator, TwoLevelSpectrum) {
  const double alpha = 0.6;
  const Superoperator s = build_superoperator(testing::two_level(alpha), GeneratorPart::kFull);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(s.matrix());
  std::vector<cd> expect{0.0, -alpha, cd(-alpha / 2, 1.0), cd(-alpha / 2, -1.0)};
  for (const cd& e : expect) {
    double best = 1e9;
    for (int k = 0; k < 4; ++k) best = std::min(best, std::abs(es.eigenvalues()(k) - e));
    EXPECT_LE(best, 1e-12) << e;
  }
}

TEST(Superoperator, ClosedLimitIsAntiHermitian) {
  const Superoperator s = build_superoperator(
      build_model({{0.0, 1.0, 2.5}, {{0, 1, {1.0, 0.0}}}, 1e-300}), GeneratorPart::kFull);
  EXPECT_LE((s.matrix() + s.matrix().adjoint()).norm(), 1e-280);
}

TEST(EnsembleEvolve, ZeroTimeIsIdentity) {
  std::mt19937_64 g(26);
  const DensityState r = DensityState::from_matrix(random_density(g, 3));
  EXPECT_EQ(ensemble_evolve(testing::ladder(1.0), r, 0.0).matrix(), r.matrix());
}

TEST(EnsembleEvolve, ExcitedReachesMaximallyMixedAtLn2) {
  const AtomModel m = testing::two_level(1.0);
  const DensityState r = ensemble_evolve(m, DensityState::from_matrix(excited2()), std::log(2.0));
  EXPECT_LE((r.matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(EnsembleEvolve, TraceHermiticityPositivity) {
  std::mt19937_64 g(27);
  for (int trial = 0; trial < 10; ++trial) {
    const AtomModel m = testing::random_model(g, 4);
    const DensityState r0 = DensityState::from_matrix(random_density(g, 4));
    for (double t : {0.1, 1.0, 10.0}) {
      const DensityState r = ensemble_evolve(m, r0, t);
      EXPECT_NEAR(r.matrix().trace().real(), 1.0, 1e-10);
      EXPECT_EQ(hermiticity_defect(r.matrix()), 0.0);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r.matrix());
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
    }
  }
}

TEST(EnsembleEvolve, Semigroup) {
  std::mt19937_64 g(28);
  const AtomModel m = testing::random_model(g, 3);
  const DensityState r0 = DensityState::from_matrix(random_density(g, 3));
  const DensityState a = ensemble_evolve(m, r0, 1.7);
  const DensityState b = ensemble_evolve(m, ensemble_evolve(m, r0, 0.5), 1.2);
  EXPECT_LE((a.matrix() - b.matrix()).norm(), 1e-10);
}

TEST(EnsembleEvolve, ConnectedModelsRelax) {
  std::mt19937_64 g(29);
  for (int trial = 0; trial < 5; ++trial) {
    const AtomModel m = testing::random_model(g, 2 + trial);
    const DensityState r0 = DensityState::from_matrix(random_density(g, m.levels()));
    // Slowest single decay sets the time scale.
    const double slowest = m.decay_widths().tail(m.levels() - 1).minCoeff();
    const DensityState r = ensemble_evolve(m, r0, 200.0 / slowest);
    EXPECT_LE((r.matrix() - ground(m.levels())).norm(), 1e-6);
  }
}

TEST(Entropy, Values) {
  EXPECT_NEAR(entropy(DensityState::from_matrix(excited2())), 0.0, 1e-15);
  EXPECT_NEAR(entropy(DensityState::maximally_mixed(2)), std::log(2.0), 1e-15);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.25;
  d(1, 1) = 0.75;
  EXPECT_NEAR(entropy(DensityState::from_matrix(d)), 0.5623, 1e-4);
  EXPECT_NEAR(entropy(DensityState::from_matrix(d)),
              -(0.25 * std::log(0.25) + 0.75 * std::log(0.75)), 1e-15);
}

TEST(Entropy, PageCurveOnLadder) {
  const AtomModel m = testing::ladder(0.8);
  ComplexVector v(3);
  v << 0.2, 0.5, cd(0.3, 0.6);
  const DensityState r0 = DensityState::from_projector(PureProjector::from_vector(v));
  EXPECT_NEAR(entropy(r0), 0.0, 1e-12);
  double peak = 0.0;
  for (double t = 0.5; t < 10.0; t += 0.5) peak = std::max(peak, entropy(ensemble_evolve(m, r0, t)));
  EXPECT_GT(peak, 1e-3);
  EXPECT_LE(entropy(ensemble_evolve(m, r0, 200.0 / m.alpha())), 1e-3);
}

TEST(NoJumpTrace, StrictlyDecreasing) {
  const AtomModel m = testing::ladder(0.5);
  const Superoperator lp = build_superoperator(m, GeneratorPart::kNoJump);
  ComplexVector v(3);
  v << 0.6, 0.0, 0.8;
  const ComplexMatrix p = PureProjector::from_vector(v).matrix();
  double prev = 1.0;
  for (double t = 0.25; t <= 10.0; t += 0.25) {
    const double tr = lp.apply_propagated(p, t).trace().real();
    EXPECT_LT(tr, prev);
    prev = tr;
  }
}

TEST(DensityState, Validation) {
  EXPECT_THROW(DensityState::from_matrix(ComplexMatrix::Identity(2, 2)), ValidationError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  EXPECT_THROW(DensityState::from_matrix(neg), ValidationError);
}

TEST(Capacity, SixteenLevelsBuild) {
  std::vector<double> e(16);
  std::vector<Transition> t;
  for (int k = 0; k < 16; ++k) e[k] = k;
  for (int k = 1; k < 16; ++k) t.push_back({k - 1, k, {1.0, 0.0}});
  const Superoperator s = build_superoperator(build_model({e, t, 1.0}), GeneratorPart::kFull);
  EXPECT_EQ(s.matrix().rows(), 256);
}

}  // namespace
}  // namespace jumplab
