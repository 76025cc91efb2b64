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

#include "jumplab/twolevel.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "jumplab/detect.hpp"
#include "jumplab/errors.hpp"
#include "jumplab/nodetect.hpp"
#include "test_util.hpp"

namespace jumplab {
namespace {

using testing::bloch_state;

PureProjector pure(const ComplexVector& v) { return PureProjector::from_vector(v); }

double dist(const BlochVector& a, const BlochVector& b) {
  return std::hypot(a.n1 - b.n1, a.n2 - b.n2, a.n3 - b.n3);
}

TEST(Bloch, PoleConventions) {
  const BlochVector g = bloch_from_projector(PureProjector::basis_state(2, 0));
  const BlochVector e = bloch_from_projector(PureProjector::basis_state(2, 1));
  EXPECT_NEAR(g.n3, -1.0, 1e-15);
  EXPECT_NEAR(e.n3, 1.0, 1e-15);
  EXPECT_TRUE(g.is_pure());
  const BlochVector c = bloch_from_density(DensityState::maximally_mixed(2));
  EXPECT_NEAR(c.norm(), 0.0, 1e-15);
  EXPECT_FALSE(c.is_pure());
}

TEST(Bloch, RoundTrip) {
  std::mt19937_64 g(51);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityState rho = DensityState::from_matrix(testing::random_density(g, 2));
    const DensityState back = density_from_bloch(bloch_from_density(rho));
    EXPECT_LE((back.matrix() - rho.matrix()).norm(), 1e-14);
  }
  EXPECT_THROW(density_from_bloch({0.8, 0.8, 0.0}), ValidationError);
  EXPECT_THROW(bloch_from_density(DensityState::maximally_mixed(3)), ValidationError);
}

TEST(Bloch, AzimuthFollowsTestStates) {
  const BlochVector n = bloch_from_projector(pure(bloch_state(0.1, 0.9)));
  EXPECT_NEAR(bloch_azimuth(n), 0.9, 1e-14);
  EXPECT_NEAR(n.n3, 0.1, 1e-14);
  EXPECT_EQ(bloch_azimuth({0.0, 0.0, 1.0}), 0.0);
}

TEST(EnsembleBloch, MatchesLindbladEvolution) {
  std::mt19937_64 g(52);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = 0.1 + 2.0 * std::abs(u(g));
    const double t = 5.0 * std::abs(u(g));
    const DensityState rho = DensityState::from_matrix(testing::random_density(g, 2));
    const BlochVector n0 = bloch_from_density(rho);
    const BlochVector exact = bloch_from_density(ensemble_evolve(testing::two_level(alpha), rho, t));
    EXPECT_LE(dist(ensemble_bloch(n0, alpha, t), exact), 1e-10);
    const double e3 = u(g), gamma = 3.0 * u(g);
    const DensityState pure0 = DensityState::from_projector(pure(bloch_state(e3, gamma)));
    EXPECT_LE(dist(ensemble_bloch(e3, gamma, alpha, t),
                   bloch_from_density(ensemble_evolve(testing::two_level(alpha), pure0, t))),
              1e-10);
  }
}

TEST(EnsembleBloch, GroundIsFixedPoint) {
  const BlochVector r = bloch_rhs({0.0, 0.0, -1.0}, 0.7);
  EXPECT_EQ(r.norm(), 0.0);
  EXPECT_LE(dist(ensemble_bloch(-1.0, 0.0, 0.7, 5.0), {0.0, 0.0, -1.0}), 1e-15);
}

TEST(EnsembleBloch, RhsIsDerivativeOfSolution) {
  const double alpha = 0.4, h = 1e-5;
  const BlochVector n0{0.3, -0.2, 0.5};
  const BlochVector a = ensemble_bloch(n0, alpha, h), b = ensemble_bloch(n0, alpha, -h);
  const BlochVector r = bloch_rhs(n0, alpha);
  EXPECT_NEAR((a.n1 - b.n1) / (2 * h), r.n1, 1e-8);
  EXPECT_NEAR((a.n2 - b.n2) / (2 * h), r.n2, 1e-8);
  EXPECT_NEAR((a.n3 - b.n3) / (2 * h), r.n3, 1e-8);
}

TEST(EnsembleBloch, EulerIsFirstOrder) {
  const double alpha = 0.9;
  const BlochVector n0{0.6, 0.1, -0.3};
  double prev = 0.0;
  for (double dt : {0.02, 0.01, 0.005}) {
    const double err = dist(bloch_euler_step(n0, alpha, dt), ensemble_bloch(n0, alpha, dt));
    EXPECT_LE(err, 5.0 * dt * dt);
    if (prev > 0.0) EXPECT_NEAR(prev / err, 4.0, 0.2);
    prev = err;
  }
}

TEST(NoDetectFlow, MatchesGenericIntegrator) {
  std::mt19937_64 g(53);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  for (int trial = 0; trial < 30; ++trial) {
    const double alpha = 0.2 + 2.0 * std::abs(u(g));
    const double e3 = u(g), t = 4.0 * std::abs(u(g));
    const AtomModel m = testing::two_level(alpha);
    const NoJumpFlow f = nojump_flow(m, pure(bloch_state(e3, 0.4)), t, 1e-3);
    const double e_end = nodetect_flow_e3(e3, alpha, t);
    EXPECT_NEAR(bloch_from_projector(f.state).n3, e_end, 1e-8);
    EXPECT_NEAR(std::exp(f.log_survival), nodetect_survival(e3, e_end), 1e-8);
    EXPECT_NEAR(std::exp(f.log_survival), nodetect_survival_after(e3, alpha, t), 1e-8);
  }
}

TEST(NoDetectFlow, Poles) {
  EXPECT_EQ(nodetect_flow_e3(1.0, 0.5, 3.0), 1.0);
  EXPECT_EQ(nodetect_flow_e3(-1.0, 0.5, 3.0), -1.0);
  EXPECT_NEAR(nodetect_survival_after(1.0, 0.5, 3.0), std::exp(-1.5), 1e-15);
  EXPECT_NEAR(nodetect_survival_after(-1.0, 0.5, 3.0), 1.0, 1e-15);
  EXPECT_NEAR(nodetect_hazard(1.0, 0.5), 0.5, 1e-15);
}

TEST(NoDetectFlow, SlopeAtEquator) {
  const double alpha = 0.8, h = 1e-5;
  // One-sided Richardson difference; the flow starts at e3 = 0.
  const double slope =
      (4.0 * nodetect_flow_e3(0.0, alpha, h) - nodetect_flow_e3(0.0, alpha, 2 * h)) / (2 * h);
  EXPECT_NEAR(slope, -alpha, 1e-6);
}

TEST(DetectFlow, MatchesClosedFormAndPoles) {
  EXPECT_EQ(detect_flow_e3(1.0, 0.5, 2.0), 1.0);
  EXPECT_NEAR(detect_flow_e3(0.0, 2.0, 1.0), std::tanh(-1.0), 1e-15);
  EXPECT_NEAR(detect_survival_after(1.0, 0.5, 2.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(detect_survival_after(0.3, 0.5, 2.0),
              detect_survival(0.3, detect_flow_e3(0.3, 0.5, 2.0)), 1e-14);
  EXPECT_NEAR(detect_hazard(-1.0, 3.0), 0.0, 1e-15);
}

TEST(TrajectoryDensity, AgreesWithGenericEvaluators) {
  const double alpha = 0.6;
  const AtomModel m = testing::two_level(alpha);
  std::mt19937_64 g(54);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int k = 0; k < 100; ++k) {
    const PureProjector p0 = pure(bloch_state(u(g), 2.0 * u(g)));
    RandomStream rng(21, k);
    const Trajectory a = sample_trajectory(m, p0, 6.0, rng);
    EXPECT_NEAR(std::log(trajectory_density_twolevel(a, alpha, Unraveling::kNoDetect)),
                trajectory_log_density(m, a), 1e-6);
    const Trajectory b = sample_trajectory_detect(m, p0, 6.0, rng);
    EXPECT_NEAR(std::log(trajectory_density_twolevel(b, alpha, Unraveling::kDetect)),
                trajectory_log_density_detect(m, b), 1e-6);
  }
}

TEST(TrajectoryDensity, RejectsOtherDimensions) {
  Trajectory t{PureProjector::basis_state(3, 2), {}, 1.0, {}, 0.0};
  EXPECT_THROW(trajectory_density_twolevel(t, 0.5, Unraveling::kNoDetect), ValidationError);
}

}  // namespace
}  // namespace jumplab
