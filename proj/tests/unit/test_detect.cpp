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

#include "jumplab/detect.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "jumplab/errors.hpp"
#include "jumplab/lindblad.hpp"
#include "jumplab/twolevel.hpp"
#include "test_util.hpp"

namespace jumplab {
namespace {

using testing::bloch_state;
using testing::random_vector;

PureProjector pure(const ComplexVector& v) { return PureProjector::from_vector(v); }

double e3_of(const PureProjector& p) { return (p.matrix()(1, 1) - p.matrix()(0, 0)).real(); }

TEST(EffectivePropagate, ZeroDurationIsIdentity) {
  std::mt19937_64 g(41);
  const AtomModel m = testing::ladder(0.7);
  const PureProjector p = pure(random_vector(g, 3));
  const Propagated r = effective_propagate(m, p, 0.0);
  EXPECT_LE(r.state.distance(p), 1e-14);
  EXPECT_NEAR(r.survival, 1.0, 1e-14);
}

TEST(EffectivePropagate, ExcitedSurvival) {
  const double alpha = 0.6;
  const AtomModel m = testing::two_level(alpha);
  for (double dt : {0.1, 1.0, 4.0}) {
    const Propagated r = effective_propagate(m, PureProjector::basis_state(2, 1), dt);
    EXPECT_NEAR(r.survival, std::exp(-alpha * dt), 1e-13);
    EXPECT_LE(r.state.distance(PureProjector::basis_state(2, 1)), 1e-13);
  }
}

TEST(EffectivePropagate, MatchesClosedForm) {
  std::mt19937_64 g(42);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = 0.2 + 2.0 * std::abs(u(g));
    const double e3 = u(g), dt = 3.0 * std::abs(u(g)), phi = 3.0 * u(g);
    const Propagated r = effective_propagate(testing::two_level(alpha), pure(bloch_state(e3, phi)), dt);
    const double e_end = detect_flow_e3(e3, alpha, dt);
    EXPECT_NEAR(e3_of(r.state), e_end, 1e-9);
    EXPECT_NEAR(r.survival, detect_survival(e3, e_end), 1e-9);
    EXPECT_NEAR(r.survival, detect_survival_after(e3, alpha, dt), 1e-9);
    // The azimuth keeps precessing freely.
    EXPECT_LE(r.state.distance(pure(bloch_state(e_end, phi + dt))), 1e-9);
  }
}

TEST(EffectivePropagate, SharedSuperoperatorAgrees) {
  std::mt19937_64 g(43);
  const AtomModel m = testing::ladder(0.9);
  const Superoperator s = build_superoperator(m, GeneratorPart::kNoJump);
  const PureProjector p = pure(random_vector(g, 3));
  const Propagated a = effective_propagate(m, p, 1.3), b = effective_propagate(s, p, 1.3);
  EXPECT_LE(a.state.distance(b.state), 1e-13);
  EXPECT_NEAR(a.survival, b.survival, 1e-13);
}

TEST(EffectivePropagate, UnderflowRaises) {
  const AtomModel m = testing::two_level(50.0);
  EXPECT_THROW(effective_propagate(m, PureProjector::basis_state(2, 1), 20.0), NumericalError);
}

TEST(ChannelRates, TwoLevel) {
  const double alpha = 1.1;
  std::mt19937_64 g(44);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double e3 = u(g);
    const std::vector<LevelRate> r = channel_rates(testing::two_level(alpha), pure(bloch_state(e3, u(g))));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].level, 0);
    EXPECT_NEAR(r[0].rate, detect_hazard(e3, alpha), 1e-12);
    EXPECT_NEAR(r[0].rate, 0.5 * alpha * (1 + e3), 1e-12);
  }
}

TEST(ChannelRates, SumMatchesSurvivalSlope) {
  std::mt19937_64 g(45);
  for (int trial = 0; trial < 30; ++trial) {
    const AtomModel m = testing::random_model(g, 2 + trial % 4);
    const PureProjector p = pure(random_vector(g, m.levels()));
    double total = 0.0;
    for (const LevelRate& r : channel_rates(m, p)) total += r.rate;
    // Richardson: (4 ln s(h) - ln s(2h)) / (2h) removes the O(h) term.
    const double h = 1e-5;
    const double rich = (4.0 * std::log(effective_propagate(m, p, h).survival) -
                         std::log(effective_propagate(m, p, 2 * h).survival)) / (2 * h);
    EXPECT_NEAR(-rich, total, 1e-6 * std::max(1.0, total));
  }
}

TEST(SamplerDetect, TwoLevelJumpsToGroundAndStays) {
  const double alpha = 0.8;
  const AtomModel m = testing::two_level(alpha);
  std::mt19937_64 g(46);
  for (int k = 0; k < 300; ++k) {
    RandomStream rng(11, k);
    const Trajectory t = sample_trajectory_detect(m, pure(random_vector(g, 2)), 40.0, rng);
    ASSERT_LE(t.events.size(), 1u);
    if (!t.events.empty()) {
      EXPECT_EQ(t.events[0].channel, 0);
      EXPECT_LE(t.events[0].post_state.distance(PureProjector::basis_state(2, 0)), 1e-15);
    }
  }
}

TEST(SamplerDetect, NoJumpFractionMatchesSurvival) {
  const double alpha = 0.5, e3 = 0.2, horizon = 3.0;
  const AtomModel m = testing::two_level(alpha);
  const int n = 20000;
  int none = 0;
  for (int k = 0; k < n; ++k) {
    RandomStream rng(12, k);
    if (sample_trajectory_detect(m, pure(bloch_state(e3, 0.0)), horizon, rng).events.empty()) ++none;
  }
  const double p = detect_survival_after(e3, alpha, horizon);
  EXPECT_NEAR(none / double(n), p, 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST(SamplerDetect, ExcitedDecayIsExponential) {
  const double alpha = 1.5;
  const AtomModel m = testing::two_level(alpha);
  std::vector<double> times;
  const int n = 3000;
  for (int k = 0; k < n; ++k) {
    RandomStream rng(13, k);
    const Trajectory t = sample_trajectory_detect(m, PureProjector::basis_state(2, 1), 30.0, rng);
    ASSERT_EQ(t.events.size(), 1u);
    times.push_back(t.events[0].time);
  }
  EXPECT_LT(testing::ks_statistic(times, [&](double x) { return 1.0 - std::exp(-alpha * x); }),
            1.63 / std::sqrt(n));
}

TEST(LogDensityDetect, SingleDecayFromExcited) {
  const double alpha = 0.7;
  const AtomModel m = testing::two_level(alpha);
  RandomStream rng(14, 0);
  const Trajectory t = sample_trajectory_detect(m, PureProjector::basis_state(2, 1), 30.0, rng);
  ASSERT_EQ(t.events.size(), 1u);
  const double expect = -alpha * t.events[0].time + std::log(alpha);
  EXPECT_NEAR(t.log_density, expect, 1e-9);
  EXPECT_NEAR(trajectory_log_density_detect(m, t), expect, 1e-9);
}

TEST(LogDensityDetect, RecomputationAgreesWithSampler) {
  const AtomModel m = testing::ladder(0.8);
  std::mt19937_64 g(47);
  SamplerOptions opt;
  for (int k = 0; k <= 20; ++k) opt.sample_times.push_back(0.5 * k);
  int jumps = 0;
  for (int k = 0; k < 200; ++k) {
    RandomStream rng(15, k);
    const Trajectory t = sample_trajectory_detect(m, pure(random_vector(g, 3)), 10.0, rng, opt);
    jumps += static_cast<int>(t.events.size());
    EXPECT_NEAR(trajectory_log_density_detect(m, t), t.log_density, 1e-8);
  }
  EXPECT_GT(jumps, 100);
}

TEST(LogDensityDetect, TamperedSampleIsRejected) {
  const AtomModel m = testing::ladder(0.8);
  SamplerOptions opt;
  opt.sample_times = {0.0, 1.0, 2.0};
  RandomStream rng(16, 0);
  Trajectory t = sample_trajectory_detect(m, PureProjector::basis_state(3, 2), 2.0, rng, opt);
  t.samples[1].state = PureProjector::basis_state(3, 1);
  EXPECT_THROW(trajectory_log_density_detect(m, t), ValidationError);
}

// A one-jump density assembled by hand: survival over [0, t1) from the
// superoperator, the rate of the recorded channel at t1, then survival of
// the post-jump state up to the horizon.
TEST(LogDensityDetect, AssembledByHand) {
  const AtomModel m = testing::ladder(0.9);
  ComplexVector v(3);
  v << 0.5, cd(0.1, 0.4), cd(0.7, -0.3);
  const PureProjector p0 = pure(v);
  const Superoperator s = build_superoperator(m, GeneratorPart::kNoJump);
  const double t1 = 0.8, horizon = 2.0;
  const ComplexMatrix w = s.apply_propagated(p0.matrix(), t1);
  const double surv1 = w.trace().real();
  const PureProjector at_jump = PureProjector::from_projector(w / surv1);
  // Land on level 1 through the 1 <- 2 decay.
  double rate = 0.0;
  for (const LevelRate& r : channel_rates(m, at_jump)) if (r.level == 1) rate = r.rate;
  const PureProjector post = PureProjector::basis_state(3, 1);
  const double surv2 = s.apply_propagated(post.matrix(), horizon - t1).trace().real();
  Trajectory t{p0, {JumpEvent{t1, 1, post, rate}}, horizon, {}, 0.0};
  EXPECT_NEAR(trajectory_log_density_detect(m, t),
              std::log(surv1) + std::log(rate) + std::log(surv2), 1e-10);
}

}  // namespace
}  // namespace jumplab
