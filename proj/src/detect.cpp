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

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "jumplab/errors.hpp"

namespace jumplab {

namespace {

// exp(t L') acts on a state vector as exp(t G) with the diagonal
// G = -iH - K/2, so a segment is described by its populations and widths.
struct Segment {
  int n = 0;
  ComplexVector start;
  std::array<double, tol::kMaxLevels> pop{};
  std::array<double, tol::kMaxLevels> width{};
  std::array<double, tol::kMaxLevels> energy{};

  double survival(double tau) const {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += pop[j] * std::exp(-width[j] * tau);
    return s;
  }
  double survival_slope(double tau) const {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s -= width[j] * pop[j] * std::exp(-width[j] * tau);
    return s;
  }
  double plateau() const {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (width[j] == 0.0) s += pop[j];
    }
    return s;
  }
  ComplexVector state(double tau) const {
    ComplexVector v(n);
    for (int j = 0; j < n; ++j) {
      v(j) = std::exp(cd(-0.5 * width[j] * tau, -energy[j] * tau)) * start(j);
    }
    return v;
  }

  // First tau with survival(tau) = level, for level above the plateau.
  // survival is decreasing and convex, so Newton from the left is monotone;
  // bisection guards against a stalled slope.
  double crossing(double level) const {
    double lo = 0.0;
    double hi = 1.0;
    while (survival(hi) > level) hi *= 2.0;
    double tau = lo;
    for (int it = 0; it < 200; ++it) {
      const double f = survival(tau) - level;
      if (f > 0.0) lo = tau; else hi = tau;
      const double slope = survival_slope(tau);
      double next = slope < 0.0 ? tau - f / slope : hi;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - tau) <= 1e-15 * std::max(1.0, tau)) return next;
      tau = next;
    }
    return tau;
  }
};

Segment make_segment(const AtomModel& m, const ComplexVector& psi) {
  Segment s;
  s.n = m.levels();
  s.start = psi;
  for (int j = 0; j < s.n; ++j) {
    s.pop[j] = std::norm(psi(j));
    s.width[j] = m.decay_widths()(j);
    s.energy[j] = m.energies()[j];
  }
  return s;
}

}  // namespace

Propagated effective_propagate(const Superoperator& noJump, const PureProjector& p,
                               double dt) {
  if (noJump.part() != GeneratorPart::kNoJump) {
    throw ValidationError("effective propagation needs the L' superoperator");
  }
  if (!(dt >= 0.0)) throw ValidationError("propagation time must be >= 0");
  if (dt == 0.0) return {p, 1.0};
  const ComplexMatrix out = noJump.apply_propagated(p.matrix(), dt);
  const double survival = out.trace().real();
  if (!(survival > tol::kSurvivalUnderflow)) {
    throw NumericalError("no-detection probability underflow after dt=" +
                         std::to_string(dt));
  }
  const ComplexMatrix normalized = out / survival;
  return {project_rank1(HermitianOperator(0.5 * (normalized + normalized.adjoint()))),
          survival};
}

Propagated effective_propagate(const AtomModel& m, const PureProjector& p, double dt) {
  return effective_propagate(build_superoperator(m, GeneratorPart::kNoJump), p, dt);
}

std::vector<LevelRate> channel_rates(const AtomModel& m, const PureProjector& p) {
  const int n = m.levels();
  std::vector<double> rate(n, 0.0);
  std::vector<bool> target(n, false);
  const ComplexVector& v = p.vector();
  for (const Transition& t : m.transitions()) {
    target[t.lower] = true;
    rate[t.lower] += m.alpha() * std::norm(t.amplitude) * std::norm(v(t.upper));
  }
  std::vector<LevelRate> out;
  for (int i = 0; i < n; ++i) {
    if (target[i]) out.push_back({i, rate[i]});
  }
  return out;
}

Trajectory sample_trajectory_detect(const AtomModel& m, const PureProjector& initial,
                                    double horizon, RandomStream& rng,
                                    const SamplerOptions& options) {
  if (initial.dim() != m.levels()) throw ValidationError("initial state dimension mismatch");
  if (!(horizon > 0.0)) throw ValidationError("horizon must be positive");
  const std::vector<double>& times = options.sample_times;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0 && times[k] <= horizon) || (k > 0 && times[k] < times[k - 1])) {
      throw ValidationError("sample times must be nondecreasing within [0, horizon]");
    }
  }

  Trajectory traj{initial, {}, horizon, {}, 0.0};
  traj.samples.reserve(times.size());
  double t0 = 0.0;
  Segment seg = make_segment(m, initial.vector());
  std::size_t k = 0;
  while (true) {
    const double level = std::exp(-rng.exponential(1.0));
    const double tau = seg.plateau() >= level ? horizon : seg.crossing(level);
    const double t_jump = t0 + tau;
    const bool jumps = t_jump < horizon;
    const double end = jumps ? t_jump : horizon;
    while (k < times.size() && times[k] <= end) {
      if (jumps && times[k] == end) break;
      traj.samples.push_back(
          {times[k], PureProjector::from_vector(seg.state(times[k] - t0))});
      ++k;
    }
    if (!jumps) {
      traj.log_density += std::log(seg.survival(horizon - t0));
      break;
    }
    const double surv = seg.survival(tau);
    if (!(surv > tol::kSurvivalUnderflow)) {
      throw NumericalError("no-detection probability underflow at t=" +
                           std::to_string(t_jump));
    }
    const PureProjector pre = PureProjector::from_vector(seg.state(tau));
    const std::vector<LevelRate> rates = channel_rates(m, pre);
    double total = 0.0;
    for (const LevelRate& r : rates) total += r.rate;
    if (!(total > 0.0)) {
      throw NumericalError("detection at t=" + std::to_string(t_jump) +
                           " with zero total rate");
    }
    const double u = rng.uniform() * total;
    std::size_t pick = 0;
    double acc = 0.0;
    for (std::size_t c = 0; c < rates.size(); ++c) {
      if (rates[c].rate <= 0.0) continue;
      pick = c;
      acc += rates[c].rate;
      if (u < acc) break;
    }
    const LevelRate& chosen = rates[pick];
    const PureProjector post = PureProjector::basis_state(m.levels(), chosen.level);
    traj.log_density += std::log(surv) + std::log(chosen.rate);
    traj.events.push_back({t_jump, chosen.level, post, chosen.rate});
    t0 = t_jump;
    seg = make_segment(m, post.vector());
  }
  return traj;
}

double trajectory_log_density_detect(const AtomModel& m, const Trajectory& traj) {
  const int n = m.levels();
  if (traj.initial.dim() != n) throw ValidationError("initial state dimension mismatch");
  if (!(traj.horizon > 0.0)) throw ValidationError("horizon must be positive");
  const Superoperator lp = build_superoperator(m, GeneratorPart::kNoJump);

  double log_w = 0.0;
  double t0 = 0.0;
  PureProjector start = traj.initial;
  std::size_t k = 0;
  for (std::size_t e = 0; e <= traj.events.size(); ++e) {
    const bool last = e == traj.events.size();
    const double end = last ? traj.horizon : traj.events[e].time;
    if (!(end >= t0) || (!last && !(end < traj.horizon))) {
      throw ValidationError("jump " + std::to_string(e) + " is out of order");
    }
    while (k < traj.samples.size() && traj.samples[k].time <= end) {
      if (!last && traj.samples[k].time == end) break;
      if (traj.samples[k].time < t0) throw ValidationError("samples out of order");
      const Propagated p = effective_propagate(lp, start, traj.samples[k].time - t0);
      const double d = p.state.distance(traj.samples[k].state);
      if (d > tol::kTrajectoryState) {
        throw ValidationError("sample at t=" + std::to_string(traj.samples[k].time) +
                              " is off the no-detection flow by " + std::to_string(d));
      }
      ++k;
    }
    const Propagated seg = effective_propagate(lp, start, end - t0);
    log_w += std::log(seg.survival);
    if (last) break;

    const JumpEvent& ev = traj.events[e];
    double rate = 0.0;
    for (const LevelRate& r : channel_rates(m, seg.state)) {
      if (r.level == ev.channel) rate = r.rate;
    }
    if (!(rate > 0.0)) {
      throw ValidationError("jump " + std::to_string(e) + " lands on level " +
                            std::to_string(ev.channel) + " which has zero rate");
    }
    const PureProjector eigen = PureProjector::basis_state(n, ev.channel);
    const double d = eigen.distance(ev.post_state);
    if (d > tol::kTrajectoryState) {
      throw ValidationError("post-jump state of jump " + std::to_string(e) +
                            " is not an energy eigenprojector (off by " +
                            std::to_string(d) + ")");
    }
    log_w += std::log(rate);
    t0 = end;
    start = eigen;
  }
  if (k != traj.samples.size()) throw ValidationError("samples beyond the horizon");
  return log_w;
}

}  // namespace jumplab
