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

#include "jumplab/nodetect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "flow_kernel.hpp"
#include "jumplab/errors.hpp"
#include "jumplab/lindblad.hpp"

namespace jumplab {

namespace {

using detail::FlowKernel;
using detail::StateVec;

constexpr double kNever = std::numeric_limits<double>::infinity();

struct FlowState {
  StateVec psi;
  StateVec k1;
  double hz1 = 0.0;
  double t = 0.0;
  double lambda = 0.0;
};

void restart(const FlowKernel& kern, FlowState& s, const ComplexVector& psi) {
  s.psi = psi;
  s.lambda = 0.0;
  kern.eval(s.psi, s.k1, s.hz1);
}

// Integrated hazard over a fraction theta of a step, from the cubic Hermite
// interpolant of Lambda (values 0 and dl, slopes hz0 and hz1).
double hermite_lambda(double theta, double h, double hz0, double hz1, double dl) {
  const double t2 = theta * theta;
  const double t3 = t2 * theta;
  return (t3 - 2.0 * t2 + theta) * h * hz0 + (3.0 * t2 - 2.0 * t3) * dl +
         (t3 - t2) * h * hz1;
}

// Steps towards `stop` with steps of at most hmax, landing on it exactly.
// Returns true, with the state placed at the crossing, as soon as the
// integrated hazard reaches `threshold`.
bool advance(const FlowKernel& kern, FlowState& s, double stop, double hmax,
             double threshold) {
  StateVec out, k_end;
  double hz_end = 0.0;
  while (s.t < stop) {
    // An exact fixed point of the flow (e.g. the ground state) never jumps.
    if (s.hz1 == 0.0 && s.k1.squaredNorm() == 0.0) {
      s.t = stop;
      return false;
    }
    const double remaining = stop - s.t;
    const bool last = remaining <= hmax * (1.0 + 1e-9);
    const double h = last ? remaining : hmax;
    double dl = 0.0;
    kern.rk4(s.psi, s.k1, s.hz1, h, out, dl);
    if (!out.allFinite() || !std::isfinite(dl)) {
      throw NumericalError("no-jump integration diverged at t=" + std::to_string(s.t));
    }
    kern.eval(out, k_end, hz_end);
    if (s.lambda + dl >= threshold) {
      const double target = threshold - s.lambda;
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hermite_lambda(mid, h, s.hz1, hz_end, dl) < target) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double tau = hi * h;
      kern.rk4(s.psi, s.k1, s.hz1, tau, out, dl);
      s.psi = out;
      s.t += tau;
      s.lambda += dl;
      kern.eval(s.psi, s.k1, s.hz1);
      return true;
    }
    s.psi = out;
    s.k1 = k_end;
    s.hz1 = hz_end;
    s.t = last ? stop : s.t + h;
    s.lambda += dl;
  }
  return false;
}

ComplexVector to_vector(const StateVec& v) { return ComplexVector(v); }

void check_sample_times(const std::vector<double>& times, double horizon) {
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] >= 0.0 && times[k] <= horizon) ||
        (k > 0 && times[k] < times[k - 1])) {
      throw ValidationError("sample times must be nondecreasing within [0, horizon]");
    }
  }
}

}  // namespace

ComplexMatrix nojump_rhs(const AtomModel& m, const PureProjector& p) {
  const ComplexMatrix l = generator_apply(m, p.matrix());
  const ComplexMatrix pm = p.matrix();
  const ComplexMatrix pc = p.complement();
  return pc * l * pm + pm * l * pc;
}

ComplexMatrix coupling_operator(const AtomModel& m, const PureProjector& p) {
  const ComplexMatrix l = generator_apply(m, p.matrix());
  const ComplexMatrix pm = p.matrix();
  const ComplexMatrix pc = p.complement();
  return -(pc * l * pm) + pm * l * pc;
}

double survival_log_rhs(const AtomModel& m, const PureProjector& p) {
  return std::min(0.0, p.expectation(generator_apply(m, p.matrix())).real());
}

std::vector<JumpChannel> jump_spectrum(const AtomModel& m, const PureProjector& p) {
  const int n = m.levels();
  std::vector<JumpChannel> out;
  if (n < 2) return out;
  // Orthonormal basis of the range of 1 - P: its eigenvectors for eigenvalue 1.
  const EigenDecomposition comp = hermitian_eigen(HermitianOperator(p.complement()));
  const ComplexMatrix b = comp.vectors.leftCols(n - 1);
  const ComplexMatrix l = generator_apply(m, p.matrix());
  ComplexMatrix reduced = b.adjoint() * l * b;
  reduced = 0.5 * (reduced + reduced.adjoint());
  const EigenDecomposition red = hermitian_eigen(HermitianOperator(reduced));
  out.reserve(n - 1);
  for (int k = 0; k < n - 1; ++k) {
    out.push_back({std::max(0.0, red.values(k)),
                   PureProjector::from_vector(b * red.vectors.col(k))});
  }
  return out;
}

NoJumpFlow nojump_flow(const AtomModel& m, const PureProjector& p, double t,
                       double max_step) {
  if (p.dim() != m.levels()) throw ValidationError("state dimension mismatch");
  if (!(t >= 0.0)) throw ValidationError("flow time must be >= 0");
  const FlowKernel kern(m);
  FlowState s;
  restart(kern, s, p.vector());
  advance(kern, s, t, max_step > 0.0 ? max_step : default_step(m), kNever);
  return {PureProjector::from_vector(to_vector(s.psi)), -s.lambda};
}

Trajectory sample_trajectory(const AtomModel& m, const PureProjector& initial,
                             double horizon, RandomStream& rng,
                             const SamplerOptions& options) {
  if (initial.dim() != m.levels()) throw ValidationError("initial state dimension mismatch");
  if (!(horizon > 0.0)) throw ValidationError("horizon must be positive");
  const std::vector<double>& times = options.sample_times;
  check_sample_times(times, horizon);
  const double hmax = options.max_step > 0.0 ? options.max_step : default_step(m);
  const FlowKernel kern(m);

  Trajectory traj{initial, {}, horizon, {}, 0.0};
  traj.samples.reserve(times.size());
  FlowState s;
  restart(kern, s, initial.vector());
  double threshold = rng.exponential(1.0);
  std::size_t k = 0;
  auto record_due = [&] {
    while (k < times.size() && times[k] <= s.t) {
      traj.samples.push_back({times[k], PureProjector::from_vector(to_vector(s.psi))});
      ++k;
    }
  };

  record_due();
  while (s.t < horizon) {
    const double stop = k < times.size() ? times[k] : horizon;
    if (advance(kern, s, stop, hmax, threshold) && s.t < horizon) {
      const PureProjector pre = PureProjector::from_vector(to_vector(s.psi));
      std::vector<JumpChannel> chans = jump_spectrum(m, pre);
      double total = 0.0;
      for (const JumpChannel& c : chans) total += c.rate;
      if (!(total > 0.0)) {
        throw NumericalError("jump fired at t=" + std::to_string(s.t) +
                             " with zero total rate");
      }
      const double u = rng.uniform() * total;
      std::size_t pick = 0;
      double acc = 0.0;
      for (std::size_t c = 0; c < chans.size(); ++c) {
        if (chans[c].rate <= 0.0) continue;
        pick = c;
        acc += chans[c].rate;
        if (u < acc) break;
      }
      const double rate = chans[pick].rate;
      traj.log_density += -s.lambda + std::log(rate);
      traj.events.push_back(
          {s.t, static_cast<int>(pick) + 1, chans[pick].target, rate});
      restart(kern, s, chans[pick].target.vector());
      threshold = rng.exponential(1.0);
    }
    record_due();
  }
  traj.log_density -= s.lambda;
  return traj;
}

double trajectory_log_density(const AtomModel& m, const Trajectory& traj,
                              const SamplerOptions& options) {
  const int n = m.levels();
  if (traj.initial.dim() != n) throw ValidationError("initial state dimension mismatch");
  if (!(traj.horizon > 0.0)) throw ValidationError("horizon must be positive");
  for (std::size_t e = 0; e < traj.events.size(); ++e) {
    const JumpEvent& ev = traj.events[e];
    if (!(ev.time >= 0.0 && ev.time < traj.horizon) ||
        (e > 0 && !(ev.time > traj.events[e - 1].time))) {
      throw ValidationError("jump " + std::to_string(e) + " is out of order");
    }
    if (ev.channel < 1 || ev.channel > n - 1 || ev.post_state.dim() != n) {
      throw ValidationError("jump " + std::to_string(e) + " has an invalid channel");
    }
  }
  std::vector<double> times;
  for (const StateSample& s : traj.samples) times.push_back(s.time);
  check_sample_times(times, traj.horizon);

  const double hmax = options.max_step > 0.0 ? options.max_step : default_step(m);
  const FlowKernel kern(m);
  FlowState s;
  restart(kern, s, traj.initial.vector());
  double log_w = 0.0;
  std::size_t k = 0, e = 0;
  auto check_due = [&] {
    while (k < times.size() && times[k] <= s.t) {
      const double d =
          traj.samples[k].state.distance(PureProjector::from_vector(to_vector(s.psi)));
      if (d > tol::kTrajectoryState) {
        throw ValidationError("sample at t=" + std::to_string(times[k]) +
                              " is off the no-jump flow by " + std::to_string(d));
      }
      ++k;
    }
  };

  check_due();
  while (s.t < traj.horizon) {
    double stop = traj.horizon;
    if (k < times.size()) stop = std::min(stop, times[k]);
    if (e < traj.events.size()) stop = std::min(stop, traj.events[e].time);
    advance(kern, s, stop, hmax, kNever);
    if (e < traj.events.size() && s.t == traj.events[e].time) {
      const JumpEvent& ev = traj.events[e];
      const std::vector<JumpChannel> chans =
          jump_spectrum(m, PureProjector::from_vector(to_vector(s.psi)));
      const JumpChannel& c = chans[ev.channel - 1];
      if (!(c.rate > 0.0)) {
        throw ValidationError("jump " + std::to_string(e) + " uses a channel with zero rate");
      }
      const double d = c.target.distance(ev.post_state);
      if (d > tol::kTrajectoryState) {
        throw ValidationError("post-jump state of jump " + std::to_string(e) +
                              " is not the channel eigenprojector (off by " +
                              std::to_string(d) + ")");
      }
      log_w += -s.lambda + std::log(c.rate);
      restart(kern, s, ev.post_state.vector());
      ++e;
    }
    check_due();
  }
  return log_w - s.lambda;
}

}  // namespace jumplab
