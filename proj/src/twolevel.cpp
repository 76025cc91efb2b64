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

#include <algorithm>
#include <cmath>

#include "jumplab/errors.hpp"

namespace jumplab {

namespace {

// Antiderivative of 1 / ((1 + x)(1 - x)(2 + x)); it decreases by alpha/2
// per unit time along the no-jump flow.
double flow_potential(double x) {
  return 0.5 * std::log1p(x) - std::log1p(-x) / 6.0 - std::log(2.0 + x) / 3.0;
}

// -(1/3) ln((1 - x)^2 (2 + x))
double survival_potential(double x) {
  return -(2.0 * std::log1p(-x) + std::log(2.0 + x)) / 3.0;
}

void require_two_level(int dim) {
  if (dim != 2) throw ValidationError("expected a two-level state");
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(n1 * n1 + n2 * n2 + n3 * n3); }

bool BlochVector::is_pure() const { return std::abs(norm() - 1.0) <= tol::kBlochPure; }

BlochVector bloch_from_density(const DensityState& omega) {
  require_two_level(omega.dim());
  const ComplexMatrix& m = omega.matrix();
  return {2.0 * m(0, 1).real(), 2.0 * m(0, 1).imag(), (m(1, 1) - m(0, 0)).real()};
}

BlochVector bloch_from_projector(const PureProjector& p) {
  return bloch_from_density(DensityState::from_projector(p));
}

DensityState density_from_bloch(const BlochVector& n) {
  if (n.norm() > 1.0 + tol::kBlochNorm) {
    throw ValidationError("Bloch vector longer than 1");
  }
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 - n.n3);
  m(1, 1) = 0.5 * (1.0 + n.n3);
  m(0, 1) = cd(0.5 * n.n1, 0.5 * n.n2);
  m(1, 0) = std::conj(m(0, 1));
  return DensityState::from_matrix(m, tol::kBlochNorm);
}

BlochVector ensemble_bloch(double e3, double gamma, double alpha, double t) {
  const double r = std::exp(-0.5 * alpha * t) * std::sqrt(std::max(0.0, 1.0 - e3 * e3));
  return {r * std::cos(gamma + t), r * std::sin(gamma + t),
          (1.0 + e3) * std::exp(-alpha * t) - 1.0};
}

BlochVector ensemble_bloch(const BlochVector& n0, double alpha, double t) {
  const double damp = std::exp(-0.5 * alpha * t);
  const double c = std::cos(t), s = std::sin(t);
  return {damp * (c * n0.n1 - s * n0.n2), damp * (s * n0.n1 + c * n0.n2),
          (1.0 + n0.n3) * std::exp(-alpha * t) - 1.0};
}

double bloch_azimuth(const BlochVector& n) {
  if (n.n1 == 0.0 && n.n2 == 0.0) return 0.0;
  return std::atan2(n.n2, n.n1);
}

BlochVector bloch_rhs(const BlochVector& n, double alpha) {
  return {-n.n2 - 0.5 * alpha * n.n1, n.n1 - 0.5 * alpha * n.n2,
          -0.5 * alpha * (2.0 + 2.0 * n.n3)};
}

BlochVector bloch_euler_step(const BlochVector& n, double alpha, double dt) {
  const BlochVector d = bloch_rhs(n, alpha);
  return {n.n1 + dt * d.n1, n.n2 + dt * d.n2, n.n3 + dt * d.n3};
}

double nodetect_flow_e3(double e3, double alpha, double t) {
  if (e3 >= 1.0 || e3 <= -1.0 || t <= 0.0) return e3;
  const double target = flow_potential(e3) - 0.5 * alpha * t;
  double lo = -1.0, hi = e3;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (flow_potential(mid) < target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double nodetect_survival(double e_start, double e_end) {
  if (e_start <= -1.0) return 1.0;
  return std::exp(-0.5 * (survival_potential(e_start) - survival_potential(e_end)));
}

double nodetect_survival_after(double e3, double alpha, double tau) {
  if (e3 >= 1.0) return std::exp(-alpha * tau);
  if (e3 <= -1.0) return 1.0;
  return nodetect_survival(e3, nodetect_flow_e3(e3, alpha, tau));
}

double nodetect_hazard(double e3, double alpha) {
  return 0.25 * alpha * (1.0 + e3) * (1.0 + e3);
}

double detect_flow_e3(double e3, double alpha, double t) {
  if (e3 >= 1.0 || e3 <= -1.0 || t <= 0.0) return e3;
  return std::tanh(std::atanh(e3) - 0.5 * alpha * t);
}

double detect_survival(double e_start, double e_end) {
  return (1.0 - e_start) / (1.0 - e_end);
}

double detect_survival_after(double e3, double alpha, double tau) {
  if (e3 >= 1.0) return std::exp(-alpha * tau);
  if (e3 <= -1.0) return 1.0;
  // (1 - e3) / (1 - tanh(a - s)) with a = atanh(e3), s = alpha tau / 2,
  // rewritten as (1 - e3)(1 + exp(2(a - s)))/2 to stay accurate for large s.
  const double a = std::atanh(e3);
  return 0.5 * (1.0 - e3) * (1.0 + std::exp(2.0 * (a - 0.5 * alpha * tau)));
}

double detect_hazard(double e3, double alpha) { return 0.5 * alpha * (1.0 + e3); }

double trajectory_density_twolevel(const Trajectory& traj, double alpha,
                                   Unraveling mode) {
  require_two_level(traj.initial.dim());
  const bool detect = mode == Unraveling::kDetect;
  double w = 1.0;
  double t0 = 0.0;
  double e3 = bloch_from_projector(traj.initial).n3;
  for (std::size_t e = 0; e <= traj.events.size(); ++e) {
    const bool last = e == traj.events.size();
    const double tau = (last ? traj.horizon : traj.events[e].time) - t0;
    if (detect) {
      w *= detect_survival_after(e3, alpha, tau);
    } else {
      w *= nodetect_survival_after(e3, alpha, tau);
    }
    if (last) break;
    const double e_end =
        detect ? detect_flow_e3(e3, alpha, tau) : nodetect_flow_e3(e3, alpha, tau);
    w *= detect ? detect_hazard(e_end, alpha) : nodetect_hazard(e_end, alpha);
    require_two_level(traj.events[e].post_state.dim());
    e3 = bloch_from_projector(traj.events[e].post_state).n3;
    t0 = traj.events[e].time;
  }
  return w;
}

}  // namespace jumplab
