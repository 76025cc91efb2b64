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

#include "jumplab/randwalk.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <boost/math/distributions/poisson.hpp>

#include "jumplab/errors.hpp"
#include "jumplab/linalg.hpp"

namespace jumplab {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int k = 0; k < exp; ++k) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace

LatticeDensity::LatticeDensity(int nu, int side, std::vector<double> values)
    : nu_(nu), side_(side), values_(std::move(values)) {
  if (nu < 1 || side < 1) throw ValidationError("lattice needs nu >= 1 and side >= 1");
  if (values_.size() != ipow(side, nu)) {
    throw ValidationError("lattice density has " + std::to_string(values_.size()) +
                          " values, expected side^nu");
  }
  double total = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("lattice density must be finite and nonnegative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > tol::kLatticeMass) {
    throw ValidationError("lattice density sums to " + std::to_string(total));
  }
}

LatticeDensity LatticeDensity::point_mass(int nu, int side) {
  std::vector<double> v(ipow(side, nu), 0.0);
  std::size_t idx = 0, stride = 1;
  for (int a = 0; a < nu; ++a) {
    idx += stride * static_cast<std::size_t>(side / 2);
    stride *= static_cast<std::size_t>(side);
  }
  v[idx] = 1.0;
  return LatticeDensity(nu, side, std::move(v));
}

std::size_t LatticeDensity::index(const std::vector<int>& displacement) const {
  if (static_cast<int>(displacement.size()) != nu_) {
    throw ValidationError("displacement has the wrong dimension");
  }
  std::size_t idx = 0, stride = 1;
  for (int a = 0; a < nu_; ++a) {
    int c = (origin() + displacement[a]) % side_;
    if (c < 0) c += side_;
    idx += stride * static_cast<std::size_t>(c);
    stride *= static_cast<std::size_t>(side_);
  }
  return idx;
}

double wraparound_bound(int nu, int side, double diffusion, double t) {
  const double mean = 2.0 * diffusion * t;
  const int reach = (side + 1) / 2;
  if (mean <= 0.0) return 0.0;
  const boost::math::poisson_distribution<double> jumps(mean);
  // P(N >= reach) = 1 - P(N <= reach - 1)
  return nu * boost::math::cdf(boost::math::complement(jumps, reach - 1));
}

int recommended_torus_side(int nu, double diffusion, double t) {
  int side = 8 * static_cast<int>(std::ceil(std::sqrt(2.0 * nu * diffusion * t))) + 1;
  if (side % 2 == 0) ++side;
  while (wraparound_bound(nu, side, diffusion, t) > tol::kWrapAround) side += 2;
  return side;
}

LatticeDensity diffusion_evolve(const LatticeDensity& rho0, double diffusion, double t) {
  if (!(diffusion > 0.0)) throw ValidationError("diffusion constant must be positive");
  if (!(t >= 0.0)) throw ValidationError("diffusion time must be >= 0");
  if (t == 0.0) return rho0;
  const int nu = rho0.nu();
  const int side = rho0.side();
  const double bound = wraparound_bound(nu, side, diffusion, t);
  if (bound > tol::kWrapAround) {
    throw DomainTooSmall("torus side " + std::to_string(side) + " lets mass " +
                         std::to_string(bound) + " wrap around; use side >= " +
                         std::to_string(recommended_torus_side(nu, diffusion, t)));
  }

  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(side, side);
  for (int i = 0; i < side; ++i) {
    lap(i, i) -= 2.0;
    lap(i, (i + 1) % side) += 1.0;
    lap(i, (i + side - 1) % side) += 1.0;
  }
  const Eigen::MatrixXd kernel = matrix_exp(Eigen::MatrixXd(diffusion * t * lap));

  std::vector<double> cur = rho0.values();
  std::vector<double> next(cur.size());
  std::size_t stride = 1;
  for (int a = 0; a < nu; ++a) {
    const std::size_t block = stride * static_cast<std::size_t>(side);
    for (std::size_t base = 0; base < cur.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (int i = 0; i < side; ++i) {
          double s = 0.0;
          for (int j = 0; j < side; ++j) s += kernel(i, j) * cur[base + off + j * stride];
          next[base + off + i * stride] = s;
        }
      }
    }
    cur.swap(next);
    stride = block;
  }
  // The kernel is doubly stochastic up to roundoff; clear sub-ulp negatives
  // and renormalize.
  double total = 0.0;
  for (double& v : cur) {
    if (v < 0.0) v = 0.0;
    total += v;
  }
  for (double& v : cur) v /= total;
  return LatticeDensity(nu, side, std::move(cur));
}

std::vector<int> WalkPath::endpoint() const {
  std::vector<int> x = start;
  for (std::size_t k = 0; k < step_axis.size(); ++k) x[step_axis[k]] += step_sign[k];
  return x;
}

WalkPath sample_walk(double diffusion, int nu, double horizon, RandomStream& rng) {
  if (!(diffusion > 0.0)) throw ValidationError("diffusion constant must be positive");
  if (nu < 1) throw ValidationError("lattice dimension must be >= 1");
  if (!(horizon > 0.0)) throw ValidationError("horizon must be positive");
  WalkPath path;
  path.nu = nu;
  path.start.assign(nu, 0);
  path.horizon = horizon;
  const double rate = 2.0 * nu * diffusion;
  double t = rng.exponential(rate);
  while (t < horizon) {
    const auto dir = static_cast<int>(rng.below(2 * static_cast<std::uint64_t>(nu)));
    path.times.push_back(t);
    path.step_axis.push_back(dir / 2);
    path.step_sign.push_back(dir % 2 == 0 ? 1 : -1);
    t += rng.exponential(rate);
  }
  return path;
}

double walk_log_density(const WalkPath& path, double diffusion, int nu) {
  return static_cast<double>(path.jumps()) * std::log(diffusion) -
         2.0 * nu * diffusion * path.horizon;
}

double lattice_entropy(const LatticeDensity& rho) {
  double s = 0.0;
  for (double p : rho.values()) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace jumplab
