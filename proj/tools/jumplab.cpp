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

// jumplab <mode> --config FILE [--seed N] [--trajectories N] [--t-max X] [--out DIR]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "jumplab/config.hpp"
#include "jumplab/ensemble.hpp"
#include "jumplab/errors.hpp"
#include "jumplab/run.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-jump unravelings of Lindblad dynamics, with exact oracles."};
  app.set_version_flag("--version", "jumplab 0.1.0");
  std::string mode;
  std::string config_path;
  std::uint64_t seed = 0;
  std::uint64_t trajectories = 0;
  double t_max = 0.0;
  std::string out_dir;
  app.add_option("mode", mode,
                 "ensemble | unravel-nodetect | unravel-detect | twolevel | randwalk | ipt")
      ->required();
  app.add_option("--config", config_path, "JSON configuration file")->required();
  auto* seed_opt = app.add_option("--seed", seed, "64-bit RNG seed (overrides run.seed)");
  auto* traj_opt =
      app.add_option("--trajectories", trajectories, "number of trajectories or walks");
  auto* tmax_opt = app.add_option("--t-max", t_max, "time horizon");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    jumplab::ConfigOverrides ov;
    ov.mode = jumplab::parse_mode(mode);
    if (*seed_opt) ov.seed = seed;
    if (*traj_opt) ov.trajectories = trajectories;
    if (*tmax_opt) ov.t_max = t_max;
    if (*out_opt) ov.output_dir = out_dir;
    const jumplab::RunConfig cfg = jumplab::parse_config(config_path, ov);
    const jumplab::RunReport rep = jumplab::run(cfg);
    for (const std::string& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << rep.summary;
    return 0;
  } catch (const jumplab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const jumplab::TrajectoryFailure& e) {
    std::cerr << "numerical failure in trajectory " << e.index() << ": " << e.what() << "\n";
    return kExitNumerical;
  } catch (const jumplab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const jumplab::NearDegeneracyError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const jumplab::DomainTooSmall& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
