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

#pragma once

// Run configuration: a JSON document with sections
//
//   model    levels, energies, transitions [[i, j, d], ...], alpha
//   run      mode, t_max, trajectories, seed, output_grid_dt, output_dir,
//            write_trajectories
//   initial  exactly one of: vector, density, bloch, level
//   randwalk nu, diffusion, torus_side
//   ipt      H0, V, steps
//
// Complex numbers are written as [re, im]; a bare number is a real value.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jumplab/linalg.hpp"
#include "jumplab/model.hpp"

namespace jumplab {

enum class Mode { kEnsemble, kNoDetect, kDetect, kTwoLevel, kRandWalk, kIpt };

/// Throws ConfigError (key "run.mode") for an unknown name.
Mode parse_mode(const std::string& name);
const char* mode_name(Mode mode);

struct InitialSection {
  enum class Kind { kVector, kDensity, kBloch, kLevel };
  Kind kind = Kind::kLevel;
  ComplexVector vector;
  ComplexMatrix density;
  std::vector<double> bloch;
  int level = 0;
};

struct RandWalkSection {
  int nu = 1;
  double diffusion = 0.0;
  /// 0 selects recommended_torus_side.
  int torus_side = 0;
};

struct IptSection {
  ComplexMatrix h0;
  ComplexMatrix v;
  int steps = 200;
};

struct RunConfig {
  Mode mode = Mode::kEnsemble;
  std::optional<ModelSpec> model;
  double t_max = 10.0;
  std::uint64_t trajectories = 1000;
  std::uint64_t seed = 0;
  double output_grid_dt = 0.1;
  std::string output_dir = "out";
  bool write_trajectories = true;
  std::optional<InitialSection> initial;
  std::optional<RandWalkSection> randwalk;
  std::optional<IptSection> ipt;
};

/// Values given on the command line; each one that is set wins over the file.
struct ConfigOverrides {
  std::optional<Mode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trajectories;
  std::optional<double> t_max;
  std::optional<std::string> output_dir;
};

/// Parses and validates a configuration document. Every ConfigError names
/// the offending key. Sections that the selected mode needs are required;
/// the model section is also run through build_model.
RunConfig parse_config_text(const std::string& text, const ConfigOverrides& overrides = {});
/// Reads `path` (ConfigError with key "config" if unreadable).
RunConfig parse_config(const std::string& path, const ConfigOverrides& overrides = {});

}  // namespace jumplab
