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

#include <string>
#include <vector>

#include "jumplab/config.hpp"
#include "jumplab/lindblad.hpp"

namespace jumplab {

struct RunOptions {
  /// Worker threads for Monte Carlo modes; 0 means default_worker_count().
  int workers = 0;
};

struct RunReport {
  /// Human-readable summary for standard output (includes wall time, so it
  /// is not reproducible; the files are).
  std::string summary;
  /// Paths of the files written, in order.
  std::vector<std::string> files;
  /// Non-fatal findings, e.g. a model that is not connected to its ground
  /// state.
  std::vector<std::string> warnings;
};

/// Initial ensemble state described by the config.
DensityState initial_density(const RunConfig& cfg, int levels);
/// Initial pure state; throws ConfigError (key "initial") if it is mixed.
PureProjector initial_projector(const RunConfig& cfg, int levels);

/// Executes the configured mode and writes its outputs under
/// cfg.output_dir:
///   ensemble          ensemble.csv
///   unravel-nodetect  trajectories.jsonl, ensemble_mean.csv, comparison.csv
///   unravel-detect    (same files)
///   twolevel          twolevel.csv
///   randwalk          randwalk_stats.csv, randwalk_density.csv
///   ipt               eigenpath.csv
/// Throws TrajectoryFailure or NumericalError on numerical breakdown.
RunReport run(const RunConfig& cfg, const RunOptions& options = {});

}  // namespace jumplab
