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

#include "jumplab/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "jumplab/errors.hpp"

namespace jumplab {

namespace {

using nlohmann::json;

void only_keys(const json& section, const std::string& path,
               const std::set<std::string>& allowed) {
  for (auto it = section.begin(); it != section.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError(path + "." + it.key(), "unknown key");
    }
  }
}

const json& object_at(const json& doc, const std::string& key) {
  const json& s = doc.at(key);
  if (!s.is_object()) throw ConfigError(key, "must be an object");
  return s;
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
  return x;
}

double positive(const json& v, const std::string& key) {
  const double x = number(v, key);
  if (!(x > 0.0)) throw ConfigError(key, "must be positive");
  return x;
}

std::int64_t integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key, "must be an integer");
  if (v.is_number_unsigned() &&
      v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw ConfigError(key, "is too large");
  }
  return v.get<std::int64_t>();
}

std::uint64_t unsigned_integer(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) throw ConfigError(key, "must be nonnegative");
  throw ConfigError(key, "must be an unsigned 64-bit integer");
}

cd complex_value(const json& v, const std::string& key) {
  if (v.is_number()) return {number(v, key), 0.0};
  if (v.is_array() && v.size() == 2) {
    return {number(v[0], key + "[0]"), number(v[1], key + "[1]")};
  }
  throw ConfigError(key, "must be a number or an [re, im] pair");
}

ComplexVector complex_vector(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) throw ConfigError(key, "must be a non-empty list");
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    out(static_cast<Eigen::Index>(k)) = complex_value(v[k], key + "[" + std::to_string(k) + "]");
  }
  return out;
}

ComplexMatrix complex_matrix(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) throw ConfigError(key, "must be a non-empty list of rows");
  const auto n = static_cast<Eigen::Index>(v.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string row_key = key + "[" + std::to_string(i) + "]";
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ConfigError(row_key, "must be a row of " + std::to_string(n) + " entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = complex_value(row[static_cast<std::size_t>(j)],
                                row_key + "[" + std::to_string(j) + "]");
    }
  }
  return out;
}

ComplexMatrix hermitian_matrix(const json& v, const std::string& key) {
  const ComplexMatrix m = complex_matrix(v, key);
  try {
    return HermitianOperator(m).matrix();
  } catch (const ValidationError& e) {
    throw ConfigError(key, e.what());
  }
}

ModelSpec parse_model(const json& s) {
  only_keys(s, "model", {"levels", "energies", "transitions", "alpha"});
  ModelSpec spec;
  if (!s.contains("energies")) throw ConfigError("model.energies", "is required");
  const json& e = s.at("energies");
  if (!e.is_array() || e.empty()) throw ConfigError("model.energies", "must be a non-empty list");
  for (std::size_t k = 0; k < e.size(); ++k) {
    spec.energies.push_back(number(e[k], "model.energies[" + std::to_string(k) + "]"));
  }
  if (s.contains("levels")) {
    const std::int64_t n = integer(s.at("levels"), "model.levels");
    if (n != static_cast<std::int64_t>(spec.energies.size())) {
      throw ConfigError("model.levels", "does not match the number of energies");
    }
  }
  if (!s.contains("alpha")) throw ConfigError("model.alpha", "is required");
  spec.alpha = number(s.at("alpha"), "model.alpha");
  if (s.contains("transitions")) {
    const json& t = s.at("transitions");
    if (!t.is_array()) throw ConfigError("model.transitions", "must be a list");
    for (std::size_t k = 0; k < t.size(); ++k) {
      const std::string key = "model.transitions[" + std::to_string(k) + "]";
      const json& item = t[k];
      if (!item.is_array() || (item.size() != 2 && item.size() != 3)) {
        throw ConfigError(key, "must be [lower, upper] or [lower, upper, amplitude]");
      }
      Transition tr;
      tr.lower = static_cast<int>(integer(item[0], key + "[0]"));
      tr.upper = static_cast<int>(integer(item[1], key + "[1]"));
      if (item.size() == 3) tr.amplitude = complex_value(item[2], key + "[2]");
      spec.transitions.push_back(tr);
    }
  }
  try {
    build_model(spec);
  } catch (const CapacityError& e) {
    throw ConfigError("model.energies", e.what());
  }
  return spec;
}

InitialSection parse_initial(const json& s, int levels) {
  only_keys(s, "initial", {"vector", "density", "bloch", "level"});
  if (s.size() != 1) {
    throw ConfigError("initial", "give exactly one of vector, density, bloch, level");
  }
  InitialSection in;
  if (s.contains("vector")) {
    in.kind = InitialSection::Kind::kVector;
    in.vector = complex_vector(s.at("vector"), "initial.vector");
    if (levels > 0 && in.vector.size() != levels) {
      throw ConfigError("initial.vector", "length differs from model.levels");
    }
    if (!(in.vector.norm() > 0.0)) throw ConfigError("initial.vector", "must be nonzero");
  } else if (s.contains("density")) {
    in.kind = InitialSection::Kind::kDensity;
    in.density = complex_matrix(s.at("density"), "initial.density");
    if (levels > 0 && in.density.rows() != levels) {
      throw ConfigError("initial.density", "size differs from model.levels");
    }
  } else if (s.contains("bloch")) {
    in.kind = InitialSection::Kind::kBloch;
    const json& b = s.at("bloch");
    if (!b.is_array() || b.size() != 3) throw ConfigError("initial.bloch", "must be [n1, n2, n3]");
    for (std::size_t k = 0; k < 3; ++k) {
      in.bloch.push_back(number(b[k], "initial.bloch[" + std::to_string(k) + "]"));
    }
    if (levels > 0 && levels != 2) throw ConfigError("initial.bloch", "needs a two-level model");
    const double norm = std::sqrt(in.bloch[0] * in.bloch[0] + in.bloch[1] * in.bloch[1] +
                                  in.bloch[2] * in.bloch[2]);
    if (norm > 1.0 + tol::kBlochNorm) throw ConfigError("initial.bloch", "length exceeds 1");
  } else {
    in.kind = InitialSection::Kind::kLevel;
    in.level = static_cast<int>(integer(s.at("level"), "initial.level"));
    if (in.level < 0 || (levels > 0 && in.level >= levels)) {
      throw ConfigError("initial.level", "out of range");
    }
  }
  return in;
}

void apply_run(const json& s, RunConfig& cfg) {
  only_keys(s, "run", {"mode", "t_max", "trajectories", "seed", "output_grid_dt",
                       "output_dir", "write_trajectories"});
  if (s.contains("mode")) {
    if (!s.at("mode").is_string()) throw ConfigError("run.mode", "must be a string");
    cfg.mode = parse_mode(s.at("mode").get<std::string>());
  }
  if (s.contains("t_max")) cfg.t_max = positive(s.at("t_max"), "run.t_max");
  if (s.contains("trajectories")) {
    cfg.trajectories = unsigned_integer(s.at("trajectories"), "run.trajectories");
  }
  if (s.contains("seed")) cfg.seed = unsigned_integer(s.at("seed"), "run.seed");
  if (s.contains("output_grid_dt")) {
    cfg.output_grid_dt = positive(s.at("output_grid_dt"), "run.output_grid_dt");
  }
  if (s.contains("output_dir")) {
    if (!s.at("output_dir").is_string()) throw ConfigError("run.output_dir", "must be a string");
    cfg.output_dir = s.at("output_dir").get<std::string>();
  }
  if (s.contains("write_trajectories")) {
    if (!s.at("write_trajectories").is_boolean()) {
      throw ConfigError("run.write_trajectories", "must be true or false");
    }
    cfg.write_trajectories = s.at("write_trajectories").get<bool>();
  }
}

bool mode_has_model(Mode m) {
  return m == Mode::kEnsemble || m == Mode::kNoDetect || m == Mode::kDetect ||
         m == Mode::kTwoLevel;
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "ensemble") return Mode::kEnsemble;
  if (name == "unravel-nodetect") return Mode::kNoDetect;
  if (name == "unravel-detect") return Mode::kDetect;
  if (name == "twolevel") return Mode::kTwoLevel;
  if (name == "randwalk") return Mode::kRandWalk;
  if (name == "ipt") return Mode::kIpt;
  throw ConfigError("run.mode", "unknown mode '" + name + "'");
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::kEnsemble: return "ensemble";
    case Mode::kNoDetect: return "unravel-nodetect";
    case Mode::kDetect: return "unravel-detect";
    case Mode::kTwoLevel: return "twolevel";
    case Mode::kRandWalk: return "randwalk";
    case Mode::kIpt: return "ipt";
  }
  return "?";
}

RunConfig parse_config_text(const std::string& text, const ConfigOverrides& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config", "top level must be an object");
  only_keys(doc, "config", {"model", "run", "initial", "randwalk", "ipt"});
  RunConfig cfg;
  try {
    if (doc.contains("run")) apply_run(object_at(doc, "run"), cfg);
  } catch (const json::exception& e) {
    throw ConfigError("run", e.what());
  }
  if (overrides.mode) cfg.mode = *overrides.mode;
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.trajectories) cfg.trajectories = *overrides.trajectories;
  if (overrides.t_max) {
    if (!(*overrides.t_max > 0.0) || !std::isfinite(*overrides.t_max)) {
      throw ConfigError("run.t_max", "must be positive");
    }
    cfg.t_max = *overrides.t_max;
  }
  if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
  if (cfg.trajectories == 0) throw ConfigError("run.trajectories", "must be at least 1");

  const Mode mode = cfg.mode;
  int levels = 0;
  if (mode_has_model(mode)) {
    if (!doc.contains("model")) {
      if (mode != Mode::kTwoLevel) throw ConfigError("model", "section is required");
      throw ConfigError("model.alpha", "is required");
    }
    cfg.model = parse_model(object_at(doc, "model"));
    levels = static_cast<int>(cfg.model->energies.size());
    if (mode == Mode::kTwoLevel) {
      const ModelSpec& m = *cfg.model;
      if (levels != 2 || std::abs(m.energies[1] - m.energies[0] - 1.0) > 1e-12 ||
          m.transitions.size() != 1 || std::abs(std::abs(m.transitions[0].amplitude) - 1.0) > 1e-12) {
        throw ConfigError("model", "twolevel mode needs energies [E, E + 1] and one transition "
                                   "[0, 1] with |d| = 1");
      }
    }
    if (!doc.contains("initial")) throw ConfigError("initial", "section is required");
    cfg.initial = parse_initial(object_at(doc, "initial"), levels);
  }
  if (mode == Mode::kRandWalk) {
    if (!doc.contains("randwalk")) throw ConfigError("randwalk", "section is required");
    const json& s = object_at(doc, "randwalk");
    only_keys(s, "randwalk", {"nu", "diffusion", "torus_side"});
    RandWalkSection rw;
    if (s.contains("nu")) rw.nu = static_cast<int>(integer(s.at("nu"), "randwalk.nu"));
    if (rw.nu < 1 || rw.nu > 3) throw ConfigError("randwalk.nu", "must be 1, 2 or 3");
    if (!s.contains("diffusion")) throw ConfigError("randwalk.diffusion", "is required");
    rw.diffusion = positive(s.at("diffusion"), "randwalk.diffusion");
    if (s.contains("torus_side")) {
      rw.torus_side = static_cast<int>(integer(s.at("torus_side"), "randwalk.torus_side"));
      if (rw.torus_side < 3) throw ConfigError("randwalk.torus_side", "must be at least 3");
    }
    cfg.randwalk = rw;
  }
  if (mode == Mode::kIpt) {
    if (!doc.contains("ipt")) throw ConfigError("ipt", "section is required");
    const json& s = object_at(doc, "ipt");
    only_keys(s, "ipt", {"H0", "V", "steps"});
    IptSection ip;
    if (!s.contains("H0")) throw ConfigError("ipt.H0", "is required");
    if (!s.contains("V")) throw ConfigError("ipt.V", "is required");
    ip.h0 = hermitian_matrix(s.at("H0"), "ipt.H0");
    ip.v = hermitian_matrix(s.at("V"), "ipt.V");
    if (ip.v.rows() != ip.h0.rows()) throw ConfigError("ipt.V", "size differs from ipt.H0");
    if (ip.h0.rows() > tol::kMaxLevels) throw ConfigError("ipt.H0", "exceeds the size cap");
    if (s.contains("steps")) {
      const std::int64_t steps = integer(s.at("steps"), "ipt.steps");
      if (steps < 1 || steps > 10'000'000) throw ConfigError("ipt.steps", "must be in [1, 1e7]");
      ip.steps = static_cast<int>(steps);
    }
    cfg.ipt = ip;
  }
  return cfg;
}

RunConfig parse_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), overrides);
}

}  // namespace jumplab
