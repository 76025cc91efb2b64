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

#include <array>
#include <cstdint>

namespace jumplab {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by (seed, stream index). Draw n of stream k is a
/// pure function of (seed, k, n), so the assignment of trajectories to
/// worker threads never changes the numbers any trajectory sees.
class RandomStream {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  RandomStream(std::uint64_t seed, std::uint64_t stream);

  /// The raw bijection: ten Philox rounds of `counter` under `key`.
  static Block philox(Block counter, Key key);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1]; safe to take the logarithm of.
  double uniform_pos();
  /// Exponential with the given rate (> 0).
  double exponential(double rate);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Number of 64-bit words drawn so far.
  std::uint64_t position() const { return drawn_; }

 private:
  Key key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  Block buffer_{};
  int available_ = 0;
  std::uint64_t drawn_ = 0;
};

}  // namespace jumplab
