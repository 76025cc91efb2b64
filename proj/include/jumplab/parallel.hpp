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

// Fan-out over independent work items with an in-order reduction. Items are
// grouped into fixed-size chunks; chunk results are handed to `consume` on
// the calling thread in chunk order, so every reduction sees the same
// sequence of operands whatever the number of workers.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace jumplab {

/// Worker count from JUMPLAB_THREADS (if set and positive), capped by it;
/// otherwise the hardware concurrency. Always at least 1.
int default_worker_count();

/// produce(begin, end) -> Chunk runs on worker threads; consume(Chunk&&)
/// runs on the caller in order. An exception from produce is rethrown on
/// the caller after earlier chunks have been consumed.
template <class Produce, class Consume>
void ordered_parallel(std::uint64_t count, int workers, std::uint64_t chunk_size,
                      Produce produce, Consume consume) {
  using Chunk = decltype(produce(std::uint64_t{}, std::uint64_t{}));
  const std::uint64_t chunks = (count + chunk_size - 1) / chunk_size;
  workers = std::max(1, workers);
  // A batch keeps a few chunks per worker in flight and bounds memory use.
  const std::uint64_t batch = static_cast<std::uint64_t>(workers) * 4;
  for (std::uint64_t first = 0; first < chunks; first += batch) {
    const std::uint64_t last = std::min(chunks, first + batch);
    std::vector<std::optional<Chunk>> results(last - first);
    std::vector<std::exception_ptr> errors(last - first);
    std::atomic<std::uint64_t> next{first};
    auto work = [&] {
      for (std::uint64_t c = next++; c < last; c = next++) {
        const std::uint64_t b = c * chunk_size;
        const std::uint64_t e = std::min(count, b + chunk_size);
        try {
          results[c - first].emplace(produce(b, e));
        } catch (...) {
          errors[c - first] = std::current_exception();
        }
      }
    };
    const int spawn = static_cast<int>(std::min<std::uint64_t>(workers, last - first)) - 1;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(std::max(0, spawn)));
    for (int w = 0; w < spawn; ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    for (std::uint64_t c = 0; c < last - first; ++c) {
      if (errors[c]) std::rethrow_exception(errors[c]);
      consume(std::move(*results[c]));
    }
  }
}

}  // namespace jumplab
