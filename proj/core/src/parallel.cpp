// Copyright 2026 The latticeprime authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "latticeprime/parallel.hpp"

#include <atomic>
#include <thread>

namespace latticeprime {

unsigned effective_workers(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void for_each_chunk(std::uint64_t lo, std::uint64_t hi, std::uint64_t chunk,
                    unsigned workers,
                    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& body) {
  if (hi <= lo || chunk == 0) return;
  const std::size_t nchunks = static_cast<std::size_t>((hi - lo + chunk - 1) / chunk);
  workers = effective_workers(workers);
  if (workers > nchunks) workers = static_cast<unsigned>(nchunks);

  auto run = [&](std::size_t idx) {
    const std::uint64_t clo = lo + static_cast<std::uint64_t>(idx) * chunk;
    const std::uint64_t chi = (hi - clo < chunk) ? hi : clo + chunk;
    body(idx, clo, chi);
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < nchunks; ++i) run(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
        if (idx >= nchunks) return;
        run(idx);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace latticeprime
