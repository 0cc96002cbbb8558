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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace latticeprime {

// Chunk width used by the summation kernels. Fixed so that floating-point
// merge order, and therefore every emitted number, does not depend on the
// worker count.
inline constexpr std::uint64_t kSumChunk = std::uint64_t{1} << 20;

// Maps 0 to the hardware thread count; result is always >= 1.
unsigned effective_workers(unsigned requested);

// Splits [lo, hi) into consecutive chunks of width `chunk` (the last one may
// be short) and runs body(chunk_index, chunk_lo, chunk_hi) on up to `workers`
// threads. Chunk boundaries depend only on `chunk`; callers that store one
// result slot per chunk and fold the slots in index order get output that is
// identical for every worker count.
void for_each_chunk(std::uint64_t lo, std::uint64_t hi, std::uint64_t chunk,
                    unsigned workers,
                    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& body);

// Convenience wrapper: computes fn(chunk_lo, chunk_hi) -> R per chunk and
// returns the results indexed by chunk, ready for an ordered fold.
template <typename R, typename Fn>
std::vector<R> map_chunks(std::uint64_t lo, std::uint64_t hi, std::uint64_t chunk,
                          unsigned workers, Fn&& fn) {
  std::size_t n = 0;
  if (hi > lo) n = static_cast<std::size_t>((hi - lo + chunk - 1) / chunk);
  std::vector<R> out(n);
  for_each_chunk(lo, hi, chunk, workers,
                 [&](std::size_t idx, std::uint64_t clo, std::uint64_t chi) {
                   out[idx] = fn(clo, chi);
                 });
  return out;
}

}  // namespace latticeprime
