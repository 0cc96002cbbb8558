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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>

#include "latticeprime/area.hpp"
#include "latticeprime/characters.hpp"
#include "latticeprime/equidist.hpp"
#include "latticeprime/residues.hpp"
#include "latticeprime/sieve.hpp"

namespace lp = latticeprime;

namespace {

const lp::PrimeTable& shared_table() {
  static const lp::PrimeTable table = lp::build_table(10'000'000 + 8);
  return table;
}

void BM_BuildTable(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    lp::PrimeTable table = lp::build_table(bound);
    benchmark::DoNotOptimize(table.count_primes_upto(bound));
  }
}
BENCHMARK(BM_BuildTable)->Arg(1'000'000)->Arg(10'000'000)
    ->Unit(benchmark::kMillisecond);

void BM_PsiZ(benchmark::State& state) {
  const lp::PrimeTable& table = shared_table();
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::psi_z(table, x, 2));
  }
}
BENCHMARK(BM_PsiZ)->Arg(1'000'000)->Arg(10'000'000 - 8)
    ->Unit(benchmark::kMillisecond);

void BM_BucketPairs(benchmark::State& state) {
  const lp::PrimeTable& table = shared_table();
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    lp::ClassCounts counts = lp::bucket_pairs(table, 2, 5, x);
    benchmark::DoNotOptimize(counts.raw_total);
  }
}
BENCHMARK(BM_BucketPairs)->Arg(1'000'000)->Arg(10'000'000 - 8)
    ->Unit(benchmark::kMillisecond);

void BM_PsiChi(benchmark::State& state) {
  const lp::PrimeTable& table = shared_table();
  const auto q = static_cast<std::uint64_t>(state.range(0));
  const std::vector<lp::Character> chars = lp::characters(lp::make_modulus(q));
  const lp::Character& chi = chars.size() > 1 ? chars[1] : chars[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp::psi_chi(table, 1'000'000, chi));
  }
}
BENCHMARK(BM_PsiChi)->Arg(5)->Arg(12)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_CharacterTable(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    std::vector<lp::Character> chars = lp::characters(lp::make_modulus(q));
    benchmark::DoNotOptimize(chars.size());
  }
}
BENCHMARK(BM_CharacterTable)->Arg(100)->Arg(1'000)->Arg(10'000);

}  // namespace

BENCHMARK_MAIN();
