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

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "latticeprime/errors.hpp"

namespace latticeprime {

// Weight function on the integers used by the correlation sums:
//   theta(n)  = log n  when n is prime, 0 otherwise
//   lambda(n) = log p  when n = p^k for a prime p and k >= 1, 0 otherwise
enum class Weight { theta, lambda };

const char* weight_name(Weight w);

struct SieveOptions {
  // Odd numbers covered per segment; rounded up to a multiple of 64 so that
  // segments own whole 64-bit words and parallel workers never touch the
  // same word. One segment of the default size is a 128 KiB bit block.
  std::uint64_t segment_odds = std::uint64_t{1} << 20;
  // 0 selects the hardware thread count.
  unsigned workers = 0;
};

// Primality table over [2, bound].
//
// Encoding: one bit per odd number. Bit j of the word array (bit j % 64 of
// word j / 64) corresponds to the odd number n = 3 + 2j and is set exactly
// when n is prime. The even prime 2 is handled implicitly. Word count is
// ceil(B / 64) with B = number of odds in [3, bound]; bits at positions
// >= B are always zero, so two tables with equal bounds compare equal as
// word vectors.
class PrimeTable {
 public:
  static constexpr std::uint64_t kMinBound = 2;
  // Documented ceiling: 2^34 (~1.7e10) keeps the bitmap around 1 GiB.
  static constexpr std::uint64_t kMaxBound = std::uint64_t{1} << 34;

  std::uint64_t bound() const { return bound_; }

  // pi(bound), cached at construction.
  std::uint64_t prime_count() const { return prime_count_; }

  // Requires 0 <= n <= bound; throws BoundError above the table.
  bool is_prime(std::uint64_t n) const {
    if (n > bound_) throw BoundError("is_prime: n exceeds table bound");
    return is_prime_unchecked(n);
  }

  // pi(x) for x <= bound.
  std::uint64_t count_primes_upto(std::uint64_t x) const;

  // Calls fn(p) for every prime p in [lo, hi], ascending. hi must be <= bound.
  template <typename Fn>
  void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend PrimeTable build_table(std::uint64_t bound, const SieveOptions& opts);
  friend PrimeTable load_table(const std::string& path);

  bool is_prime_unchecked(std::uint64_t n) const {
    if (n < 3) return n == 2;
    if ((n & 1) == 0) return false;
    const std::uint64_t j = (n - 3) >> 1;
    return (words_[j >> 6] >> (j & 63)) & 1;
  }

 private:
  PrimeTable() = default;

  std::uint64_t bound_ = 0;
  std::uint64_t prime_count_ = 0;
  std::vector<std::uint64_t> words_;
};

// Segmented sieve of Eratosthenes over the odd numbers.
// Throws BoundError unless kMinBound <= bound <= kMaxBound.
// The resulting bits are identical for every segment size and worker count.
PrimeTable build_table(std::uint64_t bound, const SieveOptions& opts = {});

// theta(n): log n on primes, 0 elsewhere. Requires 1 <= n <= t.bound().
double theta(std::uint64_t n, const PrimeTable& t);

// lambda(n): log p on prime powers p^k, 0 elsewhere. Requires 1 <= n <= t.bound().
double lambda(std::uint64_t n, const PrimeTable& t);

// Compensated sum of theta(n) over n <= x. Requires 2 <= x <= t.bound().
double chebyshev_theta_sum(std::uint64_t x, const PrimeTable& t);

// A prime pair (lo, lo + gap) with both entries prime.
struct PrimePair {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t gap = 0;
};

// All pairs (p, p + z) with p and p + z prime and p + z <= x, ascending in p.
// Both entries obey the cutoff x. Requires z >= 1 and x <= t.bound().
std::vector<PrimePair> prime_pairs(std::uint64_t z, std::uint64_t x, const PrimeTable& t);

// Size of prime_pairs(z, x, t) without materializing the list.
std::uint64_t prime_pair_count(std::uint64_t z, std::uint64_t x, const PrimeTable& t);

// Number of unordered pairs of distinct primes both <= x: C(pi(x), 2).
// Distinct from prime_pair_count, which fixes the gap; the two counters are
// never interchangeable.
std::uint64_t unordered_prime_pair_count(std::uint64_t x, const PrimeTable& t);

// Sorted index of the higher prime powers p^k, k >= 2, up to t.bound().
// Primes come straight from the table, so lambda lookups cost a bit test in
// the common case and a binary search over the (small) higher-power list
// otherwise.
class PrimePowerIndex {
 public:
  explicit PrimePowerIndex(const PrimeTable& t);

  const PrimeTable& table() const { return *table_; }

  // lambda(n) without the per-call bound exception; requires n <= bound.
  double lambda_of(std::uint64_t n) const;

  // Calls fn(n, log_p, is_prime) for every prime power n in [lo, hi],
  // ascending. hi must be <= bound.
  template <typename Fn>
  void for_each_prime_power(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const;

  const std::vector<std::pair<std::uint64_t, double>>& higher_powers() const {
    return higher_;
  }

 private:
  const PrimeTable* table_;
  std::vector<std::pair<std::uint64_t, double>> higher_;  // (p^k, log p), k >= 2
};

// On-disk cache of the primality bitmap. Layout (all little endian):
//   bytes  0..3   magic "LPRB"
//   bytes  4..7   u32 format version (currently 1)
//   bytes  8..15  u64 bound
//   bytes 16..    the word array of the table, 8 bytes per word
// The word count must match the bound exactly and trailing padding bits must
// be zero; load_table rejects anything else with ArgumentError.
void save_table(const PrimeTable& t, const std::string& path);
PrimeTable load_table(const std::string& path);

// ---------------------------------------------------------------------------
// template bodies

template <typename Fn>
void PrimeTable::for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn) const {
  if (hi > bound_) throw BoundError("for_each_prime: hi exceeds table bound");
  if (lo < 2) lo = 2;
  if (lo > hi) return;
  if (lo == 2) fn(std::uint64_t{2});

  std::uint64_t start = lo < 3 ? 3 : lo | 1;
  if (start > hi || hi < 3) return;
  const std::uint64_t j0 = (start - 3) >> 1;
  const std::uint64_t j1 = (hi - ((hi & 1) ? 3 : 4)) >> 1;  // last odd <= hi

  const std::uint64_t w0 = j0 >> 6;
  const std::uint64_t w1 = j1 >> 6;
  for (std::uint64_t w = w0; w <= w1; ++w) {
    std::uint64_t word = words_[w];
    if (w == w0) word &= ~std::uint64_t{0} << (j0 & 63);
    if (w == w1) {
      const unsigned top = static_cast<unsigned>(j1 & 63);
      if (top != 63) word &= (std::uint64_t{1} << (top + 1)) - 1;
    }
    while (word) {
      const unsigned b = static_cast<unsigned>(std::countr_zero(word));
      word &= word - 1;
      fn(3 + 2 * ((w << 6) + b));
    }
  }
}

template <typename Fn>
void PrimePowerIndex::for_each_prime_power(std::uint64_t lo, std::uint64_t hi,
                                           Fn&& fn) const {
  std::size_t idx = 0;
  while (idx < higher_.size() && higher_[idx].first < lo) ++idx;

  table_->for_each_prime(lo, hi, [&](std::uint64_t p) {
    while (idx < higher_.size() && higher_[idx].first < p) {
      if (higher_[idx].first <= hi) fn(higher_[idx].first, higher_[idx].second, false);
      ++idx;
    }
    fn(p, std::log(static_cast<double>(p)), true);
  });

  while (idx < higher_.size() && higher_[idx].first <= hi) {
    fn(higher_[idx].first, higher_[idx].second, false);
    ++idx;
  }
}

}  // namespace latticeprime
