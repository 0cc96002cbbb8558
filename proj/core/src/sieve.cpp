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

#include "latticeprime/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>

#include "latticeprime/kahan.hpp"
#include "latticeprime/parallel.hpp"

namespace latticeprime {

namespace {

constexpr char kCacheMagic[4] = {'L', 'P', 'R', 'B'};
constexpr std::uint32_t kCacheVersion = 1;

std::uint64_t isqrt64(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

// floor(n^(1/k)) for k >= 2, exact.
std::uint64_t kth_root(std::uint64_t n, unsigned k) {
  if (n == 0) return 0;
  std::uint64_t r = static_cast<std::uint64_t>(
      std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k)));
  auto pow_leq = [&](std::uint64_t base) {
    // true iff base^k <= n, with overflow-safe stepping
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= base;
      if (acc > n) return false;
    }
    return true;
  };
  while (r > 0 && !pow_leq(r)) --r;
  while (pow_leq(r + 1)) ++r;
  return r;
}

// Odd primes <= limit by a plain sieve; used for base primes and never for
// anything bigger than sqrt(kMaxBound).
std::vector<std::uint64_t> base_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 3) return out;
  std::vector<std::uint8_t> comp((limit + 1) / 2, 0);  // index i <-> 2i+1, i >= 1
  for (std::uint64_t n = 3; n * n <= limit; n += 2) {
    if (comp[n >> 1]) continue;
    for (std::uint64_t m = n * n; m <= limit; m += 2 * n) comp[m >> 1] = 1;
  }
  for (std::uint64_t n = 3; n <= limit; n += 2) {
    if (!comp[n >> 1]) out.push_back(n);
  }
  return out;
}

}  // namespace

const char* weight_name(Weight w) {
  return w == Weight::theta ? "theta" : "lambda";
}

std::uint64_t PrimeTable::count_primes_upto(std::uint64_t x) const {
  if (x > bound_) throw BoundError("count_primes_upto: x exceeds table bound");
  if (x < 2) return 0;
  if (x < 3) return 1;
  std::uint64_t count = 1;  // the prime 2
  const std::uint64_t j1 = (x - ((x & 1) ? 3 : 4)) >> 1;
  const std::uint64_t w1 = j1 >> 6;
  for (std::uint64_t w = 0; w < w1; ++w) count += std::popcount(words_[w]);
  std::uint64_t last = words_[w1];
  const unsigned top = static_cast<unsigned>(j1 & 63);
  if (top != 63) last &= (std::uint64_t{1} << (top + 1)) - 1;
  count += std::popcount(last);
  return count;
}

PrimeTable build_table(std::uint64_t bound, const SieveOptions& opts) {
  if (bound < PrimeTable::kMinBound || bound > PrimeTable::kMaxBound) {
    throw BoundError("build_table: bound must lie in [2, 2^34]");
  }

  PrimeTable t;
  t.bound_ = bound;
  const std::uint64_t nbits = bound >= 3 ? (bound - 3) / 2 + 1 : 0;  // odds in [3, bound]
  const std::uint64_t nwords = (nbits + 63) / 64;
  t.words_.assign(nwords, ~std::uint64_t{0});

  std::uint64_t segment = opts.segment_odds == 0 ? (std::uint64_t{1} << 20)
                                                 : opts.segment_odds;
  segment = (segment + 63) & ~std::uint64_t{63};  // whole words per segment

  const std::vector<std::uint64_t> bases = base_primes(isqrt64(bound));

  // Each chunk owns the bit range [clo, chi) in odd-index space; indices are
  // word aligned, so writes from different workers never share a word.
  for_each_chunk(0, nbits, segment, opts.workers,
                 [&](std::size_t, std::uint64_t clo, std::uint64_t chi) {
                   const std::uint64_t lo_n = 3 + 2 * clo;       // first odd in segment
                   const std::uint64_t hi_n = 3 + 2 * (chi - 1);  // last odd in segment
                   for (std::uint64_t p : bases) {
                     if (p * p > hi_n) break;
                     std::uint64_t start = p * p;
                     if (start < lo_n) {
                       std::uint64_t m = (lo_n + p - 1) / p;  // first multiple >= lo_n
                       if ((m & 1) == 0) ++m;                  // odd multiples only
                       start = m * p;
                     }
                     for (std::uint64_t n = start; n <= hi_n; n += 2 * p) {
                       const std::uint64_t j = (n - 3) >> 1;
                       t.words_[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
                     }
                   }
                 });

  // 1 is not prime: bit 0 corresponds to 3, so nothing to clear below 3.
  // Zero the padding bits past nbits so equal bounds give equal words.
  if (nbits % 64 != 0 && nwords > 0) {
    t.words_[nwords - 1] &= (std::uint64_t{1} << (nbits % 64)) - 1;
  }

  std::uint64_t count = bound >= 2 ? 1 : 0;
  for (std::uint64_t w : t.words_) count += std::popcount(w);
  t.prime_count_ = count;
  return t;
}

double theta(std::uint64_t n, const PrimeTable& t) {
  if (n < 1 || n > t.bound()) throw BoundError("theta: n outside [1, bound]");
  return t.is_prime_unchecked(n) ? std::log(static_cast<double>(n)) : 0.0;
}

double lambda(std::uint64_t n, const PrimeTable& t) {
  if (n < 1 || n > t.bound()) throw BoundError("lambda: n outside [1, bound]");
  if (n < 2) return 0.0;
  if (t.is_prime_unchecked(n)) return std::log(static_cast<double>(n));
  // n = p^k with k >= 2 exactly when the k-th root is a prime hit.
  for (unsigned k = 2; (std::uint64_t{1} << k) <= n; ++k) {
    const std::uint64_t r = kth_root(n, k);
    if (r < 2) break;
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) acc *= r;
    if (acc == n && t.is_prime_unchecked(r)) return std::log(static_cast<double>(r));
  }
  return 0.0;
}

double chebyshev_theta_sum(std::uint64_t x, const PrimeTable& t) {
  if (x < 2 || x > t.bound()) throw BoundError("chebyshev_theta_sum: x outside [2, bound]");
  // Per-chunk plain sums merged in index order through one compensated
  // accumulator: identical output for every worker count.
  auto partials = map_chunks<double>(
      2, x + 1, kSumChunk, 1 /* cheap enough serial */,
      [&](std::uint64_t lo, std::uint64_t hi) {
        KahanSum s;
        t.for_each_prime(lo, hi - 1, [&](std::uint64_t p) {
          s.add(std::log(static_cast<double>(p)));
        });
        return s.value();
      });
  KahanSum total;
  for (double v : partials) total.add(v);
  return total.value();
}

std::vector<PrimePair> prime_pairs(std::uint64_t z, std::uint64_t x, const PrimeTable& t) {
  if (z < 1) throw ArgumentError("prime_pairs: gap must be >= 1");
  if (x > t.bound()) throw BoundError("prime_pairs: x exceeds table bound");
  std::vector<PrimePair> out;
  if (x < 2 + z) return out;
  t.for_each_prime(2, x - z, [&](std::uint64_t p) {
    if (t.is_prime_unchecked(p + z)) out.push_back({p, p + z, z});
  });
  return out;
}

std::uint64_t prime_pair_count(std::uint64_t z, std::uint64_t x, const PrimeTable& t) {
  if (z < 1) throw ArgumentError("prime_pair_count: gap must be >= 1");
  if (x > t.bound()) throw BoundError("prime_pair_count: x exceeds table bound");
  if (x < 2 + z) return 0;
  std::uint64_t count = 0;
  t.for_each_prime(2, x - z, [&](std::uint64_t p) {
    if (t.is_prime_unchecked(p + z)) ++count;
  });
  return count;
}

std::uint64_t unordered_prime_pair_count(std::uint64_t x, const PrimeTable& t) {
  const std::uint64_t pi = t.count_primes_upto(x);
  return pi * (pi - 1) / 2;
}

PrimePowerIndex::PrimePowerIndex(const PrimeTable& t) : table_(&t) {
  const std::uint64_t bound = t.bound();
  t.for_each_prime(2, isqrt64(bound), [&](std::uint64_t p) {
    const double logp = std::log(static_cast<double>(p));
    for (unsigned __int128 v = static_cast<unsigned __int128>(p) * p; v <= bound; v *= p) {
      higher_.emplace_back(static_cast<std::uint64_t>(v), logp);
    }
  });
  std::sort(higher_.begin(), higher_.end());
}

double PrimePowerIndex::lambda_of(std::uint64_t n) const {
  if (n < 2) return 0.0;
  if (table_->is_prime_unchecked(n)) return std::log(static_cast<double>(n));
  auto it = std::lower_bound(higher_.begin(), higher_.end(), n,
                             [](const auto& e, std::uint64_t v) { return e.first < v; });
  if (it != higher_.end() && it->first == n) return it->second;
  return 0.0;
}

void save_table(const PrimeTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("save_table: cannot open " + path);

  std::array<unsigned char, 16> header{};
  std::memcpy(header.data(), kCacheMagic, 4);
  for (int i = 0; i < 4; ++i) header[4 + i] = (kCacheVersion >> (8 * i)) & 0xff;
  for (int i = 0; i < 8; ++i) header[8 + i] = (t.bound() >> (8 * i)) & 0xff;
  out.write(reinterpret_cast<const char*>(header.data()), header.size());

  std::vector<unsigned char> buf(8);
  for (std::uint64_t w : t.words()) {
    for (int i = 0; i < 8; ++i) buf[i] = (w >> (8 * i)) & 0xff;
    out.write(reinterpret_cast<const char*>(buf.data()), 8);
  }
  if (!out) throw ArgumentError("save_table: write failed for " + path);
}

PrimeTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("load_table: cannot open " + path);

  std::array<unsigned char, 16> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in.gcount() != 16 || std::memcmp(header.data(), kCacheMagic, 4) != 0) {
    throw ArgumentError("load_table: bad magic in " + path);
  }
  std::uint32_t version = 0;
  for (int i = 0; i < 4; ++i) version |= std::uint32_t{header[4 + i]} << (8 * i);
  if (version != kCacheVersion) throw ArgumentError("load_table: unsupported version");
  std::uint64_t bound = 0;
  for (int i = 0; i < 8; ++i) bound |= std::uint64_t{header[8 + i]} << (8 * i);
  if (bound < PrimeTable::kMinBound || bound > PrimeTable::kMaxBound) {
    throw ArgumentError("load_table: bound out of range");
  }

  const std::uint64_t nbits = bound >= 3 ? (bound - 3) / 2 + 1 : 0;
  const std::uint64_t nwords = (nbits + 63) / 64;

  PrimeTable t;
  t.bound_ = bound;
  t.words_.resize(nwords);
  std::vector<unsigned char> buf(8);
  for (std::uint64_t w = 0; w < nwords; ++w) {
    in.read(reinterpret_cast<char*>(buf.data()), 8);
    if (in.gcount() != 8) throw ArgumentError("load_table: truncated file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
    t.words_[w] = v;
  }
  if (in.peek() != std::ifstream::traits_type::eof()) {
    throw ArgumentError("load_table: trailing bytes");
  }
  if (nbits % 64 != 0 && nwords > 0) {
    const std::uint64_t pad = t.words_[nwords - 1] & ~((std::uint64_t{1} << (nbits % 64)) - 1);
    if (pad != 0) throw ArgumentError("load_table: nonzero padding bits");
  }

  std::uint64_t count = bound >= 2 ? 1 : 0;
  for (std::uint64_t w : t.words_) count += std::popcount(w);
  t.prime_count_ = count;
  return t;
}

}  // namespace latticeprime
