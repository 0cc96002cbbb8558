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

#include "latticeprime/area.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "latticeprime/errors.hpp"
#include "latticeprime/kahan.hpp"
#include "latticeprime/parallel.hpp"

namespace latticeprime {

SequencePair::SequencePair(std::vector<double> r, std::vector<double> h)
    : r_(std::move(r)), h_(std::move(h)) {
  if (r_.empty() || r_.size() != h_.size()) {
    throw ArgumentError("SequencePair: sequences must be nonempty and equal length");
  }
  double sum_r = 0.0;
  double sum_h = 0.0;
  double norms = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    sum_r += r_[i];
    sum_h += h_[i];
    norms += std::hypot(r_[i], h_[i]);
  }
  const double joint = std::hypot(sum_r, sum_h);
  admissible_ = std::abs(joint - norms) <= 1e-12 * std::max(1.0, norms);
}

double TriangleIdentityCheck::residual() const { return std::abs(lhs - rhs); }

TriangleIdentityCheck verify_triangle_identity(const SequencePair& s) {
  if (!s.admissible()) {
    throw AdmissibilityError("verify_triangle_identity: sequence pair is not admissible");
  }
  const std::vector<double>& r = s.r();
  const std::vector<double>& h = s.h();
  const std::size_t n = r.size();

  TriangleIdentityCheck check;
  double abs_terms = 0.0;

  // 0-based index j here is position j+1 of the statement.
  double lhs = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    lhs += r[j] * h[j];
    abs_terms += std::abs(r[j] * h[j]);
  }

  double rhs = 0.0;
  double prefix = r[0];  // Sum_{i <= j-1} r_i on entry to iteration j
  for (std::size_t j = 1; j < n; ++j) {
    const double through_j = prefix + r[j];
    const double term = h[j] * (through_j + prefix);
    rhs += term;
    abs_terms += std::abs(term);
    prefix = through_j;
  }

  // tail[j] = Sum h[j+1 .. n-1], accumulated from the right.
  std::vector<double> tail(n, 0.0);
  for (std::size_t j = n - 1; j-- > 0;) tail[j] = tail[j + 1] + h[j + 1];
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double term = 2.0 * r[j] * tail[j];
    rhs -= term;
    abs_terms += std::abs(term);
  }

  check.lhs = lhs;
  check.rhs = rhs;
  check.scale = std::max(1.0, abs_terms);
  return check;
}

DecompositionCheck verify_decomposition(
    const std::function<std::int64_t(std::uint64_t)>& f, std::uint64_t x) {
  if (x < 2) throw ArgumentError("verify_decomposition: x must be >= 2");
  namespace mp = boost::multiprecision;

  // f is sampled once; both sides then run their own literal loops.
  std::vector<mp::cpp_int> vals(x + 1);
  for (std::uint64_t n = 1; n <= x; ++n) vals[n] = f(n);

  DecompositionCheck check;
  for (std::uint64_t n = 1; n + 1 <= x; ++n) {
    for (std::uint64_t j = 1; j <= x - n; ++j) check.lhs += vals[n] * vals[n + j];
  }

  mp::cpp_int prefix = 0;  // Sum_{m <= n-1} f(m)
  for (std::uint64_t n = 2; n <= x; ++n) {
    prefix += vals[n - 1];
    check.rhs += vals[n] * prefix;
  }
  return check;
}

namespace {

// Calls fn(n, f(n)) for every n in [lo, hi] with f(n) != 0, ascending.
// idx must be non-null for the lambda weight.
template <typename Fn>
void scan_support(const PrimeTable& t, const PrimePowerIndex* idx, Weight w,
                  std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
  if (w == Weight::theta) {
    t.for_each_prime(lo, hi, [&](std::uint64_t p) {
      fn(p, std::log(static_cast<double>(p)));
    });
  } else {
    idx->for_each_prime_power(lo, hi, [&](std::uint64_t n, double log_p, bool) {
      fn(n, log_p);
    });
  }
}

double point_weight(const PrimeTable& t, const PrimePowerIndex* idx, Weight w,
                    std::uint64_t n) {
  if (w == Weight::theta) {
    return t.is_prime_unchecked(n) ? std::log(static_cast<double>(n)) : 0.0;
  }
  return idx->lambda_of(n);
}

}  // namespace

CorrelationLedger correlate(const PrimeTable& t, std::uint64_t x,
                            std::uint64_t z, Weight w) {
  if (x < 1) throw ArgumentError("correlate: x must be >= 1");
  if (z < 1) throw ArgumentError("correlate: gap must be >= 1");
  if (x > t.bound() || z > t.bound() - x) {
    throw BoundError("correlate: x + z exceeds table bound");
  }

  std::optional<PrimePowerIndex> idx;
  if (w == Weight::lambda) idx.emplace(t);
  const PrimePowerIndex* ip = idx ? &*idx : nullptr;

  KahanSum corr;
  KahanSum bilinear;
  KahanSum running;  // Sum of f over the support seen so far
  scan_support(t, ip, w, 1, x, [&](std::uint64_t n, double fn) {
    const double shifted = point_weight(t, ip, w, n + z);
    if (shifted != 0.0) corr.add(fn * shifted);
    bilinear.add(fn * running.value());  // prefix excludes n itself
    running.add(fn);
  });
  const double total = running.value();

  KahanSum full_double;
  KahanSum through;  // Sum of f over m <= n, inclusive
  scan_support(t, ip, w, 1, x, [&](std::uint64_t n, double fn) {
    through.add(fn);
    if (n <= x - 1) full_double.add(fn * (total - through.value()));
  });

  CorrelationLedger led;
  led.x = x;
  led.z = z;
  led.corr = corr.value();
  led.bilinear = bilinear.value();
  led.full_double = full_double.value();
  led.weight_name = weight_name(w);
  return led;
}

CorrelationLedger correlate_custom(std::uint64_t x, std::uint64_t z,
                                   const std::function<double(std::uint64_t)>& f,
                                   std::string_view name) {
  if (x < 1) throw ArgumentError("correlate_custom: x must be >= 1");
  if (z < 1) throw ArgumentError("correlate_custom: gap must be >= 1");

  std::vector<double> vals(x + z + 1, 0.0);
  for (std::uint64_t n = 1; n <= x + z; ++n) vals[n] = f(n);

  KahanSum corr;
  KahanSum bilinear;
  KahanSum running;
  for (std::uint64_t n = 1; n <= x; ++n) {
    corr.add(vals[n] * vals[n + z]);
    bilinear.add(vals[n] * running.value());
    running.add(vals[n]);
  }
  const double total = running.value();

  KahanSum full_double;
  KahanSum through;
  for (std::uint64_t n = 1; n + 1 <= x; ++n) {
    through.add(vals[n]);
    full_double.add(vals[n] * (total - through.value()));
  }

  CorrelationLedger led;
  led.x = x;
  led.z = z;
  led.corr = corr.value();
  led.bilinear = bilinear.value();
  led.full_double = full_double.value();
  led.weight_name = std::string(name);
  return led;
}

double psi_z(const PrimeTable& t, std::uint64_t x, std::uint64_t z,
             unsigned workers) {
  if (z < 1) throw ArgumentError("psi_z: gap must be >= 1");
  if (x > t.bound() || z > t.bound() - x) {
    throw BoundError("psi_z: x + z exceeds table bound");
  }
  if (x < 2) return 0.0;

  const PrimePowerIndex idx(t);
  // Half-open chunk ranges over n in [2, x]; one partial sum per chunk,
  // folded in index order for worker-count independence.
  const std::vector<double> parts = map_chunks<double>(
      2, x + 1, kSumChunk, workers, [&](std::uint64_t clo, std::uint64_t chi) {
        KahanSum local;
        idx.for_each_prime_power(clo, chi - 1,
                                 [&](std::uint64_t n, double log_p, bool) {
                                   const double other = idx.lambda_of(n + z);
                                   if (other != 0.0) local.add(log_p * other);
                                 });
        return local.value();
      });
  KahanSum total;
  for (double p : parts) total.add(p);
  return total.value();
}

double empirical_area_constant(const CorrelationLedger& led) {
  if (!(led.corr > 0.0)) {
    throw HypothesisError("empirical_area_constant: correlation sum is not positive");
  }
  return led.bilinear / (static_cast<double>(led.x) * led.corr);
}

double empirical_area_constant(const PrimeTable& t, std::uint64_t x,
                               std::uint64_t z, Weight w) {
  return empirical_area_constant(correlate(t, x, z, w));
}

SingularSeries singular_series(std::uint64_t z, std::uint64_t P) {
  if (z == 0 || (z & 1) != 0) {
    throw ArgumentError("singular_series: gap must be even and positive");
  }
  if (P < 100) throw ArgumentError("singular_series: cutoff must be >= 100");

  // Plain odd-only sieve; flags[i] marks 3 + 2i composite.
  const std::uint64_t odd_count = (P - 1) / 2;
  std::vector<std::uint8_t> composite(odd_count, 0);
  for (std::uint64_t p = 3; p * p <= P; p += 2) {
    if (composite[(p - 3) / 2]) continue;
    for (std::uint64_t m = p * p; m <= P; m += 2 * p) composite[(m - 3) / 2] = 1;
  }

  double partial = 1.0;
  for (std::uint64_t i = 0; i < odd_count; ++i) {
    if (composite[i]) continue;
    const double pm1 = static_cast<double>(3 + 2 * i) - 1.0;
    partial *= 1.0 - 1.0 / (pm1 * pm1);
  }

  // Correction over the distinct odd primes dividing z, independent of P.
  double correction = 1.0;
  std::uint64_t rest = z;
  while ((rest & 1) == 0) rest >>= 1;
  for (std::uint64_t p = 3; p * p <= rest; p += 2) {
    if (rest % p != 0) continue;
    correction *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) {
    correction *= static_cast<double>(rest - 1) / static_cast<double>(rest - 2);
  }

  SingularSeries s;
  s.z = z;
  s.cutoff = P;
  s.pi2_partial = partial;
  s.value = 2.0 * partial * correction;
  return s;
}

BrunReport brun_check(const PrimeTable& t, std::uint64_t z,
                      std::span<const std::uint64_t> xs,
                      std::uint64_t hl_cutoff) {
  if (z == 0) throw ArgumentError("brun_check: gap must be >= 1");
  BrunReport rep;
  rep.z = z;
  rep.hl_value = (z % 2 == 0) ? singular_series(z, hl_cutoff).value
                              : std::numeric_limits<double>::quiet_NaN();
  rep.points.reserve(xs.size());
  for (const std::uint64_t x : xs) {
    if (x < 100) throw ArgumentError("brun_check: every grid point must be >= 100");
    if (x > t.bound()) throw BoundError("brun_check: grid point exceeds table bound");
    const std::uint64_t count = prime_pair_count(z, x, t);
    const double log_x = std::log(static_cast<double>(x));
    rep.points.push_back(
        {x, count, static_cast<double>(count) * log_x * log_x / static_cast<double>(x)});
  }
  return rep;
}

BrunReport brun_check(const PrimeTable& t, std::uint64_t z, std::uint64_t x,
                      std::uint64_t hl_cutoff) {
  if (x < 100) throw ArgumentError("brun_check: x must be >= 100");
  std::vector<std::uint64_t> grid;
  for (std::uint64_t g = 100; g <= x; g *= 10) grid.push_back(g);
  if (grid.back() != x) grid.push_back(x);
  return brun_check(t, z, std::span<const std::uint64_t>(grid), hl_cutoff);
}

}  // namespace latticeprime
