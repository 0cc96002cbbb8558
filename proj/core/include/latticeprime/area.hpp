// Copyright 2026 The latticeprime authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

// Summation identities and correlation sums over prime weights.
//
// This module has three layers:
//   * exact identities on finite sequences (triangle rearrangement,
//     double-sum decomposition), checkable to zero or rounding error;
//   * correlation ledgers Sum f(n) f(n+z) together with the bilinear
//     and full double sums they decompose into;
//   * classical constants (twin-prime partial product, gap-corrected
//     singular values) and empirical ratio reports against them.

#ifndef LATTICEPRIME_AREA_HPP_
#define LATTICEPRIME_AREA_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latticeprime/sieve.hpp"

namespace latticeprime {

// A pair of equal-length real sequences (r_j, h_j), j = 1..n, viewed as
// plane vectors v_j = (r_j, h_j). The pair is admissible when the norm of
// the vector sum equals the sum of the norms within 1e-12 relative, which
// holds exactly when every v_j lies on one common ray from the origin.
class SequencePair {
 public:
  // Throws ArgumentError if the sequences are empty or differ in length.
  SequencePair(std::vector<double> r, std::vector<double> h);

  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& h() const { return h_; }
  std::size_t size() const { return r_.size(); }

  // Norm additivity: |sqrt((Sum r)^2 + (Sum h)^2) - Sum_j hypot(r_j, h_j)|
  // <= 1e-12 * max(1, Sum_j hypot(r_j, h_j)). Computed at construction.
  bool admissible() const { return admissible_; }

 private:
  std::vector<double> r_;
  std::vector<double> h_;
  bool admissible_ = false;
};

// Both sides of the triangle rearrangement evaluated independently.
struct TriangleIdentityCheck {
  double lhs = 0.0;    // Sum_{j=2}^n r_j h_j
  double rhs = 0.0;    // rearranged form, see verify_triangle_identity
  double scale = 1.0;  // max(1, sum of |term|) across both sides

  double residual() const;
  // Residual within 1e-9 of the term scale.
  bool passes() const { return residual() <= 1e-9 * scale; }
};

// Evaluates both sides of
//   Sum_{j=2}^n r_j h_j
//     = Sum_{j=2}^n h_j (Sum_{i<=j} r_i + Sum_{i<=j-1} r_i)
//       - 2 Sum_{j=1}^{n-1} r_j Sum_{k=1}^{n-j} h_{j+k}
// with two independent literal loops. The rearrangement is an algebraic
// identity for arbitrary reals; admissibility is still required here
// because that is the only regime callers are promised, and throwing on
// inadmissible input catches generator bugs early.
// Throws AdmissibilityError if !s.admissible().
TriangleIdentityCheck verify_triangle_identity(const SequencePair& s);

// Both sides of the double-sum decomposition in exact integers.
struct DecompositionCheck {
  boost::multiprecision::cpp_int lhs;  // Sum_{n<=x-1} Sum_{j<=x-n} f(n)f(n+j)
  boost::multiprecision::cpp_int rhs;  // Sum_{2<=n<=x} f(n) Sum_{m<=n-1} f(m)

  bool equal() const { return lhs == rhs; }
};

// Evaluates the full double sum and the bilinear form of
//   Sum_{n<=x-1} Sum_{j<=x-n} f(n) f(n+j) = Sum_{2<=n<=x} f(n) Sum_{m<n} f(m)
// for an integer-valued f on [1, x], entirely in arbitrary-precision
// integers so equality is exact, never approximate. The left side is the
// literal O(x^2) double loop; the right side accumulates its own prefix.
// Throws ArgumentError if x < 2.
DecompositionCheck verify_decomposition(
    const std::function<std::int64_t(std::uint64_t)>& f, std::uint64_t x);

// Correlation sums of one weight f at shift z, plus the two sides of the
// decomposition identity evaluated in compensated floating point.
//
// Conventions: corr sums over n <= x and reads f(n + z) beyond x; the
// bilinear and full double sums involve f on [1, x] only.
struct CorrelationLedger {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  double corr = 0.0;         // Sum_{n<=x} f(n) f(n+z)
  double bilinear = 0.0;     // Sum_{2<=n<=x} f(n) Sum_{m<=n-1} f(m)
  double full_double = 0.0;  // Sum_{n<=x-1} Sum_{j<=x-n} f(n) f(n+j)
  std::string weight_name;
};

// Builds the ledger for f = theta or Lambda from a sieve table.
// Requires x >= 1 and x + z <= t.bound(); throws BoundError otherwise.
CorrelationLedger correlate(const PrimeTable& t, std::uint64_t x,
                            std::uint64_t z, Weight w);

// Ledger for an arbitrary dense weight; f is evaluated on [1, x + z].
// Intended for synthetic test functions, so it loops over every n.
CorrelationLedger correlate_custom(std::uint64_t x, std::uint64_t z,
                                   const std::function<double(std::uint64_t)>& f,
                                   std::string_view name);

// Sum_{n<=x} Lambda(n) Lambda(n+z), compensated. Partitioned into fixed
// kSumChunk ranges merged in index order, so the worker count changes
// timing only, never the emitted value.
// Requires z >= 1 and x + z <= t.bound(); throws BoundError otherwise.
double psi_z(const PrimeTable& t, std::uint64_t x, std::uint64_t z,
             unsigned workers = 0);

// The smallest constant C making bilinear <= C * x * corr tight at this x,
// i.e. C = bilinear / (x * corr). Meaningful only as a trend over a grid
// of x; single values carry no asymptotic content.
// Throws HypothesisError when corr <= 0 (the ratio's hypothesis fails).
double empirical_area_constant(const CorrelationLedger& led);
double empirical_area_constant(const PrimeTable& t, std::uint64_t x,
                               std::uint64_t z, Weight w);

// Twin-prime partial product and its gap correction:
//   pi2_partial = Prod_{2<p<=P} (1 - 1/(p-1)^2)
//   value       = 2 * pi2_partial * Prod_{p|z, p>2} (p-1)/(p-2)
struct SingularSeries {
  std::uint64_t z = 0;
  std::uint64_t cutoff = 0;
  double pi2_partial = 0.0;
  double value = 0.0;
};

// Computes the partial product with an internal plain sieve up to P.
// Requires z even and positive and P >= 100; throws ArgumentError
// otherwise (odd gaps are rejected rather than silently returning 0,
// because the product formula is stated for even gaps only).
SingularSeries singular_series(std::uint64_t z, std::uint64_t P);

// One grid point of the pair-count ratio report.
struct BrunPoint {
  std::uint64_t x = 0;
  std::uint64_t pair_count = 0;  // pairs (p, p+z) with both entries <= x
  double ratio = 0.0;            // pair_count * (log x)^2 / x
};

// Ratio grid next to the even-gap singular value for comparison. The
// stability of ratio against hl_value is reported, never asserted.
struct BrunReport {
  std::uint64_t z = 0;
  double hl_value = 0.0;  // singular value for even z, NaN for odd z
  std::vector<BrunPoint> points;
};

// Evaluates the ratio at each grid point. Requires every x >= 100 and
// <= t.bound() (ArgumentError / BoundError). hl_cutoff bounds the
// partial product used for the comparison value.
BrunReport brun_check(const PrimeTable& t, std::uint64_t z,
                      std::span<const std::uint64_t> xs,
                      std::uint64_t hl_cutoff = 1000000);

// Same report over the decade grid {100, 1000, ...} capped at x, with x
// itself appended when it is not a power of ten.
BrunReport brun_check(const PrimeTable& t, std::uint64_t z, std::uint64_t x,
                      std::uint64_t hl_cutoff = 1000000);

}  // namespace latticeprime

#endif  // LATTICEPRIME_AREA_HPP_
