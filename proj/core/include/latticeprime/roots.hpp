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

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "latticeprime/errors.hpp"

namespace latticeprime {

// exp(2*pi*i * num/den) held as the reduced fraction num/den with
// 0 <= num < den. Multiplication is exact angle addition mod 1, so equality
// of values is equality of the fractions.
struct RootOfUnity {
  std::uint32_t num = 0;
  std::uint32_t den = 1;

  static RootOfUnity make(std::uint64_t num, std::uint64_t den);

  RootOfUnity times(RootOfUnity o) const;
  RootOfUnity conj() const;
  bool is_one() const { return num == 0; }
  std::complex<double> to_complex() const;

  friend bool operator==(RootOfUnity, RootOfUnity) = default;
};

// Integer-weighted histogram of roots of unity over a fixed common
// denominator D. exact_value() decides the two shapes character sums
// produce without any floating point:
//   - all weight at angle zero            -> that integer
//   - equal weight on a full subgroup mu_d -> exactly 0      (d >= 2)
// Any other histogram is reported as indeterminate (nullopt) rather than
// approximated; a corrupted character table therefore surfaces as a failed
// decision, never as a small numeric residue.
class RootOfUnitySum {
 public:
  explicit RootOfUnitySum(std::uint32_t common_den);

  std::uint32_t common_denominator() const { return den_; }

  // r.den must divide the common denominator; throws ArgumentError otherwise.
  void add(RootOfUnity r, std::int64_t weight = 1);

  // Raw bin access, index = angle numerator over the common denominator.
  const std::vector<std::int64_t>& histogram() const { return hist_; }
  std::vector<std::int64_t>& histogram() { return hist_; }

  std::optional<std::int64_t> exact_value() const;
  std::complex<double> complex_value() const;

 private:
  std::uint32_t den_;
  std::vector<std::int64_t> hist_;
};

}  // namespace latticeprime
