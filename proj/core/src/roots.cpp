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

#include "latticeprime/roots.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace latticeprime {

RootOfUnity RootOfUnity::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw ArgumentError("RootOfUnity: zero denominator");
  num %= den;
  const std::uint64_t g = std::gcd(num == 0 ? den : num, den);
  RootOfUnity r;
  r.num = static_cast<std::uint32_t>(num / g);
  r.den = static_cast<std::uint32_t>(den / g);
  return r;
}

RootOfUnity RootOfUnity::times(RootOfUnity o) const {
  const std::uint64_t d = std::lcm<std::uint64_t>(den, o.den);
  if (d > std::numeric_limits<std::uint32_t>::max()) {
    throw ArgumentError("RootOfUnity::times: combined order exceeds 2^32");
  }
  const std::uint64_t n =
      (static_cast<std::uint64_t>(num) * (d / den) +
       static_cast<std::uint64_t>(o.num) * (d / o.den)) % d;
  return make(n, d);
}

RootOfUnity RootOfUnity::conj() const {
  return num == 0 ? *this : make(den - num, den);
}

std::complex<double> RootOfUnity::to_complex() const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) /
                       static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

RootOfUnitySum::RootOfUnitySum(std::uint32_t common_den) : den_(common_den) {
  if (common_den == 0) throw ArgumentError("RootOfUnitySum: zero denominator");
  hist_.assign(common_den, 0);
}

void RootOfUnitySum::add(RootOfUnity r, std::int64_t weight) {
  if (den_ % r.den != 0) {
    throw ArgumentError("RootOfUnitySum: root denominator does not divide the common one");
  }
  hist_[static_cast<std::size_t>(r.num) * (den_ / r.den)] += weight;
}

std::optional<std::int64_t> RootOfUnitySum::exact_value() const {
  std::vector<std::uint32_t> support;
  for (std::uint32_t k = 0; k < den_; ++k) {
    if (hist_[k] != 0) support.push_back(k);
  }
  if (support.empty()) return 0;
  if (support.size() == 1) {
    return support[0] == 0 ? std::optional<std::int64_t>(hist_[0]) : std::nullopt;
  }

  // Cancellation happens exactly when the support is the full subgroup
  // mu_d = { j * (D/d) : j < d } with one common weight.
  const std::size_t d = support.size();
  if (den_ % d != 0) return std::nullopt;
  const std::uint32_t step = den_ / static_cast<std::uint32_t>(d);
  const std::int64_t w = hist_[support[0]];
  for (std::size_t j = 0; j < d; ++j) {
    if (support[j] != j * step) return std::nullopt;
    if (hist_[support[j]] != w) return std::nullopt;
  }
  return 0;
}

std::complex<double> RootOfUnitySum::complex_value() const {
  std::complex<double> acc{0.0, 0.0};
  for (std::uint32_t k = 0; k < den_; ++k) {
    if (hist_[k] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(den_);
    acc += static_cast<double>(hist_[k]) *
           std::complex<double>{std::cos(angle), std::sin(angle)};
  }
  return acc;
}

}  // namespace latticeprime
