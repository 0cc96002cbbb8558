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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "latticeprime/residues.hpp"
#include "latticeprime/roots.hpp"

namespace latticeprime {

// One cyclic factor of the unit group: the subgroup of (Z/qZ)* generated by
// `generator` (a CRT lift, so it is congruent to the component's generator
// inside its prime power and to 1 everywhere else).
struct GroupComponent {
  std::uint64_t prime_power = 0;  // the p^e this component lives in
  std::uint64_t generator = 0;    // lifted generator mod q
  std::uint64_t order = 0;
};

// Cyclic decomposition of (Z/qZ)* by CRT: one component per odd prime power
// (generated by a primitive root), none for 2, one for 4, and the pair
// <-1> x <3> for 2^e with e >= 3. Discrete logs are full lookup tables per
// component, which is what caps q at kDlogCeiling.
class UnitGroupStructure {
 public:
  static constexpr std::uint64_t kDlogCeiling = 10'000'000;

  const Modulus& modulus() const { return modulus_; }
  const std::vector<GroupComponent>& components() const { return components_; }

  // lcm of the component orders; 1 for the trivial group.
  std::uint32_t exponent() const { return exponent_; }

  bool is_unit(std::int64_t n) const;

  // Exponent of u on component i; u must be a unit.
  std::uint32_t component_dlog(std::size_t i, std::uint64_t u) const;

  friend std::shared_ptr<const UnitGroupStructure> build_group(const Modulus& m);

 private:
  UnitGroupStructure() = default;

  Modulus modulus_;
  std::vector<GroupComponent> components_;
  // dlog_[i][u mod prime_power] = exponent, UINT32_MAX on non-units.
  std::vector<std::vector<std::uint32_t>> dlog_;
  std::uint32_t exponent_ = 1;
};

// Throws ResourceError for q above kDlogCeiling.
std::shared_ptr<const UnitGroupStructure> build_group(const Modulus& m);

// A Dirichlet character mod q: exponent vector e with chi(g_i) =
// exp(2*pi*i * e_i / d_i). Values are exact roots of unity; chi(n) is
// "zero" (nullopt) when gcd(n, q) > 1.
class Character {
 public:
  Character(std::shared_ptr<const UnitGroupStructure> group,
            std::vector<std::uint32_t> exponents);

  const UnitGroupStructure& group() const { return *group_; }
  const std::vector<std::uint32_t>& exponents() const { return exponents_; }
  bool is_principal() const;

  std::optional<RootOfUnity> operator()(std::int64_t n) const;

 private:
  std::shared_ptr<const UnitGroupStructure> group_;
  std::vector<std::uint32_t> exponents_;
};

// All phi(q) characters, principal first, in odometer order over the
// exponent vectors (last component fastest).
std::vector<Character> characters(std::shared_ptr<const UnitGroupStructure> group);
std::vector<Character> characters(const Modulus& m);

std::optional<RootOfUnity> chi_eval(const Character& c, std::int64_t n);

// Lattice character on pairs: kappa((m, n)) = chi(m * n mod q). kappa sees
// only the product class label of the pair, never the two residues
// separately; see the package documentation for what that implies for the
// orthogonality inversion.
std::optional<RootOfUnity> kappa_eval(const Character& c, std::int64_t m, std::int64_t n);

// Sum of kappa over one representative pair per product class (equivalently,
// of chi over the unit labels). exact_value() is phi(q) for the principal
// character and 0 for every other one.
RootOfUnitySum orthogonality_pairs(const Character& c, const Modulus& m);

// Sum over all characters of kappa((a, b)) * conj(kappa((m, n))).
// exact_value() is phi(q) when the two pairs share a product class label and
// 0 otherwise. All four entries must be units (AdmissibilityError), and
// `chars` must be the complete character family of one modulus.
RootOfUnitySum orthogonality_classes(std::pair<std::int64_t, std::int64_t> pair_ab,
                                     std::pair<std::int64_t, std::int64_t> pair_mn,
                                     std::span<const Character> chars);

}  // namespace latticeprime
