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
#include <vector>

#include "latticeprime/errors.hpp"

namespace latticeprime {

// Modular arithmetic helpers; all require m >= 1 and reduce through
// 128-bit intermediates, so products never overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
// Inverse of a unit; throws AdmissibilityError when gcd(a, m) > 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);
// Reduces a signed integer into [0, m).
std::uint64_t reduce_mod(std::int64_t n, std::uint64_t m);

struct Modulus {
  std::uint64_t q = 0;
  // Prime factorization, ascending primes.
  std::vector<std::pair<std::uint64_t, unsigned>> factorization;
  std::uint64_t phi = 0;
};

// Requires 2 <= q <= 10^9; throws ArgumentError otherwise.
Modulus make_modulus(std::uint64_t q);

// Unit pairs (n1, n2) mod q are grouped by the product n1 * n2 mod q; the
// product is the class label, so there are exactly phi(q) classes, one per
// unit. class_label reduces its inputs mod q and throws AdmissibilityError
// when either entry shares a factor with q. Symmetric in its two arguments.
std::uint64_t class_label(std::int64_t n1, std::int64_t n2, const Modulus& m);

struct ClassDescriptor {
  std::uint64_t label = 0;
  // Canonical representative: the lexicographically smallest unit pair
  // (a, b) with a <= b < q and a * b = label (mod q). Since a = 1 always
  // works, the representative is (1, label).
  std::uint64_t rep_a = 0;
  std::uint64_t rep_b = 0;
  // Number of unordered pairs {a, b} of distinct units with a * b = label.
  // Diagonal pairs (a, a) are legal class members but are not counted here,
  // which is what makes the multiplicities sum to omega(q).
  std::uint64_t multiplicity = 0;
};

class LatticeClassTable {
 public:
  // Label lookups use an index array of size q.
  static constexpr std::uint64_t kTableCeiling = 10'000'000;

  const Modulus& modulus() const { return modulus_; }
  std::size_t class_count() const { return classes_.size(); }  // == phi(q)
  const std::vector<ClassDescriptor>& classes() const { return classes_; }

  // Requires label to be a unit mod q; throws AdmissibilityError otherwise.
  const ClassDescriptor& descriptor_for(std::uint64_t label) const;

  friend LatticeClassTable build_classes(const Modulus& m);

 private:
  Modulus modulus_;
  std::vector<ClassDescriptor> classes_;      // ascending label
  std::vector<std::uint32_t> index_by_label_; // size q, UINT32_MAX off-units
};

// Builds all phi(q) class descriptors. Throws ResourceError for q above
// kTableCeiling.
LatticeClassTable build_classes(const Modulus& m);

// Number of unordered pairs of distinct units: phi(q) * (phi(q) - 1) / 2.
std::uint64_t omega(const Modulus& m);

// Upper bound ceil((phi(q) - 1) / 2) on the multiplicity of a single class.
std::uint64_t class_size_bound(const Modulus& m);

// Classes that can receive pairs (n, n + z): labels a * (a + z) mod q over
// residues a with gcd(a, q) = gcd(a + z, q) = 1, together with the number of
// residues producing each label. residue_count() is the count of admissible
// residues a and is NOT phi(q); the two are never interchangeable.
struct AdmissibleClassSet {
  std::uint64_t gap = 0;
  std::uint64_t q = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> classes;  // (label, multiplicity)

  std::size_t class_count() const { return classes.size(); }
  std::uint64_t residue_count() const;
  // 0 when the label is not admissible.
  std::uint64_t multiplicity_of(std::uint64_t label) const;
};

// Requires z >= 1. The result may be empty (no admissible residues).
AdmissibleClassSet admissible_classes(std::uint64_t z, const Modulus& m);

}  // namespace latticeprime
