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

#include "latticeprime/residues.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

namespace latticeprime {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t base = a % m;
  std::uint64_t acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return acc;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid on (a mod m, m)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) throw AdmissibilityError("inv_mod: argument is not a unit");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_mod(std::int64_t n, std::uint64_t m) {
  std::int64_t r = n % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

Modulus make_modulus(std::uint64_t q) {
  if (q < 2 || q > 1'000'000'000) {
    throw ArgumentError("make_modulus: q must lie in [2, 10^9]");
  }
  Modulus m;
  m.q = q;
  m.phi = 1;
  std::uint64_t rest = q;
  for (std::uint64_t p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    unsigned e = 0;
    std::uint64_t pe = 1;
    while (rest % p == 0) {
      rest /= p;
      ++e;
      pe *= p;
    }
    m.factorization.emplace_back(p, e);
    m.phi *= pe / p * (p - 1);
  }
  if (rest > 1) {
    m.factorization.emplace_back(rest, 1);
    m.phi *= rest - 1;
  }
  return m;
}

std::uint64_t class_label(std::int64_t n1, std::int64_t n2, const Modulus& m) {
  const std::uint64_t a = reduce_mod(n1, m.q);
  const std::uint64_t b = reduce_mod(n2, m.q);
  if (std::gcd(a, m.q) != 1 || std::gcd(b, m.q) != 1) {
    throw AdmissibilityError("class_label: entries must be units mod q");
  }
  return mul_mod(a, b, m.q);
}

const ClassDescriptor& LatticeClassTable::descriptor_for(std::uint64_t label) const {
  const std::uint64_t l = label % modulus_.q;
  const std::uint32_t idx =
      l < index_by_label_.size() ? index_by_label_[l] : std::numeric_limits<std::uint32_t>::max();
  if (idx == std::numeric_limits<std::uint32_t>::max()) {
    throw AdmissibilityError("descriptor_for: label is not a unit mod q");
  }
  return classes_[idx];
}

LatticeClassTable build_classes(const Modulus& m) {
  if (m.q > LatticeClassTable::kTableCeiling) {
    throw ResourceError("build_classes: q exceeds the class table ceiling");
  }
  const std::uint64_t q = m.q;

  // A class has one ordered solution (a, b) per unit a, so its unordered
  // distinct-pair multiplicity is (phi - s(label)) / 2 where s counts the
  // square roots of the label among units.
  std::vector<std::uint32_t> sqrt_count(q, 0);
  std::vector<std::uint8_t> is_unit(q, 0);
  for (std::uint64_t a = 0; a < q; ++a) {
    if (std::gcd(a, q) == 1) {
      is_unit[a] = 1;
      ++sqrt_count[mul_mod(a, a, q)];
    }
  }

  LatticeClassTable table;
  table.modulus_ = m;
  table.index_by_label_.assign(q, std::numeric_limits<std::uint32_t>::max());
  table.classes_.reserve(m.phi);
  for (std::uint64_t c = 0; c < q; ++c) {
    if (!is_unit[c]) continue;
    ClassDescriptor d;
    d.label = c;
    d.rep_a = 1;
    d.rep_b = c;
    d.multiplicity = (m.phi - sqrt_count[c]) / 2;
    table.index_by_label_[c] = static_cast<std::uint32_t>(table.classes_.size());
    table.classes_.push_back(d);
  }
  return table;
}

std::uint64_t omega(const Modulus& m) { return m.phi * (m.phi - 1) / 2; }

std::uint64_t class_size_bound(const Modulus& m) { return m.phi / 2; }

std::uint64_t AdmissibleClassSet::residue_count() const {
  std::uint64_t total = 0;
  for (const auto& [label, mult] : classes) total += mult;
  return total;
}

std::uint64_t AdmissibleClassSet::multiplicity_of(std::uint64_t label) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), label,
                             [](const auto& e, std::uint64_t l) { return e.first < l; });
  if (it != classes.end() && it->first == label) return it->second;
  return 0;
}

AdmissibleClassSet admissible_classes(std::uint64_t z, const Modulus& m) {
  if (z < 1) throw ArgumentError("admissible_classes: gap must be >= 1");
  const std::uint64_t q = m.q;
  const std::uint64_t zr = z % q;

  std::vector<std::uint32_t> mult(q, 0);
  for (std::uint64_t a = 0; a < q; ++a) {
    const std::uint64_t b = a + zr >= q ? a + zr - q : a + zr;
    if (std::gcd(a, q) == 1 && std::gcd(b, q) == 1) {
      ++mult[mul_mod(a, b, q)];
    }
  }

  AdmissibleClassSet out;
  out.gap = z;
  out.q = q;
  for (std::uint64_t c = 0; c < q; ++c) {
    if (mult[c] > 0) out.classes.emplace_back(c, mult[c]);
  }
  return out;
}

}  // namespace latticeprime
