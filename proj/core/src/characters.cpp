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

#include "latticeprime/characters.hpp"

#include <limits>
#include <numeric>

namespace latticeprime {

namespace {

constexpr std::uint32_t kNoDlog = std::numeric_limits<std::uint32_t>::max();

// Smallest primitive root mod p, p an odd prime.
std::uint64_t primitive_root_mod_p(std::uint64_t p) {
  std::uint64_t n = p - 1;
  std::vector<std::uint64_t> factors;
  for (std::uint64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
    if (n % f != 0) continue;
    factors.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) factors.push_back(n);

  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (std::uint64_t f : factors) {
      if (pow_mod(g, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

// Generator of the cyclic group (Z/p^e Z)*, p odd.
std::uint64_t primitive_root_mod_pe(std::uint64_t p, unsigned e, std::uint64_t pe) {
  std::uint64_t g = primitive_root_mod_p(p);
  if (e >= 2 && pow_mod(g, p - 1, p * p) == 1) g += p;
  return g % pe;
}

// CRT lift: x = value (mod part), x = 1 (mod q / part).
std::uint64_t lift(std::uint64_t value, std::uint64_t part, std::uint64_t q) {
  const std::uint64_t rest = q / part;
  if (rest == 1) return value % q;
  // x = 1 + rest * t with t = (value - 1) * rest^{-1} (mod part)
  const std::uint64_t diff = (value % part + part - 1 % part) % part;
  const std::uint64_t t = mul_mod(diff, inv_mod(rest % part, part), part);
  return (1 + static_cast<std::uint64_t>(
                  (static_cast<unsigned __int128>(rest) * t) % q)) % q;
}

}  // namespace

bool UnitGroupStructure::is_unit(std::int64_t n) const {
  return std::gcd(reduce_mod(n, modulus_.q), modulus_.q) == 1;
}

std::uint32_t UnitGroupStructure::component_dlog(std::size_t i, std::uint64_t u) const {
  const std::uint32_t v = dlog_[i][u % components_[i].prime_power];
  if (v == kNoDlog) throw AdmissibilityError("component_dlog: argument is not a unit");
  return v;
}

std::shared_ptr<const UnitGroupStructure> build_group(const Modulus& m) {
  if (m.q > UnitGroupStructure::kDlogCeiling) {
    throw ResourceError("build_group: q exceeds the dlog table ceiling");
  }

  auto group = std::shared_ptr<UnitGroupStructure>(new UnitGroupStructure());
  group->modulus_ = m;

  for (const auto& [p, e] : m.factorization) {
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p;

    if (p == 2) {
      if (e == 1) continue;  // (Z/2)* is trivial
      if (e == 2) {
        // (Z/4)* = <3>, order 2
        GroupComponent c{pe, lift(3, pe, m.q), 2};
        std::vector<std::uint32_t> table(pe, kNoDlog);
        table[1] = 0;
        table[3] = 1;
        group->components_.push_back(c);
        group->dlog_.push_back(std::move(table));
        continue;
      }
      // (Z/2^e)* = <-1> x <3>, orders 2 and 2^(e-2)
      const std::uint64_t minus_one = pe - 1;
      const std::uint64_t half_order = pe / 4;
      GroupComponent sign{pe, lift(minus_one, pe, m.q), 2};
      GroupComponent body{pe, lift(3, pe, m.q), half_order};
      std::vector<std::uint32_t> sign_table(pe, kNoDlog);
      std::vector<std::uint32_t> body_table(pe, kNoDlog);
      std::uint64_t u = 1;
      for (std::uint64_t k = 0; k < half_order; ++k) {
        sign_table[u] = 0;
        body_table[u] = static_cast<std::uint32_t>(k);
        const std::uint64_t neg = pe - u;
        sign_table[neg] = 1;
        body_table[neg] = static_cast<std::uint32_t>(k);
        u = mul_mod(u, 3, pe);
      }
      group->components_.push_back(sign);
      group->components_.push_back(body);
      group->dlog_.push_back(std::move(sign_table));
      group->dlog_.push_back(std::move(body_table));
      continue;
    }

    // odd prime power: cyclic of order phi(p^e)
    const std::uint64_t order = pe / p * (p - 1);
    const std::uint64_t g = primitive_root_mod_pe(p, e, pe);
    GroupComponent c{pe, lift(g, pe, m.q), order};
    std::vector<std::uint32_t> table(pe, kNoDlog);
    std::uint64_t u = 1;
    for (std::uint64_t k = 0; k < order; ++k) {
      table[u] = static_cast<std::uint32_t>(k);
      u = mul_mod(u, g, pe);
    }
    group->components_.push_back(c);
    group->dlog_.push_back(std::move(table));
  }

  std::uint64_t exponent = 1;
  for (const auto& c : group->components_) exponent = std::lcm(exponent, c.order);
  group->exponent_ = static_cast<std::uint32_t>(exponent);
  return group;
}

Character::Character(std::shared_ptr<const UnitGroupStructure> group,
                     std::vector<std::uint32_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  if (exponents_.size() != group_->components().size()) {
    throw ArgumentError("Character: exponent count does not match the group");
  }
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] >= group_->components()[i].order) {
      throw ArgumentError("Character: exponent exceeds component order");
    }
  }
}

bool Character::is_principal() const {
  for (std::uint32_t e : exponents_) {
    if (e != 0) return false;
  }
  return true;
}

std::optional<RootOfUnity> Character::operator()(std::int64_t n) const {
  const Modulus& m = group_->modulus();
  const std::uint64_t u = reduce_mod(n, m.q);
  if (std::gcd(u, m.q) != 1) return std::nullopt;

  const std::uint32_t d = group_->exponent();
  std::uint64_t num = 0;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    const std::uint64_t di = group_->components()[i].order;
    num = (num + static_cast<std::uint64_t>(exponents_[i]) *
                     group_->component_dlog(i, u) % d * (d / di)) % d;
  }
  return RootOfUnity::make(num, d);
}

std::vector<Character> characters(std::shared_ptr<const UnitGroupStructure> group) {
  const auto& comps = group->components();
  std::vector<Character> out;
  out.reserve(group->modulus().phi);

  std::vector<std::uint32_t> exps(comps.size(), 0);
  for (;;) {
    out.emplace_back(group, exps);
    // odometer, last component fastest
    std::size_t i = comps.size();
    while (i > 0) {
      --i;
      if (++exps[i] < comps[i].order) break;
      exps[i] = 0;
      if (i == 0) return out;
    }
    if (comps.empty()) return out;
  }
}

std::vector<Character> characters(const Modulus& m) { return characters(build_group(m)); }

std::optional<RootOfUnity> chi_eval(const Character& c, std::int64_t n) { return c(n); }

std::optional<RootOfUnity> kappa_eval(const Character& c, std::int64_t m, std::int64_t n) {
  const std::uint64_t q = c.group().modulus().q;
  const std::uint64_t prod = mul_mod(reduce_mod(m, q), reduce_mod(n, q), q);
  return c(static_cast<std::int64_t>(prod));
}

RootOfUnitySum orthogonality_pairs(const Character& c, const Modulus& m) {
  if (c.group().modulus().q != m.q) {
    throw ArgumentError("orthogonality_pairs: modulus mismatch");
  }
  RootOfUnitySum sum(c.group().exponent());
  // One representative pair (1, u) per class label u.
  for (std::uint64_t u = 1; u < m.q; ++u) {
    if (std::gcd(u, m.q) != 1) continue;
    const auto v = kappa_eval(c, 1, static_cast<std::int64_t>(u));
    sum.add(*v);
  }
  return sum;
}

RootOfUnitySum orthogonality_classes(std::pair<std::int64_t, std::int64_t> pair_ab,
                                     std::pair<std::int64_t, std::int64_t> pair_mn,
                                     std::span<const Character> chars) {
  if (chars.empty()) throw ArgumentError("orthogonality_classes: empty character family");
  const UnitGroupStructure& g = chars.front().group();
  for (std::int64_t v : {pair_ab.first, pair_ab.second, pair_mn.first, pair_mn.second}) {
    if (!g.is_unit(v)) {
      throw AdmissibilityError("orthogonality_classes: pair entries must be units");
    }
  }
  RootOfUnitySum sum(g.exponent());
  for (const Character& chi : chars) {
    const auto a = kappa_eval(chi, pair_ab.first, pair_ab.second);
    const auto b = kappa_eval(chi, pair_mn.first, pair_mn.second);
    sum.add(a->times(b->conj()));
  }
  return sum;
}

}  // namespace latticeprime
