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

#include "latticeprime/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <vector>

#include "latticeprime/errors.hpp"
#include "latticeprime/kahan.hpp"
#include "latticeprime/parallel.hpp"

namespace latticeprime {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_field(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

// Per-residue lookup for the pair (a, a + z) mod q.
struct ResidueTables {
  std::vector<std::uint8_t> unit_pair;  // both entries coprime to q
  std::vector<std::uint32_t> label;     // a (a + z) mod q, valid where unit_pair
};

ResidueTables make_residue_tables(std::uint64_t q, std::uint64_t z) {
  ResidueTables rt;
  rt.unit_pair.assign(q, 0);
  rt.label.assign(q, 0);
  const std::uint64_t zr = z % q;
  for (std::uint64_t a = 0; a < q; ++a) {
    const std::uint64_t b = a + zr >= q ? a + zr - q : a + zr;
    if (std::gcd(a, q) == 1 && std::gcd(b, q) == 1) {
      rt.unit_pair[a] = 1;
      rt.label[a] = static_cast<std::uint32_t>(mul_mod(a, b, q));
    }
  }
  return rt;
}

}  // namespace

ClassCounts bucket_pairs(const PrimeTable& t, std::uint64_t z, std::uint64_t q,
                         std::uint64_t x, Weight w, unsigned workers) {
  if (q < 2) throw ArgumentError("bucket_pairs: q must be >= 2");
  if (q > LatticeClassTable::kTableCeiling) {
    throw ResourceError("bucket_pairs: q exceeds the residue-table ceiling");
  }
  if (z < 1) throw ArgumentError("bucket_pairs: gap must be >= 1");
  if (x > t.bound() || z > t.bound() - x) {
    throw BoundError("bucket_pairs: x + z exceeds table bound");
  }

  ClassCounts out;
  out.q = q;
  out.z = z;
  out.x = x;
  out.weight = w;
  if (x < 2) return out;

  const ResidueTables rt = make_residue_tables(q, z);
  const PrimePowerIndex idx(t);

  // Sparse per-chunk tallies; each label receives one merge per chunk, so
  // folding the chunks in index order fixes every label's addition order.
  struct Partial {
    std::unordered_map<std::uint32_t, double> psi;
    std::unordered_map<std::uint32_t, std::uint64_t> raw;
    double excluded_psi = 0.0;
    std::uint64_t excluded_raw = 0;
  };

  const std::vector<Partial> parts = map_chunks<Partial>(
      2, x + 1, kSumChunk, workers,
      [&](std::uint64_t clo, std::uint64_t chi) {
        Partial part;
        idx.for_each_prime_power(
            clo, chi - 1, [&](std::uint64_t n, double log_p, bool is_p) {
              const std::uint64_t r = n % q;
              double self = 0.0;
              double other = 0.0;
              if (w == Weight::lambda) {
                self = log_p;
                other = idx.lambda_of(n + z);
              } else if (is_p) {
                self = std::log(static_cast<double>(n));
                if (t.is_prime_unchecked(n + z)) {
                  other = std::log(static_cast<double>(n + z));
                }
              }
              if (self != 0.0 && other != 0.0) {
                if (rt.unit_pair[r]) {
                  part.psi[rt.label[r]] += self * other;
                } else {
                  part.excluded_psi += self * other;
                }
              }
              if (is_p && n + z <= x && t.is_prime_unchecked(n + z)) {
                if (rt.unit_pair[r]) {
                  ++part.raw[rt.label[r]];
                } else {
                  ++part.excluded_raw;
                }
              }
            });
        return part;
      });

  std::map<std::uint64_t, LabelTally> merged;
  for (const Partial& part : parts) {
    for (const auto& [label, mass] : part.psi) {
      LabelTally& tally = merged[label];
      tally.label = label;
      tally.psi_mass += mass;
    }
    for (const auto& [label, count] : part.raw) {
      LabelTally& tally = merged[label];
      tally.label = label;
      tally.raw_count += count;
    }
    out.excluded_psi += part.excluded_psi;
    out.excluded_raw += part.excluded_raw;
  }

  out.labels.reserve(merged.size());
  for (const auto& [label, tally] : merged) {
    out.labels.push_back(tally);
    out.raw_total += tally.raw_count;
    out.psi_total += tally.psi_mass;
  }
  return out;
}

std::complex<double> psi_chi(const PrimeTable& t, std::uint64_t x,
                             const Character& chi, unsigned workers) {
  if (x > t.bound()) throw BoundError("psi_chi: x exceeds table bound");
  if (x < 2) return {0.0, 0.0};

  const std::uint64_t q = chi.group().modulus().q;
  std::vector<std::complex<double>> row(q, std::complex<double>(0.0, 0.0));
  for (std::uint64_t u = 0; u < q; ++u) {
    if (const auto v = chi(static_cast<std::int64_t>(u))) row[u] = v->to_complex();
  }

  const PrimePowerIndex idx(t);
  const std::vector<std::complex<double>> parts =
      map_chunks<std::complex<double>>(
          2, x + 1, kSumChunk, workers,
          [&](std::uint64_t clo, std::uint64_t chi_hi) {
            ComplexKahanSum local;
            idx.for_each_prime_power(clo, chi_hi - 1,
                                     [&](std::uint64_t n, double log_p, bool) {
                                       const std::complex<double> v = row[n % q];
                                       if (v != std::complex<double>(0.0, 0.0)) {
                                         local.add(log_p * v);
                                       }
                                     });
            return local.value();
          });
  ComplexKahanSum total;
  for (const std::complex<double>& p : parts) total.add(p);
  return total.value();
}

std::complex<double> kappa_correlation(const PrimeTable& t, std::uint64_t x,
                                       std::uint64_t z, const Character& chi,
                                       unsigned workers) {
  if (z < 1) throw ArgumentError("kappa_correlation: gap must be >= 1");
  if (x > t.bound() || z > t.bound() - x) {
    throw BoundError("kappa_correlation: x + z exceeds table bound");
  }
  if (x < 2) return {0.0, 0.0};

  const std::uint64_t q = chi.group().modulus().q;
  const ResidueTables rt = make_residue_tables(q, z);
  // Pair value by residue of n: chi(n (n+z) mod q) where both entries are
  // units, zero otherwise. Unit labels always evaluate, so *v is safe.
  std::vector<std::complex<double>> row(q, std::complex<double>(0.0, 0.0));
  for (std::uint64_t a = 0; a < q; ++a) {
    if (!rt.unit_pair[a]) continue;
    const auto v = chi(static_cast<std::int64_t>(rt.label[a]));
    row[a] = v->to_complex();
  }

  const PrimePowerIndex idx(t);
  const std::vector<std::complex<double>> parts =
      map_chunks<std::complex<double>>(
          2, x + 1, kSumChunk, workers,
          [&](std::uint64_t clo, std::uint64_t chi_hi) {
            ComplexKahanSum local;
            idx.for_each_prime_power(
                clo, chi_hi - 1, [&](std::uint64_t n, double log_p, bool) {
                  const std::uint64_t r = n % q;
                  if (!rt.unit_pair[r]) return;
                  const double other = idx.lambda_of(n + z);
                  if (other != 0.0) local.add(log_p * other * row[r]);
                });
            return local.value();
          });
  ComplexKahanSum total;
  for (const std::complex<double>& p : parts) total.add(p);
  return total.value();
}

const char* prediction_model_name(PredictionModel m) {
  return m == PredictionModel::uniform ? "uniform" : "multiplicity_weighted";
}

Prediction make_prediction(PredictionModel model, const AdmissibleClassSet& adm,
                           const ClassCounts& counts) {
  if (adm.q != counts.q || adm.gap != counts.z) {
    throw ArgumentError("make_prediction: counts and admissible set disagree on (z, q)");
  }
  if (adm.classes.empty()) {
    throw ArgumentError("make_prediction: empty admissible set");
  }

  Prediction p;
  p.model = model;
  const double class_count = static_cast<double>(adm.class_count());
  const double residue_count = static_cast<double>(adm.residue_count());
  p.shares.reserve(adm.classes.size());
  for (const auto& [label, mult] : adm.classes) {
    const double fraction = model == PredictionModel::uniform
                                ? 1.0 / class_count
                                : static_cast<double>(mult) / residue_count;
    p.shares.push_back({label, fraction});
  }
  if (counts.x >= 1) {
    const double x = static_cast<double>(counts.x);
    const double log_x = std::log(x);
    p.psi_constant = counts.psi_total / x;
    p.pi_constant = static_cast<double>(counts.raw_total) * log_x * log_x / x;
  }
  return p;
}

bool LabelRow::operator==(const LabelRow& o) const {
  return label == o.label && multiplicity == o.multiplicity &&
         raw_count == o.raw_count && same_field(psi_mass, o.psi_mass) &&
         same_field(uniform_expected, o.uniform_expected) &&
         same_field(weighted_expected, o.weighted_expected) &&
         same_field(rel_dev_uniform, o.rel_dev_uniform) &&
         same_field(rel_dev_weighted, o.rel_dev_weighted);
}

bool EquidistributionReport::operator==(const EquidistributionReport& o) const {
  return q == o.q && z == o.z && x == o.x && weight == o.weight &&
         labels == o.labels && same_field(chi2_uniform, o.chi2_uniform) &&
         same_field(chi2_weighted, o.chi2_weighted) &&
         same_field(max_abs_rel_dev_uniform, o.max_abs_rel_dev_uniform) &&
         same_field(max_abs_rel_dev_weighted, o.max_abs_rel_dev_weighted) &&
         excluded_mass == o.excluded_mass &&
         same_field(excluded_psi_mass, o.excluded_psi_mass) &&
         same_field(theta_hat, o.theta_hat) && degenerate == o.degenerate;
}

EquidistributionReport build_report(const ClassCounts& counts,
                                    const AdmissibleClassSet& adm) {
  if (adm.q != counts.q || adm.gap != counts.z) {
    throw ArgumentError("build_report: counts and admissible set disagree on (z, q)");
  }

  EquidistributionReport rep;
  rep.q = counts.q;
  rep.z = counts.z;
  rep.x = counts.x;
  rep.weight = counts.weight;
  rep.excluded_mass = counts.excluded_raw;
  rep.excluded_psi_mass = counts.excluded_psi;
  rep.theta_hat =
      counts.x >= 1 ? 2.0 * counts.psi_total / static_cast<double>(counts.x) : 0.0;
  rep.degenerate = counts.raw_total == 0;

  // Rows for every admissible label plus any stray label that received
  // mass; strays keep multiplicity 0 and stay visible instead of vanishing.
  std::map<std::uint64_t, LabelRow> rows;
  for (const auto& [label, mult] : adm.classes) {
    LabelRow row;
    row.label = label;
    row.multiplicity = mult;
    rows.emplace(label, row);
  }
  for (const LabelTally& tally : counts.labels) {
    auto [it, inserted] = rows.try_emplace(tally.label);
    if (inserted) it->second.label = tally.label;
    it->second.raw_count = tally.raw_count;
    it->second.psi_mass = tally.psi_mass;
  }

  const double total = static_cast<double>(counts.raw_total);
  const double class_count = static_cast<double>(adm.class_count());
  const double residue_count = static_cast<double>(adm.residue_count());

  double chi2_u = 0.0;
  double chi2_w = 0.0;
  double max_u = 0.0;
  double max_w = 0.0;
  for (auto& [label, row] : rows) {
    const bool admissible = row.multiplicity > 0;
    row.uniform_expected = admissible ? total / class_count : 0.0;
    row.weighted_expected =
        admissible ? total * static_cast<double>(row.multiplicity) / residue_count
                   : 0.0;
    const double observed = static_cast<double>(row.raw_count);
    row.rel_dev_uniform =
        row.uniform_expected > 0.0
            ? (observed - row.uniform_expected) / row.uniform_expected
            : kNaN;
    row.rel_dev_weighted =
        row.weighted_expected > 0.0
            ? (observed - row.weighted_expected) / row.weighted_expected
            : kNaN;
    if (row.uniform_expected > 0.0) {
      const double d = observed - row.uniform_expected;
      chi2_u += d * d / row.uniform_expected;
      max_u = std::max(max_u, std::abs(row.rel_dev_uniform));
    }
    if (row.weighted_expected > 0.0) {
      const double d = observed - row.weighted_expected;
      chi2_w += d * d / row.weighted_expected;
      max_w = std::max(max_w, std::abs(row.rel_dev_weighted));
    }
  }

  rep.chi2_uniform = rep.degenerate ? kNaN : chi2_u;
  rep.chi2_weighted = rep.degenerate ? kNaN : chi2_w;
  rep.max_abs_rel_dev_uniform = rep.degenerate ? 0.0 : max_u;
  rep.max_abs_rel_dev_weighted = rep.degenerate ? 0.0 : max_w;

  rep.labels.reserve(rows.size());
  for (const auto& [label, row] : rows) rep.labels.push_back(row);
  return rep;
}

namespace {

struct FitAccumulator {
  double sxx = 0.0;
  double sxy = 0.0;
  std::vector<std::pair<double, double>> points;  // (predictor, response)

  void add(double u, double y) {
    sxx += u * u;
    sxy += u * y;
    points.emplace_back(u, y);
  }

  // Through-origin least squares; throws FitError on an all-zero predictor.
  void solve(double* slope, double* rms) const {
    if (sxx <= 0.0) throw FitError("constant_estimate: degenerate predictor grid");
    *slope = sxy / sxx;
    double ss = 0.0;
    for (const auto& [u, y] : points) {
      const double r = y - *slope * u;
      ss += r * r;
    }
    *rms = std::sqrt(ss / static_cast<double>(points.size()));
  }
};

}  // namespace

ConstantEstimate constant_estimate(
    std::span<const EquidistributionReport> reports) {
  if (reports.size() < 3) {
    throw FitError("constant_estimate: need at least 3 grid points");
  }
  const EquidistributionReport& first = reports.front();

  std::vector<std::pair<std::uint64_t, std::uint64_t>> adm;  // (label, mult)
  for (const LabelRow& row : first.labels) {
    if (row.multiplicity > 0) adm.emplace_back(row.label, row.multiplicity);
  }
  if (adm.empty()) throw FitError("constant_estimate: no admissible labels");

  std::set<std::uint64_t> distinct_x;
  for (const EquidistributionReport& rep : reports) {
    if (rep.q != first.q || rep.z != first.z) {
      throw ArgumentError("constant_estimate: reports mix (z, q) configurations");
    }
    if (rep.x < 2) throw FitError("constant_estimate: grid point below 2");
    std::size_t admissible_rows = 0;
    for (const LabelRow& row : rep.labels) {
      if (row.multiplicity == 0) continue;
      ++admissible_rows;
      const auto it = std::lower_bound(
          adm.begin(), adm.end(), row.label,
          [](const auto& e, std::uint64_t l) { return e.first < l; });
      if (it == adm.end() || it->first != row.label || it->second != row.multiplicity) {
        throw ArgumentError("constant_estimate: reports disagree on admissible labels");
      }
    }
    if (admissible_rows != adm.size()) {
      throw ArgumentError("constant_estimate: reports disagree on admissible labels");
    }
    distinct_x.insert(rep.x);
  }
  if (distinct_x.size() < 3) {
    throw FitError("constant_estimate: need at least 3 distinct x values");
  }

  const std::uint64_t adm_count = adm.size();
  double residue_count = 0.0;
  for (const auto& [label, mult] : adm) {
    residue_count += static_cast<double>(mult);
  }

  // Weighted model predictor weights normalized so they sum to adm_count;
  // for equal multiplicities they collapse to the uniform predictor.
  const auto predictor_weight = [&](PredictionModel model, std::uint64_t mult) {
    if (model == PredictionModel::uniform) return 1.0;
    return static_cast<double>(mult) * static_cast<double>(adm_count) / residue_count;
  };

  ConstantEstimate est;
  est.z = first.z;
  est.q = first.q;
  est.admissible_count = adm_count;

  for (const PredictionModel model :
       {PredictionModel::uniform, PredictionModel::multiplicity_weighted}) {
    FitAccumulator psi_fit;
    FitAccumulator pi_fit;
    for (const EquidistributionReport& rep : reports) {
      const double x = static_cast<double>(rep.x);
      const double log_x = std::log(x);
      const double pi_scale = x / (log_x * log_x);
      for (const LabelRow& row : rep.labels) {
        if (row.multiplicity == 0) continue;
        const double w = predictor_weight(model, row.multiplicity);
        psi_fit.add(w * x, row.psi_mass);
        pi_fit.add(w * pi_scale, static_cast<double>(row.raw_count));
      }
    }
    ThetaFit fit;
    fit.model = model;
    psi_fit.solve(&fit.slope_psi, &fit.rms_psi);
    pi_fit.solve(&fit.slope_pi, &fit.rms_pi);
    fit.theta_psi = 2.0 * static_cast<double>(adm_count) * fit.slope_psi;
    fit.theta_pi = 2.0 * static_cast<double>(adm_count) * fit.slope_pi;
    (model == PredictionModel::uniform ? est.uniform : est.weighted) = fit;
  }
  return est;
}

}  // namespace latticeprime
