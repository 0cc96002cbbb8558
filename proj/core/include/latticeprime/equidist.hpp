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

// Bucketing of prime pairs (p, p + z) into product-label classes mod q,
// character-twisted correlation sums, and the statistical comparison of
// the observed class masses against two predictions: equal share per
// admissible class, and share proportional to class multiplicity.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "latticeprime/characters.hpp"
#include "latticeprime/residues.hpp"
#include "latticeprime/sieve.hpp"

namespace latticeprime {

// Raw pair count and weighted mass landing on one class label.
struct LabelTally {
  std::uint64_t label = 0;
  // Pairs (n, n + z) with both entries prime and n + z <= x.
  std::uint64_t raw_count = 0;
  // Sum of f(n) f(n + z) over n <= x; n + z may exceed x. The asymmetry is
  // deliberate: raw counts close exactly against the pair counter, masses
  // close against the shift-correlation sum, and the two conventions differ.
  double psi_mass = 0.0;
};

// Per-label tallies of the pairs (n, n + z) by label n(n + z) mod q.
// Pairs with an entry sharing a factor with q carry no label and land in
// the excluded tallies instead, so totals always close.
struct ClassCounts {
  std::uint64_t q = 0;
  std::uint64_t z = 0;
  std::uint64_t x = 0;
  Weight weight = Weight::lambda;
  std::vector<LabelTally> labels;  // ascending label, nonzero tallies only
  std::uint64_t raw_total = 0;     // sum over labels
  double psi_total = 0.0;          // sum over labels
  std::uint64_t excluded_raw = 0;
  double excluded_psi = 0.0;
};

// Scans n <= x and buckets every pair (n, n + z) with nonzero weight; raw
// counts additionally require n + z <= x. Partitioned into fixed kSumChunk
// ranges merged in index order, so results never depend on the worker
// count. Requires q >= 2, z >= 1, x + z <= t.bound(); throws ResourceError
// when q exceeds the class-table ceiling.
ClassCounts bucket_pairs(const PrimeTable& t, std::uint64_t z, std::uint64_t q,
                         std::uint64_t x, Weight w = Weight::lambda,
                         unsigned workers = 0);

// Sum_{n<=x} Lambda(n) chi(n), compensated complex accumulation.
// Requires x <= t.bound().
std::complex<double> psi_chi(const PrimeTable& t, std::uint64_t x,
                             const Character& chi, unsigned workers = 0);

// Sum_{n<=x} Lambda(n) Lambda(n+z) chi(n (n+z) mod q); terms with an entry
// sharing a factor with q contribute nothing. For the principal character
// this equals the labeled psi total of bucket_pairs with the lambda weight.
// Requires z >= 1 and x + z <= t.bound().
std::complex<double> kappa_correlation(const PrimeTable& t, std::uint64_t x,
                                       std::uint64_t z, const Character& chi,
                                       unsigned workers = 0);

// How the expected share of each admissible class is modeled.
enum class PredictionModel {
  uniform,                 // equal share per admissible class
  multiplicity_weighted,   // share proportional to class multiplicity
};

const char* prediction_model_name(PredictionModel m);

struct LabelShare {
  std::uint64_t label = 0;
  double fraction = 0.0;
};

// Expected per-class fractions under one model, plus the effective
// per-x constants implied by the observed totals.
struct Prediction {
  PredictionModel model = PredictionModel::uniform;
  std::vector<LabelShare> shares;  // admissible labels ascending; sums to 1
  double psi_constant = 0.0;       // labeled psi total / x
  double pi_constant = 0.0;        // labeled raw total * (log x)^2 / x
};

// Requires a nonempty admissible set sharing (z, q) with counts.
Prediction make_prediction(PredictionModel model, const AdmissibleClassSet& adm,
                           const ClassCounts& counts);

// One row of the comparison table. Expected values are raw-count masses:
// model fraction times the observed labeled total. Relative deviations are
// (observed - expected) / expected, NaN where the expected mass is zero.
struct LabelRow {
  std::uint64_t label = 0;
  std::uint64_t multiplicity = 0;  // 0 when the label is not admissible
  std::uint64_t raw_count = 0;
  double psi_mass = 0.0;
  double uniform_expected = 0.0;
  double weighted_expected = 0.0;
  double rel_dev_uniform = 0.0;
  double rel_dev_weighted = 0.0;

  // Field-exact, except that NaN compares equal to NaN so degenerate rows
  // survive a serialization round trip.
  bool operator==(const LabelRow& o) const;
};

// Observed-versus-predicted comparison at one bound x. Chi-square is
// computed on raw pair counts (unit weight per pair, classical count
// statistics); the weighted masses are reported per label but never enter
// the chi-square. A report with zero labeled pairs is degenerate and
// carries NaN chi-squares.
struct EquidistributionReport {
  std::uint64_t q = 0;
  std::uint64_t z = 0;
  std::uint64_t x = 0;
  Weight weight = Weight::lambda;
  std::vector<LabelRow> labels;  // ascending label
  double chi2_uniform = 0.0;
  double chi2_weighted = 0.0;
  double max_abs_rel_dev_uniform = 0.0;
  double max_abs_rel_dev_weighted = 0.0;
  std::uint64_t excluded_mass = 0;  // excluded raw pair count
  double excluded_psi_mass = 0.0;
  // 2 * labeled psi total / x: the effective per-class constant scale
  // implied by the masses when spread over the admissible classes.
  double theta_hat = 0.0;
  bool degenerate = false;

  // Field-exact with NaN == NaN, mirroring LabelRow.
  bool operator==(const EquidistributionReport& o) const;
};

// Joins counts with the admissible set (rows for every admissible label
// plus any stray labeled mass), evaluates both models, and fills the
// deviation and chi-square fields. Requires counts and adm to agree on
// (z, q); throws ArgumentError otherwise.
EquidistributionReport build_report(const ClassCounts& counts,
                                    const AdmissibleClassSet& adm);

// Through-origin least-squares fit of per-class mass against the model
// predictor, over a grid of reports.
struct ThetaFit {
  PredictionModel model = PredictionModel::uniform;
  // psi-type: per-class psi mass against x (uniform) or against the
  // multiplicity-normalized x (weighted).
  double slope_psi = 0.0;
  double theta_psi = 0.0;  // 2 * admissible class count * slope_psi
  double rms_psi = 0.0;    // absolute rms residual of the psi fit
  // pi-type: per-class raw count against x / (log x)^2, same shape.
  double slope_pi = 0.0;
  double theta_pi = 0.0;
  double rms_pi = 0.0;
};

struct ConstantEstimate {
  std::uint64_t z = 0;
  std::uint64_t q = 0;
  std::uint64_t admissible_count = 0;
  ThetaFit uniform;
  ThetaFit weighted;
};

// Fits both models across the grid. Requires >= 3 reports with >= 3
// distinct x values, identical (z, q), identical label sets, and at least
// one admissible label; throws FitError when the grid is degenerate and
// ArgumentError when the reports are inconsistent.
ConstantEstimate constant_estimate(std::span<const EquidistributionReport> reports);

}  // namespace latticeprime
