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

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include <doctest.h>

#include "latticeprime/area.hpp"
#include "latticeprime/characters.hpp"
#include "latticeprime/equidist.hpp"
#include "latticeprime/errors.hpp"
#include "latticeprime/residues.hpp"
#include "latticeprime/sieve.hpp"
#include "oracles.hpp"

namespace lp = latticeprime;

namespace {

const lp::PrimeTable& shared_table() {
  static const lp::PrimeTable t = lp::build_table(1'000'000 + 8);
  return t;
}

double mass_of(const lp::ClassCounts& counts, std::uint64_t label) {
  for (const lp::LabelTally& tally : counts.labels) {
    if (tally.label == label) return tally.psi_mass;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("bucketing matches a dense oracle loop") {
  const std::uint64_t x = 2'000;
  for (const std::uint64_t z : {2ULL, 4ULL}) {
    for (const std::uint64_t q : {3ULL, 5ULL, 12ULL}) {
      const lp::ClassCounts counts = lp::bucket_pairs(shared_table(), z, q, x);
      const std::vector<double> tab = oracle::lambda_table(x + z);
      const std::vector<char> flag = oracle::sieve_flags(x + z);

      std::map<std::uint64_t, double> psi;
      std::map<std::uint64_t, std::uint64_t> raw;
      double excluded_psi = 0.0;
      std::uint64_t excluded_raw = 0;
      for (std::uint64_t n = 2; n <= x; ++n) {
        const double w = tab[n] * tab[n + z];
        const bool pair = flag[n] && n + z <= x && flag[n + z];
        const bool units =
            std::gcd(n, q) == 1 && std::gcd(n + z, q) == 1;
        if (units) {
          const std::uint64_t label = (n % q) * ((n + z) % q) % q;
          if (w != 0.0) psi[label] += w;
          if (pair) raw[label] += 1;
        } else {
          if (w != 0.0) excluded_psi += w;
          if (pair) excluded_raw += 1;
        }
      }

      CHECK(counts.excluded_raw == excluded_raw);
      CHECK(counts.excluded_psi == doctest::Approx(excluded_psi).epsilon(1e-12));
      std::uint64_t raw_total = 0;
      double psi_total = 0.0;
      for (const lp::LabelTally& tally : counts.labels) {
        const auto it_raw = raw.find(tally.label);
        CHECK(tally.raw_count ==
              (it_raw == raw.end() ? 0 : it_raw->second));
        const auto it_psi = psi.find(tally.label);
        CHECK(tally.psi_mass ==
              doctest::Approx(it_psi == psi.end() ? 0.0 : it_psi->second)
                  .epsilon(1e-12));
        raw_total += tally.raw_count;
        psi_total += tally.psi_mass;
      }
      CHECK(counts.raw_total == raw_total);
      CHECK(counts.psi_total == doctest::Approx(psi_total).epsilon(1e-12));
    }
  }
}

TEST_CASE("conservation: labeled plus excluded equals the pair count") {
  for (const std::uint64_t z : {2ULL, 4ULL, 6ULL}) {
    for (const std::uint64_t q : {3ULL, 5ULL, 7ULL, 8ULL, 12ULL}) {
      for (const std::uint64_t x : {10'000ULL, 100'000ULL}) {
        const lp::ClassCounts counts = lp::bucket_pairs(shared_table(), z, q, x);
        CHECK(counts.raw_total + counts.excluded_raw ==
              lp::prime_pair_count(z, x, shared_table()));
      }
    }
  }
}

TEST_CASE("nonzero tallies appear only at admissible labels") {
  for (const std::uint64_t z : {2ULL, 4ULL, 6ULL}) {
    for (const std::uint64_t q : {3ULL, 5ULL, 7ULL, 8ULL, 12ULL}) {
      const lp::ClassCounts counts =
          lp::bucket_pairs(shared_table(), z, q, 10'000);
      const lp::AdmissibleClassSet adm =
          lp::admissible_classes(z, lp::make_modulus(q));
      for (const lp::LabelTally& tally : counts.labels) {
        CHECK(adm.multiplicity_of(tally.label) > 0);
      }
    }
  }
}

TEST_CASE("known label placements") {
  // Gap 2 mod 3: the pair (3, 5) is excluded, everything else lands on 2.
  const lp::ClassCounts mod3 = lp::bucket_pairs(shared_table(), 2, 3, 100);
  REQUIRE(mod3.labels.size() == 1);
  CHECK(mod3.labels[0].label == 2);
  CHECK(mod3.labels[0].raw_count == 7);
  CHECK(mod3.excluded_raw == 1);

  // Gap 2 mod 5: labels 3 and 4 only.
  const lp::ClassCounts mod5 = lp::bucket_pairs(shared_table(), 2, 5, 1'000'000);
  REQUIRE(mod5.labels.size() == 2);
  CHECK(mod5.labels[0].label == 3);
  CHECK(mod5.labels[1].label == 4);
  CHECK(mod5.excluded_raw == 2);  // (3, 5) and (5, 7) touch the modulus

  // Below the first pair every raw tally is empty (psi may not be).
  const lp::ClassCounts early = lp::bucket_pairs(shared_table(), 2, 5, 4);
  CHECK(early.raw_total == 0);
  CHECK(early.excluded_raw == 0);
}

TEST_CASE("bucket_pairs guards its arguments") {
  CHECK_THROWS_AS(lp::bucket_pairs(shared_table(), 2, 1, 100), lp::ArgumentError);
  CHECK_THROWS_AS(lp::bucket_pairs(shared_table(), 0, 5, 100), lp::ArgumentError);
  CHECK_THROWS_AS(
      lp::bucket_pairs(shared_table(), 2, 5, shared_table().bound()),
      lp::BoundError);
  CHECK_THROWS_AS(
      lp::bucket_pairs(shared_table(), 2, 20'000'000, 100), lp::ResourceError);
}

TEST_CASE("bucketing is worker-count invariant") {
  const lp::ClassCounts serial =
      lp::bucket_pairs(shared_table(), 2, 5, 100'000, lp::Weight::lambda, 1);
  const lp::ClassCounts wide =
      lp::bucket_pairs(shared_table(), 2, 5, 100'000, lp::Weight::lambda, 8);
  REQUIRE(serial.labels.size() == wide.labels.size());
  for (std::size_t i = 0; i < serial.labels.size(); ++i) {
    CHECK(serial.labels[i].label == wide.labels[i].label);
    CHECK(serial.labels[i].raw_count == wide.labels[i].raw_count);
    CHECK(serial.labels[i].psi_mass == wide.labels[i].psi_mass);  // bitwise
  }
  CHECK(serial.psi_total == wide.psi_total);
  CHECK(serial.excluded_psi == wide.excluded_psi);
}

TEST_CASE("theta-weighted bucketing counts log-weighted prime pairs") {
  const lp::ClassCounts counts =
      lp::bucket_pairs(shared_table(), 2, 5, 100, lp::Weight::theta);
  // theta mass at label 3: pairs (11,13), (17,19), (41,43), (71,73) wait --
  // recompute via the oracle instead of hand-listing.
  const std::vector<char> flag = oracle::sieve_flags(102);
  double want3 = 0.0;
  for (std::uint64_t n = 2; n <= 100; ++n) {
    if (!flag[n] || !flag[n + 2]) continue;
    if (std::gcd(n, 5ULL) != 1 || std::gcd(n + 2, 5ULL) != 1) continue;
    if ((n % 5) * ((n + 2) % 5) % 5 == 3) {
      want3 += std::log(static_cast<double>(n)) *
               std::log(static_cast<double>(n + 2));
    }
  }
  CHECK(mass_of(counts, 3) == doctest::Approx(want3).epsilon(1e-12));
  CHECK(counts.weight == lp::Weight::theta);
}

TEST_CASE("psi_chi: hand value, principal size, non-principal cancellation") {
  const lp::Modulus m2 = lp::make_modulus(2);
  const std::vector<lp::Character> chars2 = lp::characters(m2);
  REQUIRE(chars2.size() == 1);
  const std::complex<double> hand = lp::psi_chi(shared_table(), 10, chars2[0]);
  const double want = std::log(3.0) + std::log(5.0) + std::log(7.0) + std::log(3.0);
  CHECK(hand.real() == doctest::Approx(want).epsilon(1e-12));
  CHECK(hand.imag() == 0.0);
  CHECK(want == doctest::Approx(5.752).epsilon(1e-3));

  const lp::Modulus m3 = lp::make_modulus(3);
  const std::vector<lp::Character> chars3 = lp::characters(m3);
  const std::complex<double> principal =
      lp::psi_chi(shared_table(), 1'000'000, chars3[0]);
  CHECK(principal.real() / 1e6 >= 0.97);
  CHECK(principal.real() / 1e6 <= 1.02);
  const std::complex<double> nonprincipal =
      lp::psi_chi(shared_table(), 1'000'000, chars3[1]);
  CHECK(std::abs(nonprincipal) / 1e6 <= 0.05);
}

TEST_CASE("kappa_correlation: hand value and principal consistency") {
  const lp::Modulus m5 = lp::make_modulus(5);
  const std::vector<lp::Character> chars5 = lp::characters(m5);
  const std::complex<double> hand =
      lp::kappa_correlation(shared_table(), 10, 2, chars5[0]);
  const double want = std::log(2.0) * std::log(2.0) +
                      std::log(7.0) * std::log(3.0) +
                      std::log(3.0) * std::log(11.0);
  CHECK(hand.real() == doctest::Approx(want).epsilon(1e-12));
  CHECK(hand.imag() == 0.0);

  // Principal kappa equals the labeled psi total, q <= 50, x = 1e5.
  for (std::uint64_t q = 2; q <= 50; ++q) {
    const lp::Modulus m = lp::make_modulus(q);
    const std::vector<lp::Character> chars = lp::characters(m);
    const std::complex<double> k0 =
        lp::kappa_correlation(shared_table(), 100'000, 2, chars[0]);
    const lp::ClassCounts counts = lp::bucket_pairs(shared_table(), 2, q, 100'000);
    CHECK(k0.real() ==
          doctest::Approx(counts.psi_total).epsilon(1e-9));
    CHECK(std::abs(k0.imag()) <= 1e-9);
  }
}

TEST_CASE("orthogonality inversion reconstructs every label mass") {
  for (const std::uint64_t q : {3ULL, 5ULL, 7ULL, 8ULL, 12ULL}) {
    const lp::Modulus m = lp::make_modulus(q);
    const std::vector<lp::Character> chars = lp::characters(m);
    for (const std::uint64_t z : {2ULL, 4ULL, 6ULL}) {
      const std::uint64_t x = 10'000;
      const lp::ClassCounts counts = lp::bucket_pairs(shared_table(), z, q, x);

      std::vector<std::complex<double>> corr;
      corr.reserve(chars.size());
      for (const lp::Character& chi : chars) {
        corr.push_back(lp::kappa_correlation(shared_table(), x, z, chi));
      }

      for (std::uint64_t label = 1; label < q; ++label) {
        if (std::gcd(label, q) != 1) continue;
        std::complex<double> recon{0.0, 0.0};
        for (std::size_t i = 0; i < chars.size(); ++i) {
          const auto chi_at_label =
              lp::chi_eval(chars[i], static_cast<std::int64_t>(label));
          REQUIRE(chi_at_label.has_value());
          recon += chi_at_label->conj().to_complex() * corr[i];
        }
        recon /= static_cast<double>(m.phi);
        const double want = mass_of(counts, label);
        const double tol = 1e-6 * std::max(1.0, want);
        CHECK(std::abs(recon.real() - want) <= tol);
        CHECK(std::abs(recon.imag()) <= 1e-6 * std::max(1.0, counts.psi_total));
      }
    }
  }
}

TEST_CASE("predictions: fractions sum to one and constants scale") {
  const lp::AdmissibleClassSet adm = lp::admissible_classes(2, lp::make_modulus(5));
  const lp::ClassCounts counts = lp::bucket_pairs(shared_table(), 2, 5, 100'000);

  const lp::Prediction uni =
      lp::make_prediction(lp::PredictionModel::uniform, adm, counts);
  const lp::Prediction wgt =
      lp::make_prediction(lp::PredictionModel::multiplicity_weighted, adm, counts);

  double uni_sum = 0.0;
  double wgt_sum = 0.0;
  REQUIRE(uni.shares.size() == 2);
  REQUIRE(wgt.shares.size() == 2);
  for (const lp::LabelShare& s : uni.shares) uni_sum += s.fraction;
  for (const lp::LabelShare& s : wgt.shares) wgt_sum += s.fraction;
  CHECK(uni_sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wgt_sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(uni.shares[0].fraction == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wgt.shares[0].fraction == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(uni.psi_constant ==
        doctest::Approx(counts.psi_total / 100'000.0).epsilon(1e-12));
  const double log_x = std::log(100'000.0);
  CHECK(uni.pi_constant ==
        doctest::Approx(static_cast<double>(counts.raw_total) * log_x * log_x /
                        100'000.0)
            .epsilon(1e-12));
}

TEST_CASE("build_report: synthetic zero-chi-square cases") {
  const lp::AdmissibleClassSet adm = lp::admissible_classes(2, lp::make_modulus(5));

  lp::ClassCounts proportional;
  proportional.q = 5;
  proportional.z = 2;
  proportional.x = 1'000;
  proportional.labels = {{3, 20, 200.0}, {4, 10, 100.0}};
  proportional.raw_total = 30;
  proportional.psi_total = 300.0;
  const lp::EquidistributionReport wrep = lp::build_report(proportional, adm);
  CHECK(wrep.chi2_weighted == 0.0);
  CHECK(wrep.chi2_uniform == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
  CHECK(!wrep.degenerate);

  lp::ClassCounts equal = proportional;
  equal.labels = {{3, 15, 150.0}, {4, 15, 150.0}};
  const lp::EquidistributionReport urep = lp::build_report(equal, adm);
  CHECK(urep.chi2_uniform == 0.0);
  CHECK(urep.chi2_weighted == doctest::Approx(3.75).epsilon(1e-12));

  // Rows carry multiplicities and expectations for every admissible label.
  REQUIRE(wrep.labels.size() == 2);
  CHECK(wrep.labels[0].multiplicity == 2);
  CHECK(wrep.labels[1].multiplicity == 1);
  CHECK(wrep.labels[0].uniform_expected == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(wrep.labels[0].weighted_expected == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(wrep.labels[0].rel_dev_weighted == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(wrep.theta_hat == doctest::Approx(2.0 * 300.0 / 1'000.0).epsilon(1e-12));
}

TEST_CASE("build_report: degenerate and mismatch paths") {
  const lp::AdmissibleClassSet adm = lp::admissible_classes(2, lp::make_modulus(5));
  const lp::ClassCounts early = lp::bucket_pairs(shared_table(), 2, 5, 4);
  const lp::EquidistributionReport rep = lp::build_report(early, adm);
  CHECK(rep.degenerate);
  CHECK(std::isnan(rep.chi2_uniform));
  CHECK(std::isnan(rep.chi2_weighted));

  const lp::AdmissibleClassSet wrong = lp::admissible_classes(4, lp::make_modulus(5));
  CHECK_THROWS_AS(lp::build_report(early, wrong), lp::ArgumentError);
}

TEST_CASE("single admissible class gives zero chi-square on real data") {
  const lp::Modulus m2 = lp::make_modulus(2);
  const lp::AdmissibleClassSet adm = lp::admissible_classes(2, m2);
  REQUIRE(adm.classes.size() == 1);
  const lp::ClassCounts counts = lp::bucket_pairs(shared_table(), 2, 2, 10'000);
  const lp::EquidistributionReport rep = lp::build_report(counts, adm);
  CHECK(rep.chi2_uniform == 0.0);
  CHECK(rep.chi2_weighted == 0.0);
  CHECK(rep.labels.size() == 1);
  CHECK(rep.labels[0].raw_count == 205);  // every twin pair above 2 is odd/odd
}

TEST_CASE("real-data equidistribution at gap 2 mod 5") {
  const lp::AdmissibleClassSet adm = lp::admissible_classes(2, lp::make_modulus(5));
  const lp::ClassCounts counts = lp::bucket_pairs(shared_table(), 2, 5, 1'000'000);
  const lp::EquidistributionReport rep = lp::build_report(counts, adm);
  REQUIRE(rep.labels.size() == 2);
  const double ratio = static_cast<double>(rep.labels[0].raw_count) /
                       static_cast<double>(rep.labels[1].raw_count);
  CHECK(ratio >= 1.8);
  CHECK(ratio <= 2.2);
  CHECK(rep.chi2_weighted < rep.chi2_uniform);
}

TEST_CASE("constant_estimate: synthetic exact fit") {
  const lp::AdmissibleClassSet adm = lp::admissible_classes(2, lp::make_modulus(5));
  std::vector<lp::EquidistributionReport> reports;
  for (const std::uint64_t x : {1'000ULL, 2'000ULL, 4'000ULL}) {
    lp::ClassCounts counts;
    counts.q = 5;
    counts.z = 2;
    counts.x = x;
    const double mass = 0.33 * static_cast<double>(x);
    const double lx = std::log(static_cast<double>(x));
    const auto raw = static_cast<std::uint64_t>(mass / (lx * lx));
    counts.labels = {{3, raw, mass}, {4, raw, mass}};
    counts.raw_total = 2 * raw;
    counts.psi_total = 2.0 * mass;
    reports.push_back(lp::build_report(counts, adm));
  }

  const lp::ConstantEstimate est = lp::constant_estimate(
      std::span<const lp::EquidistributionReport>(reports.data(), reports.size()));
  CHECK(est.z == 2);
  CHECK(est.q == 5);
  CHECK(est.admissible_count == 2);
  CHECK(est.uniform.theta_psi == doctest::Approx(1.32).epsilon(1e-12));
  CHECK(est.uniform.rms_psi <= 1e-9);
  CHECK(std::isfinite(est.weighted.theta_psi));
  CHECK(std::isfinite(est.uniform.theta_pi));

  // Too few reports, too few distinct bounds, inconsistent grids.
  CHECK_THROWS_AS(
      lp::constant_estimate(
          std::span<const lp::EquidistributionReport>(reports.data(), 1)),
      lp::FitError);
  std::vector<lp::EquidistributionReport> repeated = {reports[0], reports[0],
                                                      reports[0]};
  CHECK_THROWS_AS(
      lp::constant_estimate(std::span<const lp::EquidistributionReport>(
          repeated.data(), repeated.size())),
      lp::FitError);
  std::vector<lp::EquidistributionReport> mixed = reports;
  mixed[2].q = 7;
  CHECK_THROWS_AS(lp::constant_estimate(std::span<const lp::EquidistributionReport>(
                      mixed.data(), mixed.size())),
                  lp::ArgumentError);
}

TEST_CASE("constant_estimate on real data is finite and positive") {
  const lp::AdmissibleClassSet adm = lp::admissible_classes(2, lp::make_modulus(5));
  std::vector<lp::EquidistributionReport> reports;
  for (const std::uint64_t x : {10'000ULL, 100'000ULL, 1'000'000ULL}) {
    reports.push_back(
        lp::build_report(lp::bucket_pairs(shared_table(), 2, 5, x), adm));
  }
  const lp::ConstantEstimate est = lp::constant_estimate(
      std::span<const lp::EquidistributionReport>(reports.data(), reports.size()));
  for (const lp::ThetaFit* fit : {&est.uniform, &est.weighted}) {
    CHECK(fit->theta_psi > 0.0);
    CHECK(fit->theta_pi > 0.0);
    CHECK(std::isfinite(fit->rms_psi));
    CHECK(std::isfinite(fit->rms_pi));
  }
}
