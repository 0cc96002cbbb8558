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

// Acceptance gate: ten numbered criteria, one [PASS]/[FAIL] line each, exit
// code equal to the number of failures. Criterion 10 drives the CLI binary
// end to end, so the program takes two arguments:
//
//   latticeprime_acceptance <path-to-cli> <path-to-report-schema>
//
// Every numeric threshold below is pinned; nothing here adapts to the data.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latticeprime/area.hpp"
#include "latticeprime/characters.hpp"
#include "latticeprime/equidist.hpp"
#include "latticeprime/errors.hpp"
#include "latticeprime/residues.hpp"
#include "latticeprime/roots.hpp"
#include "latticeprime/sieve.hpp"

namespace lp = latticeprime;
using nlohmann::json;

namespace {

int g_failures = 0;

// Runs one criterion, times it, enforces the stated wall-clock limit, and
// prints exactly one line. The body returns an empty string on success or a
// short failure description.
void criterion(int number, const char* name, double limit_seconds,
               const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  try {
    detail = body();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (detail.empty() && limit_seconds > 0.0 && secs > limit_seconds) {
    std::ostringstream over;
    over << "exceeded the " << limit_seconds << " s budget";
    detail = over.str();
  }
  const bool pass = detail.empty();
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %2d: %s (%.1f s)%s%s\n", pass ? "PASS" : "FAIL",
              number, name, secs, pass ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Independent oracles (deliberately naive; no shared code with the library).

std::vector<char> oracle_sieve(std::uint64_t bound) {
  std::vector<char> flag(bound + 1, 1);
  flag[0] = 0;
  if (bound >= 1) flag[1] = 0;
  for (std::uint64_t p = 2; p * p <= bound; ++p) {
    if (!flag[p]) continue;
    for (std::uint64_t m = p * p; m <= bound; m += p) flag[m] = 0;
  }
  return flag;
}

// ---------------------------------------------------------------------------
// Subprocess driving for criterion 10.

struct CliRun {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::string& cli, const std::string& args,
               const std::filesystem::path& dir, const std::string& tag) {
  const std::filesystem::path out_path = dir / (tag + ".out");
  const std::filesystem::path err_path = dir / (tag + ".err");
  const std::string cmd = "'" + cli + "' " + args + " > '" + out_path.string() +
                          "' 2> '" + err_path.string() + "'";
  const int status = std::system(cmd.c_str());
  CliRun run;
  if (status == -1) {
    run.exit_code = -1;
  } else if (WIFEXITED(status)) {
    run.exit_code = WEXITSTATUS(status);
  } else {
    run.exit_code = -2;
  }
  run.out = read_file(out_path);
  run.err = read_file(err_path);
  return run;
}

// ---------------------------------------------------------------------------
// Minimal JSON-schema checker covering the subset the shipped schema uses:
// type (string or array of strings), enum, required, properties, items,
// minimum. Unknown keywords are ignored, matching permissive validators.

bool type_matches(const json& inst, const std::string& type) {
  if (type == "object") return inst.is_object();
  if (type == "array") return inst.is_array();
  if (type == "string") return inst.is_string();
  if (type == "boolean") return inst.is_boolean();
  if (type == "null") return inst.is_null();
  if (type == "integer") return inst.is_number_integer();
  if (type == "number") return inst.is_number();
  return false;
}

void validate_node(const json& inst, const json& schema, const std::string& path,
                   std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(inst, t.get<std::string>());
    } else if (t.is_array()) {
      for (const json& option : t) {
        ok = ok || type_matches(inst, option.get<std::string>());
      }
    }
    if (!ok) {
      errors.push_back(path + ": type mismatch");
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const json& option : schema["enum"]) ok = ok || inst == option;
    if (!ok) errors.push_back(path + ": not in enum");
  }
  if (schema.contains("minimum") && inst.is_number()) {
    if (inst.get<double>() < schema["minimum"].get<double>()) {
      errors.push_back(path + ": below minimum");
    }
  }
  if (inst.is_object()) {
    if (schema.contains("required")) {
      for (const json& key : schema["required"]) {
        if (!inst.contains(key.get<std::string>())) {
          errors.push_back(path + ": missing required field " +
                           key.get<std::string>());
        }
      }
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema["properties"].items()) {
        if (inst.contains(key)) {
          validate_node(inst.at(key), sub, path + "/" + key, errors);
        }
      }
    }
  }
  if (inst.is_array() && schema.contains("items")) {
    std::size_t i = 0;
    for (const json& element : inst) {
      validate_node(element, schema["items"], path + "[" + std::to_string(i) + "]",
                    errors);
      ++i;
    }
  }
}

std::vector<std::string> validate_schema(const json& inst, const json& schema) {
  std::vector<std::string> errors;
  validate_node(inst, schema, "", errors);
  return errors;
}

// Parallel same-orientation rays; always admissible by construction.
lp::SequencePair random_admissible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> direction(-1.0, 1.0);
  std::uniform_real_distribution<double> magnitude(0.0, 10.0);
  std::uniform_int_distribution<std::size_t> length(1, 50);
  double ux = 0.0;
  double uy = 0.0;
  while (ux == 0.0 && uy == 0.0) {
    ux = direction(rng);
    uy = direction(rng);
  }
  const std::size_t n = length(rng);
  std::vector<double> r(n);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = magnitude(rng);
    r[i] = t * ux;
    h[i] = t * uy;
  }
  return lp::SequencePair(std::move(r), std::move(h));
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: latticeprime_acceptance <cli-binary> <report-schema>\n";
    return 99;
  }
  const std::string cli = std::filesystem::absolute(argv[1]).string();
  const std::filesystem::path schema_path = std::filesystem::absolute(argv[2]);
  if (!std::filesystem::exists(cli) || !std::filesystem::exists(schema_path)) {
    std::cerr << "missing CLI binary or schema file\n";
    return 99;
  }

  // Shared sieve table; several criteria reuse it. Built once, outside the
  // per-criterion budgets, and reported for transparency.
  const auto setup_start = std::chrono::steady_clock::now();
  const lp::PrimeTable table = lp::build_table(10'000'000 + 8);
  std::printf("[----] shared sieve table to %llu built in %.1f s\n",
              static_cast<unsigned long long>(table.bound()),
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            setup_start)
                  .count());

  // 1 ----------------------------------------------------------------------
  criterion(1, "exact identities: decomposition equality, triangle residual",
            10.0, [&]() -> std::string {
    std::mt19937_64 rng(20260819);
    std::uniform_int_distribution<std::int64_t> value(-9, 9);
    std::uniform_int_distribution<std::uint64_t> bound(2, 300);
    for (int trial = 0; trial < 200; ++trial) {
      const std::uint64_t x = bound(rng);
      std::vector<std::int64_t> vals(x + 1, 0);
      for (std::uint64_t n = 1; n <= x; ++n) vals[n] = value(rng);
      const lp::DecompositionCheck check = lp::verify_decomposition(
          [&](std::uint64_t n) { return vals[n]; }, x);
      if (!check.equal()) {
        return "decomposition trial " + std::to_string(trial) + " unequal";
      }
    }
    for (int trial = 0; trial < 200; ++trial) {
      const lp::SequencePair pair = random_admissible(rng);
      if (!pair.admissible()) {
        return "triangle generator produced an inadmissible pair";
      }
      const lp::TriangleIdentityCheck check = lp::verify_triangle_identity(pair);
      if (!check.passes()) {
        return "triangle trial " + std::to_string(trial) +
               " residual " + fmt(check.residual());
      }
    }
    return "";
  });

  // 2 ----------------------------------------------------------------------
  criterion(2, "class counting vs brute force, q <= 500", 30.0,
            [&]() -> std::string {
    for (std::uint64_t q = 2; q <= 500; ++q) {
      const lp::Modulus m = lp::make_modulus(q);
      const lp::LatticeClassTable classes = lp::build_classes(m);
      if (classes.class_count() != m.phi) {
        return "class count != phi at q=" + std::to_string(q);
      }

      std::map<std::uint64_t, std::uint64_t> brute;
      std::vector<std::uint64_t> units;
      for (std::uint64_t a = 1; a < q; ++a) {
        if (std::gcd(a, q) == 1) units.push_back(a);
      }
      std::uint64_t enumerated = 0;
      for (std::size_t i = 0; i < units.size(); ++i) {
        for (std::size_t j = i + 1; j < units.size(); ++j) {
          brute[units[i] * units[j] % q] += 1;
          ++enumerated;
        }
      }
      if (enumerated != m.phi * (m.phi - 1) / 2 ||
          enumerated != lp::omega(m)) {
        return "omega formula mismatch at q=" + std::to_string(q);
      }
      std::uint64_t mult_sum = 0;
      for (const lp::ClassDescriptor& d : classes.classes()) {
        const auto it = brute.find(d.label);
        const std::uint64_t want = it == brute.end() ? 0 : it->second;
        if (d.multiplicity != want) {
          return "multiplicity mismatch at q=" + std::to_string(q) +
                 " label=" + std::to_string(d.label);
        }
        mult_sum += d.multiplicity;
      }
      if (mult_sum != enumerated) {
        return "multiplicities do not sum to omega at q=" + std::to_string(q);
      }
    }
    return "";
  });

  // 3 ----------------------------------------------------------------------
  criterion(3, "character family size and exact orthogonality, q <= 200", 60.0,
            [&]() -> std::string {
    for (std::uint64_t q = 2; q <= 200; ++q) {
      const lp::Modulus m = lp::make_modulus(q);
      const std::vector<lp::Character> chars = lp::characters(m);
      if (chars.size() != m.phi) {
        return "character count != phi at q=" + std::to_string(q);
      }
      for (std::size_t i = 0; i < chars.size(); ++i) {
        const lp::RootOfUnitySum sum = lp::orthogonality_pairs(chars[i], m);
        const auto value = sum.exact_value();
        const std::int64_t want =
            chars[i].is_principal() ? static_cast<std::int64_t>(m.phi) : 0;
        if (!value.has_value() || *value != want) {
          return "orthogonality not exact at q=" + std::to_string(q) +
                 " character " + std::to_string(i);
        }
      }
    }
    return "";
  });

  // 4 ----------------------------------------------------------------------
  criterion(4, "sieve vs independent oracle: pi, twins, theta ratio", 10.0,
            [&]() -> std::string {
    const std::vector<char> flag = oracle_sieve(1'000'000);
    std::uint64_t oracle_pi = 0;
    for (std::uint64_t n = 2; n <= 1'000'000; ++n) oracle_pi += flag[n];
    if (oracle_pi != 78'498) return "oracle pi(1e6) = " + std::to_string(oracle_pi);
    if (table.count_primes_upto(1'000'000) != 78'498) {
      return "library pi(1e6) = " +
             std::to_string(table.count_primes_upto(1'000'000));
    }
    std::uint64_t oracle_twins = 0;
    for (std::uint64_t p = 2; p + 2 <= 1'000'000; ++p) {
      oracle_twins += flag[p] && flag[p + 2];
    }
    if (oracle_twins != 8'169) {
      return "oracle twin count = " + std::to_string(oracle_twins);
    }
    if (lp::prime_pair_count(2, 1'000'000, table) != 8'169) {
      return "library twin count = " +
             std::to_string(lp::prime_pair_count(2, 1'000'000, table));
    }
    const double ratio = lp::chebyshev_theta_sum(1'000'000, table) / 1e6;
    if (ratio < 0.995 || ratio > 1.001) {
      return "theta(1e6)/1e6 = " + fmt(ratio);
    }
    return "";
  });

  // 5 ----------------------------------------------------------------------
  criterion(5, "conservation: labeled + excluded = pair count, exact", 0.0,
            [&]() -> std::string {
    for (const std::uint64_t z : {2ULL, 4ULL, 6ULL}) {
      for (const std::uint64_t q : {3ULL, 5ULL, 7ULL, 8ULL, 12ULL}) {
        for (const std::uint64_t x : {10'000ULL, 100'000ULL}) {
          const lp::ClassCounts counts = lp::bucket_pairs(table, z, q, x);
          const std::uint64_t pairs = lp::prime_pair_count(z, x, table);
          if (counts.raw_total + counts.excluded_raw != pairs) {
            return "z=" + std::to_string(z) + " q=" + std::to_string(q) +
                   " x=" + std::to_string(x) + ": " +
                   std::to_string(counts.raw_total) + "+" +
                   std::to_string(counts.excluded_raw) +
                   " != " + std::to_string(pairs);
          }
        }
      }
    }
    return "";
  });

  // 6 ----------------------------------------------------------------------
  criterion(6, "orthogonality inversion reconstructs label masses, 1e-6", 0.0,
            [&]() -> std::string {
    const std::uint64_t q = 5;
    const std::uint64_t z = 2;
    const std::uint64_t x = 10'000;
    const lp::Modulus m = lp::make_modulus(q);
    const std::vector<lp::Character> chars = lp::characters(m);
    const lp::ClassCounts counts = lp::bucket_pairs(table, z, q, x);

    std::vector<std::complex<double>> corr;
    for (const lp::Character& chi : chars) {
      corr.push_back(lp::kappa_correlation(table, x, z, chi));
    }
    for (std::uint64_t label = 1; label < q; ++label) {
      std::complex<double> recon{0.0, 0.0};
      for (std::size_t i = 0; i < chars.size(); ++i) {
        recon += lp::chi_eval(chars[i], static_cast<std::int64_t>(label))
                     ->conj()
                     .to_complex() *
                 corr[i];
      }
      recon /= static_cast<double>(m.phi);
      double want = 0.0;
      for (const lp::LabelTally& tally : counts.labels) {
        if (tally.label == label) want = tally.psi_mass;
      }
      const double tol = 1e-6 * std::max(1.0, want);
      if (std::abs(recon.real() - want) > tol ||
          std::abs(recon.imag()) > 1e-6 * std::max(1.0, counts.psi_total)) {
        return "label " + std::to_string(label) + ": reconstructed " +
               fmt(recon.real()) + " vs " + fmt(want);
      }
    }
    return "";
  });

  // 7 ----------------------------------------------------------------------
  criterion(7, "equidistribution measurement at z=2 q=5 x=1e7", 90.0,
            [&]() -> std::string {
    const lp::AdmissibleClassSet adm =
        lp::admissible_classes(2, lp::make_modulus(5));
    const lp::ClassCounts counts = lp::bucket_pairs(table, 2, 5, 10'000'000);
    const lp::EquidistributionReport rep = lp::build_report(counts, adm);
    if (rep.labels.size() != 2 || rep.labels[0].label != 3 ||
        rep.labels[1].label != 4) {
      return "unexpected label set";
    }
    const double ratio = static_cast<double>(rep.labels[0].raw_count) /
                         static_cast<double>(rep.labels[1].raw_count);
    if (ratio < 1.8 || ratio > 2.2) {
      return "label-3:label-4 ratio " + fmt(ratio) + " outside [1.8, 2.2]";
    }
    if (!(rep.chi2_weighted < rep.chi2_uniform)) {
      return "weighted chi2 " + fmt(rep.chi2_weighted) +
             " not below uniform chi2 " + fmt(rep.chi2_uniform);
    }
    return "";
  });

  // 8 ----------------------------------------------------------------------
  criterion(8, "constants: twin product, singular value, pair ratios", 0.0,
            [&]() -> std::string {
    const lp::SingularSeries sing = lp::singular_series(2, 10'000'000);
    if (sing.pi2_partial < 0.660161 || sing.pi2_partial > 0.660163) {
      return "pi2 partial " + fmt(sing.pi2_partial);
    }
    if (sing.value < 1.32032 || sing.value > 1.32033) {
      return "singular value " + fmt(sing.value);
    }
    const std::vector<std::uint64_t> grid = {100'000, 1'000'000, 10'000'000};
    const lp::BrunReport brun = lp::brun_check(
        table, 2, std::span<const std::uint64_t>(grid.data(), grid.size()),
        10'000'000);
    for (const lp::BrunPoint& point : brun.points) {
      const double rel = point.ratio / sing.value;
      if (rel < 0.5 || rel > 2.0) {
        return "x=" + std::to_string(point.x) + " ratio " + fmt(point.ratio) +
               " not within factor 2 of " + fmt(sing.value);
      }
    }
    return "";
  });

  // 9 ----------------------------------------------------------------------
  criterion(9, "character sums at 1e6: principal near x, others small", 0.0,
            [&]() -> std::string {
    for (std::uint64_t q = 2; q <= 30; ++q) {
      const std::vector<lp::Character> chars = lp::characters(lp::make_modulus(q));
      for (const lp::Character& chi : chars) {
        const std::complex<double> value = lp::psi_chi(table, 1'000'000, chi);
        if (chi.is_principal()) {
          const double ratio = value.real() / 1e6;
          if (ratio < 0.97 || ratio > 1.02) {
            return "principal q=" + std::to_string(q) + " ratio " + fmt(ratio);
          }
        } else {
          const double size = std::abs(value) / 1e6;
          if (size > 0.05) {
            return "non-principal q=" + std::to_string(q) + " |Psi|/x " +
                   fmt(size);
          }
        }
      }
    }
    return "";
  });

  // 10 ---------------------------------------------------------------------
  criterion(10, "CLI end-to-end: exit codes, schema, determinism", 0.0,
            [&]() -> std::string {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() /
        ("lp_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    struct Cleanup {
      std::filesystem::path dir;
      ~Cleanup() {
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
      }
    } cleanup{dir};

    const CliRun ok = run_cli(cli, "sieve --x 1000", dir, "exit0");
    if (ok.exit_code != 0) {
      return "sieve --x 1000 exited " + std::to_string(ok.exit_code);
    }
    if (ok.out != "pi(1000) = 168\n") {
      return "sieve --x 1000 printed: " + ok.out;
    }

    const CliRun fail = run_cli(
        cli, "verify --q-max 12 --trials 5 --inject-fault", dir, "exit1");
    if (fail.exit_code != 1) {
      return "fault-injected verify exited " + std::to_string(fail.exit_code);
    }

    const CliRun arg = run_cli(cli, "sieve --x 1", dir, "exit2");
    if (arg.exit_code != 2) {
      return "sieve --x 1 exited " + std::to_string(arg.exit_code);
    }

    const CliRun infeasible =
        run_cli(cli, "equidist --z 3 --q 6 --x 1e4", dir, "exit3");
    if (infeasible.exit_code != 3) {
      return "equidist --z 3 --q 6 exited " + std::to_string(infeasible.exit_code);
    }

    const std::filesystem::path rep_path = dir / "rep.json";
    const CliRun schema_run = run_cli(
        cli, "equidist --z 2 --q 5 --x 1e4 --format json -o '" +
                 rep_path.string() + "'",
        dir, "schema");
    if (schema_run.exit_code != 0) {
      return "equidist json run exited " + std::to_string(schema_run.exit_code);
    }
    json inst;
    json schema;
    try {
      inst = json::parse(read_file(rep_path));
      schema = json::parse(read_file(schema_path));
    } catch (const json::parse_error& e) {
      return std::string("report or schema failed to parse: ") + e.what();
    }
    const std::vector<std::string> errors = validate_schema(inst, schema);
    if (!errors.empty()) {
      return "schema violation: " + errors.front();
    }

    const std::filesystem::path w1 = dir / "w1.json";
    const std::filesystem::path w4 = dir / "w4.json";
    const CliRun run1 = run_cli(
        cli, "equidist --z 2 --q 5 --x 1e5 --workers 1 --format json -o '" +
                 w1.string() + "'",
        dir, "det1");
    const CliRun run4 = run_cli(
        cli, "equidist --z 2 --q 5 --x 1e5 --workers 4 --format json -o '" +
                 w4.string() + "'",
        dir, "det4");
    if (run1.exit_code != 0 || run4.exit_code != 0) {
      return "determinism runs exited " + std::to_string(run1.exit_code) + "/" +
             std::to_string(run4.exit_code);
    }
    const std::string bytes1 = read_file(w1);
    const std::string bytes4 = read_file(w4);
    if (bytes1.empty() || bytes1 != bytes4) {
      return "worker counts 1 and 4 produced different report bytes";
    }

    const CliRun pi1 = run_cli(cli, "sieve --x 100000 --workers 1", dir, "pi1");
    const CliRun pi4 = run_cli(cli, "sieve --x 100000 --workers 4", dir, "pi4");
    if (pi1.out != pi4.out) {
      return "sieve output differs across worker counts";
    }
    return "";
  });

  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
