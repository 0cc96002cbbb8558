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

// latticeprime: command line front end.
//
//   sieve     build a primality table, print pi(x), manage the disk cache
//   verify    run the exact-identity suites (decomposition, triangle
//             rearrangement, class counting, character orthogonality)
//   equidist  bucket prime pairs (p, p+z) into product classes mod q and
//             report observed vs predicted distribution
//   constants print the twin-prime partial product, the gap-corrected
//             singular value, pair-count ratios, and empirical constants
//
// Exit codes: 0 success, 1 verification failure, 2 argument error,
// 3 infeasible configuration. Data goes to stdout or the output file,
// diagnostics to stderr, never mixed. All output is deterministic: the
// worker count never changes an emitted byte.

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latticeprime/area.hpp"
#include "latticeprime/characters.hpp"
#include "latticeprime/equidist.hpp"
#include "latticeprime/errors.hpp"
#include "latticeprime/report_io.hpp"
#include "latticeprime/residues.hpp"
#include "latticeprime/roots.hpp"
#include "latticeprime/sieve.hpp"

namespace lp = latticeprime;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitArgument = 2;
constexpr int kExitInfeasible = 3;

// Accepts plain integers and scientific notation ("1e6", "2.5e3") as long
// as the value is integral and fits an unsigned 64-bit range.
std::uint64_t parse_count(const std::string& s, const char* what) {
  errno = 0;
  char* end = nullptr;
  const long double v = std::strtold(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
    throw lp::ArgumentError(std::string(what) + ": cannot parse \"" + s + "\"");
  }
  if (!(v >= 0.0L) || v > 1.8e19L) {
    throw lp::ArgumentError(std::string(what) + ": value out of range: \"" + s + "\"");
  }
  const long double rounded = std::floor(v + 0.5L);
  if (std::fabs(static_cast<double>(v - rounded)) > 1e-6) {
    throw lp::ArgumentError(std::string(what) + ": not an integer: \"" + s + "\"");
  }
  return static_cast<std::uint64_t>(rounded);
}

// Shortest round-trip rendering, shared with the JSON writer so every
// format prints identical digits. NaN renders as "null".
std::string render_double(double v) { return nlohmann::ordered_json(v).dump(); }

// Bare file names resolve into LATTICEPRIME_CACHE_DIR when it is set;
// anything with a directory separator is used as given.
std::string resolve_cache_path(const std::string& name) {
  if (name.find('/') == std::string::npos) {
    if (const char* dir = std::getenv("LATTICEPRIME_CACHE_DIR"); dir != nullptr && *dir != '\0') {
      return (std::filesystem::path(dir) / name).string();
    }
  }
  return name;
}

// Loads the cache when it exists and covers the bound; otherwise builds
// and, when a cache path was given, writes it back.
lp::PrimeTable obtain_table(std::uint64_t bound, const std::string& cache,
                            const lp::SieveOptions& opts) {
  if (cache.empty()) return lp::build_table(bound, opts);
  const std::string path = resolve_cache_path(cache);
  if (std::filesystem::exists(path)) {
    try {
      lp::PrimeTable t = lp::load_table(path);
      if (t.bound() >= bound) {
        std::cerr << "loaded sieve cache " << path << " (bound " << t.bound() << ")\n";
        return t;
      }
      std::cerr << "sieve cache " << path << " covers only " << t.bound()
                << ", rebuilding to " << bound << "\n";
    } catch (const lp::ArgumentError& e) {
      std::cerr << "sieve cache rejected (" << e.what() << "), rebuilding\n";
    }
  }
  lp::PrimeTable t = lp::build_table(bound, opts);
  lp::save_table(t, path);
  std::cerr << "wrote sieve cache " << path << "\n";
  return t;
}

std::vector<std::uint64_t> parse_grid(const std::vector<std::string>& xs,
                                      const char* what) {
  std::vector<std::uint64_t> grid;
  if (xs.empty()) {
    grid = {10000, 100000, 1000000, 10000000};
  } else {
    grid.reserve(xs.size());
    for (const std::string& s : xs) grid.push_back(parse_count(s, what));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

lp::Weight parse_weight(const std::string& s) {
  if (s == "theta") return lp::Weight::theta;
  if (s == "lambda") return lp::Weight::lambda;
  throw lp::ArgumentError("--weight must be \"theta\" or \"lambda\"");
}

// ---------------------------------------------------------------------------
// sieve

struct SieveConfig {
  std::string x;
  std::string cache;
  std::string segment;
  unsigned workers = 0;
};

int cmd_sieve(const SieveConfig& cfg) {
  const std::uint64_t x = parse_count(cfg.x, "sieve --x");
  lp::SieveOptions opts;
  opts.workers = cfg.workers;
  if (!cfg.segment.empty()) {
    opts.segment_odds = parse_count(cfg.segment, "sieve --segment");
  }
  const lp::PrimeTable t = obtain_table(x, cfg.cache, opts);
  std::cout << "pi(" << x << ") = " << t.count_primes_upto(x) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
  std::uint64_t q_max = 100;
  std::uint64_t trials = 50;
  std::uint64_t seed = 20260819;
  bool inject_fault = false;
};

int cmd_verify(const VerifyConfig& cfg) {
  if (cfg.q_max < 2) {
    throw lp::ArgumentError("verify: --q-max must be >= 2 (the modulus range starts at 2)");
  }
  if (cfg.trials < 1) throw lp::ArgumentError("verify: --trials must be >= 1");

  std::mt19937_64 rng(cfg.seed);
  bool all_pass = true;
  const auto report = [&](const char* name, bool pass, const std::string& detail) {
    std::cout << "check=" << name << " status=" << (pass ? "pass" : "fail");
    if (!pass && !detail.empty()) std::cout << " detail=\"" << detail << "\"";
    std::cout << "\n";
    all_pass = all_pass && pass;
  };

  {
    bool pass = true;
    std::string detail;
    std::uniform_int_distribution<std::int64_t> value(-9, 9);
    std::uniform_int_distribution<std::uint64_t> bound(2, 300);
    for (std::uint64_t trial = 0; trial < cfg.trials && pass; ++trial) {
      const std::uint64_t x = bound(rng);
      std::vector<std::int64_t> vals(x + 1, 0);
      for (std::uint64_t n = 1; n <= x; ++n) vals[n] = value(rng);
      const lp::DecompositionCheck check = lp::verify_decomposition(
          [&](std::uint64_t n) { return vals[n]; }, x);
      if (!check.equal()) {
        pass = false;
        detail = "trial " + std::to_string(trial) + " x=" + std::to_string(x);
      }
    }
    report("decomposition", pass, detail);
  }

  {
    bool pass = true;
    std::string detail;
    std::uniform_real_distribution<double> direction(-1.0, 1.0);
    std::uniform_real_distribution<double> magnitude(0.0, 10.0);
    std::uniform_int_distribution<std::size_t> length(1, 50);
    for (std::uint64_t trial = 0; trial < cfg.trials && pass; ++trial) {
      const std::size_t n = length(rng);
      double ux = 0.0;
      double uy = 0.0;
      while (ux == 0.0 && uy == 0.0) {
        ux = direction(rng);
        uy = direction(rng);
      }
      std::vector<double> r(n);
      std::vector<double> h(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = magnitude(rng);  // one shared ray: t >= 0
        r[i] = t * ux;
        h[i] = t * uy;
      }
      const lp::SequencePair pair(std::move(r), std::move(h));
      if (!pair.admissible()) {
        pass = false;
        detail = "generator produced inadmissible pair, trial " + std::to_string(trial);
        break;
      }
      const lp::TriangleIdentityCheck check = lp::verify_triangle_identity(pair);
      if (!check.passes()) {
        pass = false;
        detail = "trial " + std::to_string(trial) + " residual=" + render_double(check.residual());
      }
    }
    report("triangle", pass, detail);
  }

  {
    bool pass = true;
    std::string detail;
    for (std::uint64_t q = 2; q <= cfg.q_max && pass; ++q) {
      const lp::Modulus m = lp::make_modulus(q);
      const lp::LatticeClassTable table = lp::build_classes(m);
      std::uint64_t mult_sum = 0;
      for (const lp::ClassDescriptor& d : table.classes()) mult_sum += d.multiplicity;
      if (table.class_count() != m.phi) {
        pass = false;
        detail = "class count != phi at q=" + std::to_string(q);
      } else if (mult_sum != lp::omega(m)) {
        pass = false;
        detail = "multiplicity sum != omega at q=" + std::to_string(q);
      }
    }
    report("class_counts", pass, detail);
  }

  {
    bool pass = true;
    std::string detail;
    for (std::uint64_t q = 2; q <= cfg.q_max && pass; ++q) {
      const lp::Modulus m = lp::make_modulus(q);
      const std::vector<lp::Character> chars = lp::characters(m);
      if (chars.size() != m.phi) {
        pass = false;
        detail = "character count != phi at q=" + std::to_string(q);
        break;
      }
      for (std::size_t i = 0; i < chars.size(); ++i) {
        lp::RootOfUnitySum sum = lp::orthogonality_pairs(chars[i], m);
        if (cfg.inject_fault && q == 5 && i == 1) sum.histogram()[0] += 1;
        const auto value = sum.exact_value();
        const std::int64_t want =
            chars[i].is_principal() ? static_cast<std::int64_t>(m.phi) : 0;
        if (!value.has_value() || *value != want) {
          pass = false;
          detail = "orthogonality broke at q=" + std::to_string(q) +
                   " character " + std::to_string(i) +
                   (value.has_value() ? " value=" + std::to_string(*value)
                                      : " value=indeterminate");
          break;
        }
      }
    }
    report("orthogonality", pass, detail);
  }

  return all_pass ? 0 : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// equidist

struct EquidistConfig {
  std::string z;
  std::string q;
  std::vector<std::string> xs;
  std::string weight = "lambda";
  std::string format = "table";
  std::string output;
  std::string cache;
  unsigned workers = 0;
};

std::string render_table(const lp::EquidistributionReport& rep) {
  std::ostringstream out;
  out << "q=" << rep.q << " z=" << rep.z << " x=" << rep.x
      << " weight=" << lp::weight_name(rep.weight) << "\n";
  const char* names[] = {"label",            "multiplicity",      "raw_count",
                         "psi_mass",         "uniform_expected",  "weighted_expected",
                         "rel_dev_uniform",  "rel_dev_weighted"};
  for (std::size_t i = 0; i < 8; ++i) out << (i ? " " : "") << std::setw(17) << names[i];
  out << "\n";
  for (const lp::LabelRow& row : rep.labels) {
    out << std::setw(17) << row.label << " " << std::setw(17) << row.multiplicity
        << " " << std::setw(17) << row.raw_count;
    for (const double v : {row.psi_mass, row.uniform_expected, row.weighted_expected,
                           row.rel_dev_uniform, row.rel_dev_weighted}) {
      out << " " << std::setw(17) << render_double(v);
    }
    out << "\n";
  }
  out << "excluded_mass=" << rep.excluded_mass
      << " excluded_psi_mass=" << render_double(rep.excluded_psi_mass) << "\n";
  out << "chi2_uniform=" << render_double(rep.chi2_uniform)
      << " chi2_weighted=" << render_double(rep.chi2_weighted)
      << " theta_hat=" << render_double(rep.theta_hat)
      << " degenerate=" << (rep.degenerate ? "true" : "false") << "\n";
  return out.str();
}

// With one grid point the output path is used verbatim; with several, each
// point writes <stem>-x<value><ext> so no report overwrites another.
std::string point_path(const std::string& base, std::uint64_t x, bool multi) {
  if (!multi) return base;
  const std::filesystem::path p(base);
  const std::filesystem::path named =
      p.parent_path() / (p.stem().string() + "-x" + std::to_string(x) +
                         p.extension().string());
  return named.string();
}

int cmd_equidist(const EquidistConfig& cfg) {
  const std::uint64_t z = parse_count(cfg.z, "equidist --z");
  const std::uint64_t q = parse_count(cfg.q, "equidist --q");
  const std::vector<std::uint64_t> grid = parse_grid(cfg.xs, "equidist --x");
  const lp::Weight weight = parse_weight(cfg.weight);
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "table") {
    throw lp::ArgumentError("equidist --format must be json, csv, or table");
  }

  const lp::Modulus m = lp::make_modulus(q);
  const lp::AdmissibleClassSet adm = lp::admissible_classes(z, m);
  if (adm.classes.empty()) {
    std::cerr << "infeasible: no residue a has both a and a+" << z
              << " coprime to " << q << ", so no class can receive pairs\n";
    return kExitInfeasible;
  }

  lp::SieveOptions opts;
  opts.workers = cfg.workers;
  const lp::PrimeTable table = obtain_table(grid.back() + z, cfg.cache, opts);

  const bool multi = grid.size() > 1;
  for (const std::uint64_t x : grid) {
    const lp::ClassCounts counts =
        lp::bucket_pairs(table, z, q, x, weight, cfg.workers);
    const lp::EquidistributionReport rep = lp::build_report(counts, adm);

    std::string payload;
    if (cfg.format == "json") {
      payload = lp::report_to_json(rep);
    } else if (cfg.format == "csv") {
      payload = lp::report_to_csv(rep);
    } else {
      payload = render_table(rep);
    }

    if (cfg.output.empty()) {
      std::cout << payload;
    } else {
      const std::string path = point_path(cfg.output, x, multi);
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw lp::ArgumentError("equidist: cannot open output file " + path);
      out << payload;
      if (!out) throw lp::ArgumentError("equidist: write failed for " + path);
      std::cerr << "wrote " << path << "\n";
    }
    std::cerr << "x=" << x << " model=uniform chi2=" << render_double(rep.chi2_uniform)
              << "\n";
    std::cerr << "x=" << x << " model=multiplicity_weighted chi2="
              << render_double(rep.chi2_weighted) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// constants

struct ConstantsConfig {
  std::string z;
  std::string cutoff = "1e7";
  std::vector<std::string> xs;
  std::string weight = "theta";
  std::string cache;
  unsigned workers = 0;
};

int cmd_constants(const ConstantsConfig& cfg) {
  const std::uint64_t z = parse_count(cfg.z, "constants --z");
  const std::uint64_t cutoff = parse_count(cfg.cutoff, "constants --cutoff");
  const lp::Weight weight = parse_weight(cfg.weight);

  // Rejects odd gaps with an argument error (exit 2).
  const lp::SingularSeries sing = lp::singular_series(z, cutoff);
  std::cout << "pi2_partial = " << render_double(sing.pi2_partial) << "\n";
  std::cout << "singular_series(z=" << z << ") = " << render_double(sing.value) << "\n";

  const std::vector<std::uint64_t> grid = parse_grid(cfg.xs, "constants --x");
  lp::SieveOptions opts;
  opts.workers = cfg.workers;
  const lp::PrimeTable table = obtain_table(grid.back() + z, cfg.cache, opts);

  const lp::BrunReport brun = lp::brun_check(
      table, z, std::span<const std::uint64_t>(grid.data(), grid.size()), cutoff);
  for (const lp::BrunPoint& point : brun.points) {
    std::cout << "brun_ratio x=" << point.x << " pairs=" << point.pair_count
              << " ratio=" << render_double(point.ratio) << "\n";
  }

  for (const std::uint64_t x : grid) {
    try {
      const double c = lp::empirical_area_constant(table, x, z, weight);
      std::cout << "c_emp x=" << x << " weight=" << lp::weight_name(weight)
                << " value=" << render_double(c) << "\n";
    } catch (const lp::HypothesisError& e) {
      std::cerr << "c_emp x=" << x << " skipped: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime pair distribution toolkit"};
  app.require_subcommand(1);

  SieveConfig sieve_cfg;
  CLI::App* sieve_cmd =
      app.add_subcommand("sieve", "Build a primality table and print pi(x)");
  sieve_cmd->add_option("--x", sieve_cfg.x, "Upper bound (integer or scientific)")
      ->required();
  sieve_cmd->add_option("--cache", sieve_cfg.cache,
                        "Sieve cache file; bare names resolve in LATTICEPRIME_CACHE_DIR");
  sieve_cmd->add_option("--segment", sieve_cfg.segment, "Odd numbers per sieve segment");
  sieve_cmd->add_option("--workers", sieve_cfg.workers, "Worker threads (0 = hardware)");

  VerifyConfig verify_cfg;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the exact identity and counting suites");
  verify_cmd->add_option("--q-max", verify_cfg.q_max, "Check all moduli 2..q-max")
      ->capture_default_str();
  verify_cmd->add_option("--trials", verify_cfg.trials, "Random trials per identity")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_cfg.seed, "Random seed")
      ->capture_default_str();
  verify_cmd->add_flag("--inject-fault", verify_cfg.inject_fault,
                       "Corrupt one character histogram (test hook)")
      ->group("");

  EquidistConfig equidist_cfg;
  CLI::App* equidist_cmd = app.add_subcommand(
      "equidist", "Bucket prime pairs (p, p+z) into classes mod q and report");
  equidist_cmd->add_option("--z", equidist_cfg.z, "Pair gap")->required();
  equidist_cmd->add_option("--q", equidist_cfg.q, "Modulus")->required();
  equidist_cmd->add_option("--x", equidist_cfg.xs,
                           "Grid of bounds (repeatable; default 1e4 1e5 1e6 1e7)")
      ->delimiter(',');
  equidist_cmd->add_option("--weight", equidist_cfg.weight, "theta or lambda")
      ->capture_default_str();
  equidist_cmd->add_option("--format", equidist_cfg.format, "json, csv, or table")
      ->capture_default_str();
  equidist_cmd->add_option("-o,--output", equidist_cfg.output,
                           "Output file (default stdout); grids write one file per x");
  equidist_cmd->add_option("--cache", equidist_cfg.cache, "Sieve cache file");
  equidist_cmd->add_option("--workers", equidist_cfg.workers,
                           "Worker threads (0 = hardware)");

  ConstantsConfig constants_cfg;
  CLI::App* constants_cmd = app.add_subcommand(
      "constants", "Print singular series, pair-count ratios, empirical constants");
  constants_cmd->add_option("--z", constants_cfg.z, "Pair gap (even)")->required();
  constants_cmd->add_option("--cutoff", constants_cfg.cutoff,
                            "Prime cutoff for the partial product")
      ->capture_default_str();
  constants_cmd->add_option("--x", constants_cfg.xs,
                            "Grid of bounds (default 1e4 1e5 1e6 1e7)")
      ->delimiter(',');
  constants_cmd->add_option("--weight", constants_cfg.weight,
                            "Weight for the empirical constant")
      ->capture_default_str();
  constants_cmd->add_option("--cache", constants_cfg.cache, "Sieve cache file");
  constants_cmd->add_option("--workers", constants_cfg.workers,
                            "Worker threads (0 = hardware)");

  int rc = 0;
  sieve_cmd->callback([&] { rc = cmd_sieve(sieve_cfg); });
  verify_cmd->callback([&] { rc = cmd_verify(verify_cfg); });
  equidist_cmd->callback([&] { rc = cmd_equidist(equidist_cfg); });
  constants_cmd->callback([&] { rc = cmd_constants(constants_cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or the help text
    return code == 0 ? 0 : kExitArgument;
  } catch (const lp::ResourceError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const lp::HypothesisError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  }
  return rc;
}
