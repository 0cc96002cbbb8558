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

#include "latticeprime/report_io.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <json.hpp>

#include "latticeprime/errors.hpp"

namespace latticeprime {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

const ordered_json& require_field(const ordered_json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ArgumentError(std::string("report_from_json: missing field \"") + key + "\"");
  }
  return *it;
}

double read_number(const ordered_json& j, const char* key) {
  const ordered_json& v = require_field(j, key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) {
    throw ArgumentError(std::string("report_from_json: field \"") + key +
                        "\" must be a number or null");
  }
  return v.get<double>();
}

std::uint64_t read_uint(const ordered_json& j, const char* key) {
  const ordered_json& v = require_field(j, key);
  if (!v.is_number_unsigned()) {
    throw ArgumentError(std::string("report_from_json: field \"") + key +
                        "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Weight read_weight(const ordered_json& j) {
  const ordered_json& v = require_field(j, "weight");
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == weight_name(Weight::theta)) return Weight::theta;
    if (s == weight_name(Weight::lambda)) return Weight::lambda;
  }
  throw ArgumentError("report_from_json: field \"weight\" must be \"theta\" or \"lambda\"");
}

}  // namespace

std::string report_to_json(const EquidistributionReport& rep, int indent) {
  ordered_json j;
  j["q"] = rep.q;
  j["z"] = rep.z;
  j["x"] = rep.x;
  j["weight"] = weight_name(rep.weight);
  ordered_json rows = ordered_json::array();
  for (const LabelRow& row : rep.labels) {
    ordered_json r;
    r["label"] = row.label;
    r["multiplicity"] = row.multiplicity;
    r["raw_count"] = row.raw_count;
    r["psi_mass"] = to_number(row.psi_mass);
    r["uniform_expected"] = to_number(row.uniform_expected);
    r["weighted_expected"] = to_number(row.weighted_expected);
    r["rel_dev_uniform"] = to_number(row.rel_dev_uniform);
    r["rel_dev_weighted"] = to_number(row.rel_dev_weighted);
    rows.push_back(std::move(r));
  }
  j["labels"] = std::move(rows);
  j["chi2_uniform"] = to_number(rep.chi2_uniform);
  j["chi2_weighted"] = to_number(rep.chi2_weighted);
  j["excluded_mass"] = rep.excluded_mass;
  j["theta_hat"] = to_number(rep.theta_hat);
  j["excluded_psi_mass"] = to_number(rep.excluded_psi_mass);
  j["degenerate"] = rep.degenerate;
  j["max_abs_rel_dev_uniform"] = to_number(rep.max_abs_rel_dev_uniform);
  j["max_abs_rel_dev_weighted"] = to_number(rep.max_abs_rel_dev_weighted);
  return j.dump(indent) + "\n";
}

EquidistributionReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ArgumentError(std::string("report_from_json: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("report_from_json: top level must be an object");

  EquidistributionReport rep;
  rep.q = read_uint(j, "q");
  rep.z = read_uint(j, "z");
  rep.x = read_uint(j, "x");
  rep.weight = read_weight(j);

  const ordered_json& rows = require_field(j, "labels");
  if (!rows.is_array()) throw ArgumentError("report_from_json: \"labels\" must be an array");
  rep.labels.reserve(rows.size());
  for (const ordered_json& r : rows) {
    if (!r.is_object()) {
      throw ArgumentError("report_from_json: label entries must be objects");
    }
    LabelRow row;
    row.label = read_uint(r, "label");
    row.multiplicity = read_uint(r, "multiplicity");
    row.raw_count = read_uint(r, "raw_count");
    row.psi_mass = read_number(r, "psi_mass");
    row.uniform_expected = read_number(r, "uniform_expected");
    row.weighted_expected = read_number(r, "weighted_expected");
    row.rel_dev_uniform = read_number(r, "rel_dev_uniform");
    row.rel_dev_weighted = read_number(r, "rel_dev_weighted");
    rep.labels.push_back(row);
  }

  rep.chi2_uniform = read_number(j, "chi2_uniform");
  rep.chi2_weighted = read_number(j, "chi2_weighted");
  rep.excluded_mass = read_uint(j, "excluded_mass");
  rep.theta_hat = read_number(j, "theta_hat");

  rep.excluded_psi_mass =
      j.contains("excluded_psi_mass") ? read_number(j, "excluded_psi_mass") : 0.0;
  if (j.contains("degenerate")) {
    const ordered_json& d = j["degenerate"];
    if (!d.is_boolean()) {
      throw ArgumentError("report_from_json: \"degenerate\" must be a boolean");
    }
    rep.degenerate = d.get<bool>();
  } else {
    rep.degenerate = std::isnan(rep.chi2_uniform);
  }
  rep.max_abs_rel_dev_uniform =
      j.contains("max_abs_rel_dev_uniform") ? read_number(j, "max_abs_rel_dev_uniform") : 0.0;
  rep.max_abs_rel_dev_weighted =
      j.contains("max_abs_rel_dev_weighted") ? read_number(j, "max_abs_rel_dev_weighted") : 0.0;
  return rep;
}

std::string report_to_csv(const EquidistributionReport& rep) {
  const auto cell = [](double v) -> std::string {
    if (std::isnan(v)) return "";
    return ordered_json(v).dump();
  };
  std::string out =
      "label,multiplicity,raw_count,psi_mass,uniform_expected,"
      "weighted_expected,rel_dev_uniform,rel_dev_weighted\n";
  for (const LabelRow& row : rep.labels) {
    out += std::to_string(row.label);
    out += ',';
    out += std::to_string(row.multiplicity);
    out += ',';
    out += std::to_string(row.raw_count);
    out += ',';
    out += cell(row.psi_mass);
    out += ',';
    out += cell(row.uniform_expected);
    out += ',';
    out += cell(row.weighted_expected);
    out += ',';
    out += cell(row.rel_dev_uniform);
    out += ',';
    out += cell(row.rel_dev_weighted);
    out += '\n';
  }
  return out;
}

}  // namespace latticeprime
