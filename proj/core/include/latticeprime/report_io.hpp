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

// Stable serialization of equidistribution reports.
//
// JSON object layout (field names are a published contract):
//   {"q", "z", "x", "weight",
//    "labels": [{"label", "multiplicity", "raw_count", "psi_mass",
//                "uniform_expected", "weighted_expected",
//                "rel_dev_uniform", "rel_dev_weighted"}, ...],
//    "chi2_uniform", "chi2_weighted", "excluded_mass", "theta_hat"}
// plus the supplementary fields "excluded_psi_mass", "degenerate",
// "max_abs_rel_dev_uniform", "max_abs_rel_dev_weighted". NaN values are
// serialized as JSON null and parsed back to NaN, so degenerate reports
// round-trip field-exactly. Output is deterministic: fixed field order,
// shortest round-trip number rendering.

#pragma once

#include <string>

#include "latticeprime/equidist.hpp"

namespace latticeprime {

// indent >= 0 pretty-prints with that many spaces; negative emits the
// compact single-line form. Always ends with a newline.
std::string report_to_json(const EquidistributionReport& rep, int indent = 2);

// Inverse of report_to_json. Requires every contract field with the right
// type; the supplementary fields are optional (degenerate defaults to
// "chi2_uniform is null"). Throws ArgumentError on malformed input.
EquidistributionReport report_from_json(const std::string& text);

// One row per label under the header
//   label,multiplicity,raw_count,psi_mass,uniform_expected,
//   weighted_expected,rel_dev_uniform,rel_dev_weighted
// (a single line; wrapped here for readability). NaN renders as an empty
// cell. Write-only: CSV drops the report metadata by design.
std::string report_to_csv(const EquidistributionReport& rep);

}  // namespace latticeprime
