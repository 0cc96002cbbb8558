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

#include <stdexcept>
#include <string>

namespace latticeprime {

// Argument falls outside a table bound or an evaluation range.
class BoundError : public std::out_of_range {
 public:
  explicit BoundError(const std::string& msg) : std::out_of_range(msg) {}
};

// Argument has an invalid value: wrong parity, empty range, below a minimum.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input violates a unit or coprimality requirement.
class AdmissibilityError : public std::invalid_argument {
 public:
  explicit AdmissibilityError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Request exceeds a documented implementation ceiling (table too large).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A quantity the computation divides by is identically zero
// (empty correlation, no admissible data).
class HypothesisError : public std::domain_error {
 public:
  explicit HypothesisError(const std::string& msg) : std::domain_error(msg) {}
};

// Not enough data points for the requested fit.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace latticeprime
