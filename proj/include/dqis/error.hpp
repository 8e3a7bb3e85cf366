// Copyright 2026 The DQIS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dqis {

/// Raised for malformed scenario files, fixture names and CLI configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerances shared by the checks in this library.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kExpectationTol = 1e-10;
inline constexpr double kFidelityTol = 1e-9;

}  // namespace dqis
