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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqis/bell.hpp"
#include "dqis/dqis.hpp"
#include "dqis/graph.hpp"

namespace dqis {

/// A built-in Bell operator with the data needed to analyse it.
struct BellFixture {
  std::string name;
  std::optional<Graph> graph;
  std::vector<PauliString> generators;
  Recipe recipe;  // 0-based
  BellOperator op;
  /// Extra commuting generators that complete the stabilizer to n elements.
  std::vector<PauliString> completion;
  /// Generators that appear in the recipe, 0-based.
  std::vector<std::size_t> constrained;
  /// States expected to reach the algebraic maximum.
  std::vector<StateVector> code_space;
};

/// cluster4_phi1, cluster4_phi2, fiveq, steane, shor.
std::vector<std::string> bell_fixture_names();
BellFixture bell_fixture(std::string_view name);
/// "cluster4" expands to both cluster operators; other names to themselves.
std::vector<BellFixture> bell_fixture_group(std::string_view name);

/// |0_L> of the five-qubit code, as 16 signed amplitudes of 1/4.
StateVector fiveq_zero();
/// XXXXX |0_L>.
StateVector fiveq_one();

struct DqisFixture {
  std::string name;
  CodeSpace code;
  TeleportConfig config;
};

/// cluster4, fiveq, ghz_negative.
std::vector<std::string> dqis_fixture_names();
DqisFixture dqis_fixture(std::string_view name);

}  // namespace dqis
