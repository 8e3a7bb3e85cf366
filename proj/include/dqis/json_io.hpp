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
#include <vector>

#include "json.hpp"

#include "dqis/bell.hpp"
#include "dqis/dqis.hpp"
#include "dqis/graph.hpp"
#include "dqis/harness.hpp"

namespace dqis {

// Qubits and vertices are 1-based in every file format.

/// {"n": 4, "edges": [[1, 2], [2, 3]]}
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

struct BellSpec {
  std::vector<PauliString> generators;
  BellOperator op;
};

/// {"generators": ["XZII", ...], "recipe": [[1, 3], ...], "terms": [...]}.
/// When "terms" is present it must agree with the recipe products.
BellSpec bell_from_json(const nlohmann::json& j);
nlohmann::json bell_to_json(const BellSpec& b);

/// [[bitstring, re, im], ...] over nonzero amplitudes, sorted by bitstring.
nlohmann::json state_to_json(const StateVector& s);
StateVector state_from_json(const nlohmann::json& j, std::size_t n);

/// [[re, im], ...]
Secret secret_from_json(const nlohmann::json& j);

struct ScenarioFile {
  CodeSpace code;
  TeleportConfig config;
  std::optional<Secret> secret;
  std::optional<BellSpec> bell;
  MeasurementSets measurement_sets;
};

/// {"codespace": {...}, "config": {"parties": [...], "ownership": {...},
///  "bases": {...}}, "secret": [...], "bell": {...}, "measurement_sets": {...}}
///
/// The code space is one of {"fixture": name}, {"graph": graph,
/// "signatures": ["0000", ...]} or {"codewords": [state, ...]}.
ScenarioFile scenario_from_json(const nlohmann::json& j);
ScenarioFile load_scenario(const std::string& path);

}  // namespace dqis
