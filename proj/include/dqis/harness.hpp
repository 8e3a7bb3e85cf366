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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dqis/attack.hpp"
#include "dqis/bell.hpp"
#include "dqis/dqis.hpp"

namespace dqis {

/// Composite setting strings per party, one letter per owned qubit.
using MeasurementSets = std::map<std::string, std::vector<std::string>>;

/// A channel, its teleportation configuration and the Bell operator used to
/// test it.
struct BellScenario {
  std::string name;
  CodeSpace code;
  TeleportConfig config;
  BellOperator op;
  MeasurementSets default_sets;
};

/// cluster4 (tested with the second cluster operator) or fiveq.
BellScenario bell_scenario(std::string_view name);

/// The letters each party needs for every term, in order of first appearance.
MeasurementSets sets_from_terms(const BellOperator& op, const TeleportConfig& cfg);

struct ScenarioConfig {
  std::string scenario = "cluster4";
  std::size_t copies = 4097;
  std::optional<double> threshold;  // default: midpoint of the LR bound and m
  std::uint64_t seed = 1;
  std::optional<AttackParams> attack;
  std::string announcer = "Alice";  // Alice or Dolly picks the reserved copy
  MeasurementSets measurement_sets;  // empty entries fall back to the defaults
};

/// Index of the term whose per-party letters equal the joint composite
/// setting, if any. Throws std::invalid_argument for a setting outside the
/// party's declared set.
std::optional<std::size_t> sift(const BellScenario& sc, const MeasurementSets& declared,
                                const std::map<std::string, std::string>& settings);

struct SiftedRecord {
  std::size_t term = 0;
  int product = 1;  // product of the measured +-1 outcomes, sign not applied
};

struct TermStatistic {
  std::size_t count = 0;
  double mean = 0.0;  // signed
  double standard_error = 0.0;
};

struct ViolationEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::vector<TermStatistic> terms;
  bool complete = false;  // every term has at least one record
};

/// Sum of per-term signed means with standard errors added in quadrature.
/// Throws std::invalid_argument when `records` is empty.
ViolationEstimate estimate_violation(const BellOperator& op, std::span<const SiftedRecord> records);

enum class Decision { Proceed, Abort };
std::string to_string(Decision d);

struct Message {
  std::size_t round = 0;
  std::string sender;
  std::string receiver;  // "*" for a broadcast
  std::uint64_t tick = 0;
  std::string kind;
  nlohmann::json payload;
};

struct CopyRecord {
  std::size_t serial = 0;
  std::map<std::string, std::string> settings;
  std::map<std::string, std::vector<int>> outcomes;
  std::optional<std::size_t> term;
};

struct BellTestReport {
  std::size_t measured = 0;
  std::size_t sifted = 0;
  double sift_fraction = 0.0;
  double estimate = 0.0;
  double standard_error = 0.0;
  double threshold = 0.0;
  int lr_bound = 0;
  std::vector<TermStatistic> terms;
  Decision decision = Decision::Abort;
  std::string reason;
};

struct RecoveryRecord {
  std::string outcome;
  double probability = 0.0;
  std::string key;
  double fidelity = 0.0;
};

struct Transcript {
  std::string scenario;
  std::size_t copies = 0;
  std::uint64_t seed = 0;
  std::optional<AttackParams> attack;
  std::string announcer;
  std::size_t reserved = 0;
  std::string key;  // the dealer's one-time-pad key for this run
  MeasurementSets measurement_sets;
  std::vector<PauliString> terms;
  std::map<std::string, std::vector<std::size_t>> ownership;  // 0-based code qubits
  std::vector<Message> messages;
  std::vector<CopyRecord> records;
  BellTestReport bell;
  std::optional<RecoveryRecord> recovery;
};

inline constexpr std::string_view kTranscriptSchema = "dqis.transcript/1";

/// Simulates the whole protocol. Configuration problems raise ConfigError
/// before any message is exchanged; an Abort is a normal result.
Transcript run_protocol(const ScenarioConfig& cfg, const Secret& s);
Transcript run_protocol(const BellScenario& sc, const ScenarioConfig& cfg, const Secret& s);

/// Timing rules of the message log: ticks never decrease per sender, each
/// copy's outcome messages share one round and tick, settings for a copy
/// appear only after all of its outcomes, and the decision matches the
/// estimate. Returns one line per violation.
std::vector<std::string> validate_transcript(const Transcript& t);

nlohmann::json to_json(const Transcript& t);

}  // namespace dqis
