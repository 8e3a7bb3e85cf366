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

#include "dqis/fixtures.hpp"

#include <cmath>
#include <utility>

#include "dqis/error.hpp"

namespace dqis {

namespace {

std::vector<PauliString> words(std::initializer_list<const char*> text) {
  std::vector<PauliString> out;
  for (const char* t : text) out.push_back(PauliString::parse(t));
  return out;
}

Recipe one_based(std::initializer_list<std::initializer_list<std::size_t>> rows) {
  Recipe out;
  for (const auto& r : rows) {
    std::vector<std::size_t> row;
    for (auto i : r) row.push_back(i - 1);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::size_t> used_generators(const Recipe& recipe, std::size_t count) {
  std::vector<bool> used(count, false);
  for (const auto& row : recipe) {
    for (auto i : row) used[i] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (used[i]) out.push_back(i);
  }
  return out;
}

BellFixture make(std::string name, std::optional<Graph> graph, std::vector<PauliString> gens,
                 Recipe recipe, std::vector<PauliString> completion) {
  BellOperator op = build_bell(gens, recipe);
  auto constrained = used_generators(recipe, gens.size());
  return BellFixture{std::move(name), std::move(graph), std::move(gens), std::move(recipe),
                     std::move(op), std::move(completion), std::move(constrained), {}};
}

BellFixture cluster(std::string name, Recipe recipe) {
  Graph g = linear_cluster(4);
  BellFixture f = make(std::move(name), g, generators(g), std::move(recipe), {});
  for (const auto& sig : degenerate_signatures(f.op, f.generators).signatures) {
    f.code_space.push_back(basis_state(g, sig));
  }
  return f;
}

// Code space fixed by the lexicographically first degenerate signature.
BellFixture stabilizer_code(std::string name, std::vector<PauliString> gens, Recipe recipe,
                            std::vector<PauliString> completion) {
  BellFixture f = make(std::move(name), std::nullopt, std::move(gens), std::move(recipe),
                       std::move(completion));
  const auto deg = degenerate_signatures(f.op, f.generators);
  if (deg.signatures.empty()) throw std::logic_error("fixture " + f.name + " has no degeneracy");
  const auto signs = deg.signatures.front().signs();
  f.code_space = stabilizer_eigenspace(f.generators, signs);
  return f;
}

}  // namespace

std::vector<std::string> bell_fixture_names() {
  return {"cluster4_phi1", "cluster4_phi2", "fiveq", "steane", "shor"};
}

BellFixture bell_fixture(std::string_view name) {
  if (name == "cluster4_phi1") return cluster("cluster4_phi1", one_based({{1, 3}, {1, 3, 4}, {2, 3}, {2, 3, 4}}));
  if (name == "cluster4_phi2") {
    return cluster("cluster4_phi2", one_based({{2, 4}, {1, 2, 4}, {1, 2, 3, 4}, {2, 3, 4}}));
  }
  if (name == "fiveq") {
    BellFixture f = make("fiveq", std::nullopt, words({"XYYXI", "IXYYX", "ZYIYZ", "XYZYX"}),
                         one_based({{1, 3, 4}, {1, 4}, {2, 3}, {1, 2}, {1}}), {});
    f.code_space = {fiveq_zero(), fiveq_one()};
    return f;
  }
  if (name == "steane") {
    return stabilizer_code(
        "steane", words({"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"}),
        one_based({{1, 2, 4}, {1, 2, 4, 5}, {1, 2}, {3, 5, 2}, {3, 5, 1}, {5}}), words({"ZZZZZZZ"}));
  }
  if (name == "shor") {
    return stabilizer_code("shor",
                           words({"ZZIIIIIII", "IZZIIIIII", "IIIZZIIII", "IIIIZZIII", "IIIIIIZZI",
                                  "IIIIIIIZZ", "XXXXXXIII", "IIIXXXXXX"}),
                           one_based({{3, 8, 1, 4}, {3, 8, 5, 7}, {3, 8, 2}, {3, 8, 7}, {8, 4, 5}, {8}, {1, 2}}),
                           words({"ZZZZZZZZZ"}));
  }
  throw ConfigError("unknown Bell fixture '" + std::string(name) + "'");
}

std::vector<BellFixture> bell_fixture_group(std::string_view name) {
  if (name == "cluster4") return {bell_fixture("cluster4_phi1"), bell_fixture("cluster4_phi2")};
  return {bell_fixture(name)};
}

StateVector fiveq_zero() {
  Vector amps = Vector::Zero(32);
  for (const char* b : {"00000", "11000", "01100", "00110", "00011", "10001"}) {
    amps[std::stoi(b, nullptr, 2)] = -0.25;
  }
  for (const char* b : {"10010", "10100", "01001", "01010", "00101", "11110", "11101", "11011",
                        "10111", "01111"}) {
    amps[std::stoi(b, nullptr, 2)] = 0.25;
  }
  return StateVector(5, amps);
}

StateVector fiveq_one() { return apply_pauli(fiveq_zero(), PauliString::parse("XXXXX")); }

std::vector<std::string> dqis_fixture_names() { return {"cluster4", "fiveq", "ghz_negative"}; }

DqisFixture dqis_fixture(std::string_view name) {
  if (name == "cluster4") {
    const Graph g = linear_cluster(4);
    return {"cluster4",
            CodeSpace({basis_state(g, GraphSignature::parse("0000")),
                       basis_state(g, GraphSignature::parse("0101"))}),
            TeleportConfig(4, {{"Alice", Role::Dealer, {0}, ""},
                               {"Bob", Role::Agent, {1, 2}, "zz"},
                               {"Rex", Role::Recoverer, {3}, ""}})};
  }
  if (name == "fiveq") {
    return {"fiveq", CodeSpace({fiveq_zero(), fiveq_one()}),
            TeleportConfig(5, {{"Alice", Role::Dealer, {0}, ""},
                               {"Bob", Role::Agent, {1, 2}, "zz"},
                               {"Charlie", Role::Agent, {3}, "z"},
                               {"Rex", Role::Recoverer, {4}, ""}})};
  }
  if (name == "ghz_negative") {
    const double h = 1.0 / std::sqrt(2.0);
    Vector plus = Vector::Zero(8), minus = Vector::Zero(8);
    plus[0] = h;
    plus[7] = h;
    minus[0] = h;
    minus[7] = -h;
    return {"ghz_negative", CodeSpace({StateVector(3, plus), StateVector(3, minus)}),
            TeleportConfig(3, {{"Alice", Role::Dealer, {0}, ""},
                               {"Bob", Role::Agent, {1}, "x"},
                               {"Charlie", Role::Recoverer, {2}, ""}})};
  }
  throw ConfigError("unknown DQIS fixture '" + std::string(name) + "'");
}

}  // namespace dqis
