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

#include "dqis/json_io.hpp"

#include <fstream>
#include <utility>

#include "dqis/error.hpp"
#include "dqis/fixtures.hpp"

namespace dqis {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t one_based(const json& v, std::size_t limit, const char* what) {
  if (!v.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
  const auto i = v.get<long long>();
  if (i < 1 || static_cast<std::size_t>(i) > limit) {
    throw ConfigError(std::string(what) + " " + std::to_string(i) + " out of range 1.." + std::to_string(limit));
  }
  return static_cast<std::size_t>(i - 1);
}

PauliString word(const json& v) {
  if (!v.is_string()) throw ConfigError("Pauli words must be strings");
  try {
    return PauliString::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

Role role_from(const std::string& s) {
  if (s == "dealer") return Role::Dealer;
  if (s == "agent") return Role::Agent;
  if (s == "recoverer") return Role::Recoverer;
  throw ConfigError("unknown role '" + s + "'");
}

CodeSpace codespace_from(const json& j) {
  try {
    if (j.contains("fixture")) return dqis_fixture(j.at("fixture").get<std::string>()).code;
    if (j.contains("graph")) {
      const Graph g = graph_from_json(j.at("graph"));
      std::vector<StateVector> words;
      for (const auto& s : field(j, "signatures")) {
        const auto sig = GraphSignature::parse(s.get<std::string>());
        if (sig.size() != g.size()) throw ConfigError("signature length differs from the graph size");
        words.push_back(basis_state(g, sig));
      }
      return CodeSpace(std::move(words));
    }
    const json& cw = field(j, "codewords");
    if (!cw.is_array() || cw.empty() || !cw.front().is_array() || cw.front().empty()) {
      throw ConfigError("codewords must be a nonempty list of state dumps");
    }
    const std::size_t n = cw.front().front().at(0).get<std::string>().size();
    std::vector<StateVector> words;
    for (const auto& w : cw) words.push_back(state_from_json(w, n));
    return CodeSpace(std::move(words));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad code space: ") + e.what());
  }
}

}  // namespace

Graph graph_from_json(const json& j) {
  const json& nv = field(j, "n");
  if (!nv.is_number_integer() || nv.get<long long>() < 1) throw ConfigError("graph size must be a positive integer");
  const auto n = nv.get<std::size_t>();
  std::vector<Graph::Edge> edges;
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw ConfigError("edges are pairs of vertices");
    edges.emplace_back(one_based(e[0], n, "vertex"), one_based(e[1], n, "vertex"));
  }
  try {
    return Graph(n, edges);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a + 1, b + 1});
  return {{"n", g.size()}, {"edges", edges}};
}

BellSpec bell_from_json(const json& j) {
  std::vector<PauliString> gens;
  for (const auto& g : field(j, "generators")) gens.push_back(word(g));
  if (gens.empty()) throw ConfigError("need at least one generator");
  Recipe recipe;
  for (const auto& row : field(j, "recipe")) {
    std::vector<std::size_t> r;
    for (const auto& i : row) r.push_back(one_based(i, gens.size(), "generator index"));
    recipe.push_back(std::move(r));
  }
  BellOperator op = [&] {
    try {
      return build_bell(gens, recipe);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }();
  if (j.contains("terms")) {
    const json& terms = j.at("terms");
    if (terms.size() != op.size()) throw ConfigError("terms and recipe differ in length");
    for (std::size_t k = 0; k < op.size(); ++k) {
      if (word(terms[k]) != op.terms()[k]) {
        throw ConfigError("term " + std::to_string(k + 1) + " is " + op.terms()[k].str() + ", file says " +
                          terms[k].get<std::string>());
      }
    }
  }
  return {std::move(gens), std::move(op)};
}

json bell_to_json(const BellSpec& b) {
  json gens = json::array(), recipe = json::array(), terms = json::array();
  for (const auto& g : b.generators) gens.push_back(g.str());
  for (const auto& row : b.op.recipe()) {
    json r = json::array();
    for (auto i : row) r.push_back(i + 1);
    recipe.push_back(r);
  }
  for (const auto& t : b.op.terms()) terms.push_back(t.str());
  return {{"generators", gens}, {"recipe", recipe}, {"terms", terms}};
}

json state_to_json(const StateVector& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (std::abs(s[i]) <= kAlgebraTol) continue;
    out.push_back({bitstring(s.qubits(), i), s[i].real(), s[i].imag()});
  }
  return out;
}

StateVector state_from_json(const json& j, std::size_t n) {
  if (n == 0 || n > kMaxQubits) throw ConfigError("unsupported state size");
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw ConfigError("state entries are [bitstring, re, im]");
    const auto bits = e[0].get<std::string>();
    if (bits.size() != n || bits.find_first_not_of("01") != std::string::npos) {
      throw ConfigError("bad bitstring '" + bits + "'");
    }
    amps[static_cast<Eigen::Index>(std::stoul(bits, nullptr, 2))] = Complex(e[1].get<double>(), e[2].get<double>());
  }
  try {
    return StateVector::normalized(n, amps);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

Secret secret_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("secret must be a nonempty list of [re, im] pairs");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != 2) throw ConfigError("secret entries are [re, im]");
    v[static_cast<Eigen::Index>(i)] = Complex(j[i][0].get<double>(), j[i][1].get<double>());
  }
  if (v.norm() == 0.0) throw ConfigError("secret must not be zero");
  return Secret(v / v.norm());
}

ScenarioFile scenario_from_json(const json& j) {
  try {
    CodeSpace code = codespace_from(field(j, "codespace"));
    const std::size_t n = code.qubits();
    const json& cfg = field(j, "config");
    const json& own = field(cfg, "ownership");
    const json bases = cfg.value("bases", json::object());
    std::vector<PartySpec> parties;
    for (const auto& p : field(cfg, "parties")) {
      PartySpec spec;
      spec.name = field(p, "name").get<std::string>();
      spec.role = role_from(field(p, "role").get<std::string>());
      for (const auto& q : field(own, spec.name.c_str())) spec.qubits.push_back(one_based(q, n, "qubit"));
      spec.bases = bases.value(spec.name, std::string());
      parties.push_back(std::move(spec));
    }
    ScenarioFile out{std::move(code), TeleportConfig(n, std::move(parties)), std::nullopt,
                     std::nullopt, {}};
    if (j.contains("secret")) out.secret = secret_from_json(j.at("secret"));
    if (j.contains("bell")) out.bell = bell_from_json(j.at("bell"));
    if (j.contains("measurement_sets")) out.measurement_sets = j.at("measurement_sets").get<MeasurementSets>();
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario file " + path + " is not valid JSON: " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace dqis
