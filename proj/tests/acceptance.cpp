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

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dqis/attack.hpp"
#include "dqis/bell.hpp"
#include "dqis/dqis.hpp"
#include "dqis/error.hpp"
#include "dqis/fixtures.hpp"
#include "dqis/harness.hpp"

using namespace dqis;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;
  std::vector<std::string> info;  // printed whatever the outcome

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Vector random_amps(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Vector v(dim);
  for (auto& x : v) x = Complex(g(rng), g(rng));
  return v / v.norm();
}

StateVector random_superposition(std::mt19937_64& rng, const std::vector<StateVector>& basis) {
  const Vector c = random_amps(rng, static_cast<Eigen::Index>(basis.size()));
  Vector v = Vector::Zero(static_cast<Eigen::Index>(basis.front().dim()));
  for (std::size_t k = 0; k < basis.size(); ++k) v += c[static_cast<Eigen::Index>(k)] * basis[k].amps();
  return StateVector::normalized(basis.front().qubits(), v);
}

std::set<std::string> signature_strings(const DegeneracySet& d) {
  std::set<std::string> out;
  for (const auto& s : d.signatures) out.insert(s.str());
  return out;
}

// Sign pattern of a signature restricted to the listed generator positions.
std::vector<int> restricted_signs(const GraphSignature& s, const std::vector<std::size_t>& positions) {
  std::vector<int> out;
  for (auto p : positions) out.push_back(s.sign(p));
  return out;
}

Criterion ac1() {
  Criterion c;
  const std::pair<const char*, int> expected[] = {
      {"cluster4_phi1", 2}, {"cluster4_phi2", 2}, {"fiveq", 3}, {"steane", 4}, {"shor", 5}};
  for (const auto& [name, bound] : expected) {
    const auto fx = bell_fixture(name);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = lr_bound(fx.op);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(r.bound == bound, std::string(name) + " bound " + std::to_string(r.bound) + " != " + std::to_string(bound));
    c.require(evaluate_assignment(fx.op, r.witness) == r.bound, std::string(name) + " witness does not reach the bound");
    if (std::string(name) == "shor") c.require(secs < 60.0, "shor search took " + fmt(secs) + " s");
  }
  return c;
}

Criterion ac2() {
  Criterion c;
  constexpr double tol = 1e-9;
  auto check = [&](const std::string& label, const BellOperator& op, const StateVector& s) {
    const double v = quantum_value(op, s);
    c.require(std::abs(v - static_cast<double>(op.size())) < tol, label + " value " + fmt(v));
  };
  const auto phi1 = bell_fixture("cluster4_phi1");
  const auto phi2 = bell_fixture("cluster4_phi2");
  for (const char* sig : {"0000", "1110"}) check(std::string("phi1 on ") + sig, phi1.op, basis_state(*phi1.graph, GraphSignature::parse(sig)));
  for (const char* sig : {"0000", "0101"}) check(std::string("phi2 on ") + sig, phi2.op, basis_state(*phi2.graph, GraphSignature::parse(sig)));

  std::mt19937_64 rng(2024);
  const auto five = bell_fixture("fiveq");
  const std::vector<StateVector> words{fiveq_zero(), fiveq_one()};
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    worst = std::max(worst, std::abs(quantum_value(five.op, random_superposition(rng, words)) - 5.0));
  }
  c.require(worst < tol, "fiveq superpositions: worst deviation from 5 is " + fmt(worst));
  for (const char* name : {"steane", "shor"}) {
    const auto fx = bell_fixture(name);
    for (int k = 0; k < 5; ++k) check(std::string(name) + " code space", fx.op, random_superposition(rng, fx.code_space));
  }
  return c;
}

Criterion ac3() {
  Criterion c;
  const auto phi1 = bell_fixture("cluster4_phi1");
  const auto phi2 = bell_fixture("cluster4_phi2");
  c.require(signature_strings(degenerate_signatures(phi1.op, phi1.generators)) == std::set<std::string>{"0000", "1110"},
            "phi1 degenerate set");
  c.require(signature_strings(degenerate_signatures(phi2.op, phi2.generators)) == std::set<std::string>{"0000", "0101"},
            "phi2 degenerate set");

  const auto five = bell_fixture("fiveq");
  const auto d5 = degenerate_signatures(five.op, five.generators);
  c.require(d5.signatures.size() == 1, "fiveq has " + std::to_string(d5.signatures.size()) + " degenerate signatures");
  if (!d5.signatures.empty()) {
    const auto signs = d5.signatures.front().signs();
    const auto space = stabilizer_eigenspace(five.generators, signs);
    c.require(space.size() == 2, "fiveq degenerate space has dimension " + std::to_string(space.size()));
  }

  const std::pair<const char*, std::vector<int>> patterns[] = {
      {"steane", {-1, -1, -1, 1, 1}}, {"shor", {-1, -1, -1, 1, 1, -1, 1}}};
  for (const auto& [name, pattern] : patterns) {
    const auto fx = bell_fixture(name);
    auto full = fx.generators;
    full.insert(full.end(), fx.completion.begin(), fx.completion.end());
    const auto listed = degenerate_signatures(fx.op, fx.generators);
    const auto completed = degenerate_signatures(fx.op, full);
    bool found = false;
    for (const auto& s : listed.signatures) found = found || restricted_signs(s, fx.constrained) == pattern;
    c.require(found, std::string(name) + " sign pattern missing");
    c.require(listed.signatures.size() == listed.expected_size(), std::string(name) + " listed count vs 2^(n-r)");
    c.require(completed.signatures.size() == completed.expected_size(), std::string(name) + " full count vs 2^(n-r)");
    c.info.push_back(std::string(name) + ": " + std::to_string(listed.signatures.size()) +
                     " signatures over the listed generators, " + std::to_string(completed.signatures.size()) +
                     " with the completing generator");
  }
  return c;
}

Criterion ac4() {
  Criterion c;
  const auto five = bell_fixture("fiveq");
  const auto r = lr_bound(five.op);
  std::vector<int> values;
  for (const auto& t : five.op.terms()) values.push_back(evaluate_assignment(BellOperator({t}), r.witness));
  const auto prod = product(five.op.terms(), five.op.qubits());
  c.require(prod.is_identity_letters() && prod.phase() == 0, "term product is " + prod.str());
  c.require(verify_ghz_contradiction(five.op, values), "verifier rejected the local assignment");
  return c;
}

Criterion ac5() {
  Criterion c;
  for (const char* name : {"cluster4", "fiveq"}) {
    const auto fx = dqis_fixture(name);
    c.require(check_divergence(fx.code, fx.config).ok, std::string(name) + " is not divergent");
  }
  const auto ghz = dqis_fixture("ghz_negative");
  const auto rep = check_divergence(ghz.code, ghz.config);
  bool parallel = false;
  for (const auto& o : rep.outcomes) parallel = parallel || o.parallel;
  c.require(!rep.ok && parallel, "GHZ channel should fail with parallel vectors");
  const auto chan = channel_recovery(ghz.code[0], ghz.config);
  c.require(chan.ok, "GHZ channel recovery could not be built");
  if (chan.ok) {
    std::mt19937_64 rng(55);
    double worst = 1.0;
    for (int k = 0; k < 20; ++k) {
      const Secret s(random_amps(rng, 2));
      for (const auto& b : run_teleportation(s, ghz.code, ghz.config, chan.recovery)) {
        if (b.probability > 1e-12) worst = std::min(worst, fidelity(b.rex_state, StateVector::basis(1, 0)));
      }
    }
    c.require(worst > 1.0 - 1e-9, "GHZ recovered state differs from |0>: fidelity " + fmt(worst));
  }
  return c;
}

Criterion ac6() {
  Criterion c;
  std::mt19937_64 rng(66);
  for (const char* name : {"cluster4", "fiveq"}) {
    const auto fx = dqis_fixture(name);
    const auto rep = check_divergence(fx.code, fx.config);
    if (!rep.ok) {
      c.require(false, std::string(name) + " recovery unavailable");
      continue;
    }
    double worst = 1.0;
    for (int k = 0; k < 20; ++k) {
      for (const auto& b : run_teleportation(Secret(random_amps(rng, 2)), fx.code, fx.config, rep.recovery)) {
        worst = std::min(worst, b.fidelity);
      }
    }
    c.require(worst >= 1.0 - 1e-9, std::string(name) + " worst fidelity " + fmt(worst));
  }
  for (const auto& row : reproduce_tables()) {
    c.require(row.matched, "Table " + row.table + " row " + row.label + " overlap " + fmt(row.overlap) +
                               "; simulated " + row.simulated);
  }
  return c;
}

Criterion ac7() {
  Criterion c;
  std::vector<double> thetas;
  for (int k = 0; k <= 16; ++k) thetas.push_back(kPi / 2 * k / 16.0);
  std::vector<Secret> secrets{Secret::qubit(1, 0), Secret::qubit(0, 1), Secret::qubit(0.6, 0.8)};
  std::mt19937_64 rng(77);
  for (int k = 0; k < 5; ++k) secrets.emplace_back(random_amps(rng, 2));
  for (std::size_t si = 0; si < secrets.size(); ++si) {
    double worst = 0.0;
    for (const auto& row : violation_under_attack(secrets[si], thetas)) {
      worst = std::max(worst, std::abs(row.value - (3.0 + 2.0 * std::cos(row.theta))));
    }
    c.require(worst < 1e-9, "secret #" + std::to_string(si) + " deviates by " + fmt(worst));
  }
  const double end[] = {kPi / 2};
  const double at_end = violation_under_attack(Secret::qubit(1, 0), end)[0].value;
  c.require(std::abs(at_end - 3.0) < 1e-9, "value at pi/2 is " + fmt(at_end));
  return c;
}

Criterion ac8() {
  Criterion c;
  ScenarioConfig honest;
  honest.copies = 10000;
  const auto t = run_protocol(honest, Secret::qubit(0.6, 0.8));
  const double p = 0.25;
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(t.bell.measured));
  c.require(std::abs(t.bell.sift_fraction - p) <= 3 * sigma, "sift fraction " + fmt(t.bell.sift_fraction));
  c.require(std::abs(t.bell.estimate - 4.0) <= 3 * t.bell.standard_error, "honest estimate " + fmt(t.bell.estimate));
  c.require(t.bell.decision == Decision::Proceed, "honest run aborted");
  c.require(validate_transcript(t).empty(), "honest transcript failed validation");

  ScenarioConfig attacked;
  attacked.scenario = "fiveq";
  attacked.attack = AttackParams{kPi / 2, 3};
  const auto a = run_protocol(attacked, Secret::qubit(0.6, 0.8));
  c.require(a.bell.decision == Decision::Abort, "attacked run proceeded with estimate " + fmt(a.bell.estimate));

  ScenarioConfig small;
  small.copies = 500;
  small.seed = 42;
  c.require(to_json(run_protocol(small, Secret::qubit(0.6, 0.8))) == to_json(run_protocol(small, Secret::qubit(0.6, 0.8))),
            "identical seeds gave different transcripts");
  return c;
}

Criterion ac9() {
  Criterion c;
  std::mt19937_64 rng(99);
  double worst_distance = 0.0, worst_roundtrip = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Secret s(random_amps(rng, 2));
    const Matrix diff = pad_average(s) - Matrix::Identity(2, 2) / 2.0;
    const Eigen::SelfAdjointEigenSolver<Matrix> es(diff);
    worst_distance = std::max(worst_distance, 0.5 * es.eigenvalues().cwiseAbs().sum());
    for (std::size_t key = 0; key < 4; ++key) {
      const Secret back = decrypt(encrypt(s, {2, key}), {2, key});
      worst_roundtrip = std::max(worst_roundtrip, 1.0 - std::abs(s.amps().dot(back.amps())));
    }
  }
  c.require(worst_distance < 1e-10, "trace distance " + fmt(worst_distance));
  c.require(worst_roundtrip < 1e-12, "decrypt after encrypt off by " + fmt(worst_roundtrip));
  return c;
}

}  // namespace

int main() {
  using Check = Criterion (*)();
  const std::pair<const char*, Check> criteria[] = {
      {"AC1 local-realist bounds", ac1}, {"AC2 quantum maxima", ac2},     {"AC3 degeneracy", ac3},
      {"AC4 GHZ contradiction", ac4},    {"AC5 divergence", ac5},         {"AC6 end-to-end DQIS", ac6},
      {"AC7 attack curve", ac7},         {"AC8 harness statistics", ac8}, {"AC9 encryption", ac9}};
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Criterion c;
    try {
      c = check();
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s\n", c.ok ? "PASS" : "FAIL", name);
    for (const auto& n : c.info) std::printf("    %s\n", n.c_str());
    for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
    if (!c.ok) ++failures;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
