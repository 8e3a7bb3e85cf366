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

#include "dqis/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "dqis/error.hpp"
#include "dqis/fixtures.hpp"

namespace dqis {

namespace {

using nlohmann::json;

constexpr const char* kDistributor = "Dolly";

// Per-party random stream with a portable mapping to [0, 1).
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t party) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(party)};
    engine_.seed(seq);
  }
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::size_t pick(double u, std::size_t size) {
  return std::min(static_cast<std::size_t>(u * static_cast<double>(size)), size - 1);
}

// Index in `weights` selected by u against the cumulative distribution.
std::size_t pick_weighted(double u, const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last = i;
    acc += weights[i];
    if (u * total < acc) return i;
  }
  return last;
}

std::string restrict_letters(const PauliString& term, const std::vector<std::size_t>& qubits) {
  std::string out;
  for (auto q : qubits) out += to_char(term[q]);
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

struct Request {
  std::vector<std::size_t> qubits;  // register indices
  std::string letters;
  double uniform;
};

// The physical side of the simulation. Every copy leaves Dolly in the same
// state; the medium resolves each copy's measurements party by party in the
// order the requests are given.
class Medium {
 public:
  explicit Medium(StateVector prepared) : prepared_(std::move(prepared)) {}

  std::vector<std::vector<int>> measure_copy(const std::vector<Request>& requests) const {
    std::vector<std::size_t> targets;
    std::vector<Pauli> letters;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (const auto& r : requests) {
      const std::size_t begin = targets.size();
      for (std::size_t i = 0; i < r.qubits.size(); ++i) {
        const Pauli p = pauli_from_char(r.letters[i]);
        if (p == Pauli::I) continue;
        targets.push_back(r.qubits[i]);
        letters.push_back(p);
      }
      ranges.emplace_back(begin, targets.size());
    }
    const std::size_t m = targets.size();
    std::vector<double> prob(std::size_t{1} << m);
    const Ket k = prepared_.ket();
    for (std::size_t mask = 0; mask < prob.size(); ++mask) {
      Vector v = Vector::Ones(1);
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bit = (mask >> (m - 1 - i)) & 1U;
        v = kron(v, MeasurementBasis::pauli(letters[i]).elements()[bit].vec);
      }
      prob[mask] = m == 0 ? 1.0 : project(k, v, targets).amps().squaredNorm();
    }

    // Sequential resolution: each party samples its bits from the marginal
    // conditioned on the parties before it.
    std::size_t chosen = 0;
    for (std::size_t p = 0; p < requests.size(); ++p) {
      const auto [begin, end] = ranges[p];
      const std::size_t width = end - begin;
      const std::size_t shift = m - end;
      std::vector<double> weights(std::size_t{1} << width, 0.0);
      for (std::size_t mask = 0; mask < prob.size(); ++mask) {
        if ((mask >> (m - begin)) != (chosen >> (m - begin))) continue;
        weights[(mask >> shift) & ((std::size_t{1} << width) - 1)] += prob[mask];
      }
      chosen |= pick_weighted(requests[p].uniform, weights) << shift;
    }

    std::vector<std::vector<int>> outcomes;
    std::size_t bit_index = 0;
    for (const auto& r : requests) {
      std::vector<int> o;
      for (char c : r.letters) {
        if (c == 'I') {
          o.push_back(1);
          continue;
        }
        o.push_back(((chosen >> (m - 1 - bit_index)) & 1U) ? -1 : 1);
        ++bit_index;
      }
      outcomes.push_back(std::move(o));
    }
    return outcomes;
  }

  struct TeleportResult {
    std::string label;
    std::map<std::string, std::string> by_party;
    double probability = 0.0;
    StateVector post;  // Rex's qubits, then Eve's if present
  };

  TeleportResult teleport(const TeleportConfig& cfg, const std::vector<double>& uniforms) const {
    Vector anc = Vector::Zero(2);
    anc[0] = 1.0;
    const Ket full(prepared_.qubits() + 1, kron(anc, prepared_.amps()));
    const auto outcomes = joint_outcomes(cfg);
    std::vector<double> prob;
    for (const auto& o : outcomes) prob.push_back(project(full, o.projector, o.targets).amps().squaredNorm());
    const auto parties = party_measurements(cfg);
    std::map<std::string, std::string> fixed;
    for (std::size_t p = 0; p < parties.size(); ++p) {
      const auto& elements = parties[p].basis.elements();
      std::vector<double> weights(elements.size(), 0.0);
      for (std::size_t k = 0; k < outcomes.size(); ++k) {
        bool consistent = true;
        for (const auto& [name, label] : fixed) consistent = consistent && outcomes[k].by_party.at(name) == label;
        if (!consistent) continue;
        const auto& mine = outcomes[k].by_party.at(parties[p].name);
        for (std::size_t e = 0; e < elements.size(); ++e) {
          if (elements[e].label == mine) weights[e] += prob[k];
        }
      }
      fixed[parties[p].name] = elements[pick_weighted(uniforms.at(p), weights)].label;
    }
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      if (outcomes[k].by_party != fixed) continue;
      const Ket post = project(full, outcomes[k].projector, outcomes[k].targets);
      return {outcomes[k].label, fixed, prob[k], StateVector::normalized(post)};
    }
    throw std::logic_error("sampled teleportation outcome not found");
  }

 private:
  StateVector prepared_;
};

class Channel {
 public:
  void step() { ++tick_; }
  void post(std::size_t round, std::string sender, std::string receiver, std::string kind, json payload) {
    log_.push_back({round, std::move(sender), std::move(receiver), tick_, std::move(kind), std::move(payload)});
  }
  std::vector<Message> take() { return std::move(log_); }

 private:
  std::uint64_t tick_ = 0;
  std::vector<Message> log_;
};

MeasurementSets resolve_sets(const BellScenario& sc, const MeasurementSets& overrides) {
  MeasurementSets sets = sc.default_sets;
  for (const auto& [name, set] : overrides) sets[name] = set;
  for (const auto& p : sc.config.parties()) {
    auto it = sets.find(p.name);
    if (it == sets.end() || it->second.empty()) throw ConfigError("no measurement set for " + p.name);
    for (const auto& s : it->second) {
      if (s.size() != p.qubits.size()) {
        throw ConfigError("setting '" + s + "' for " + p.name + " needs one letter per qubit");
      }
      for (char c : s) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') throw ConfigError("bad setting letter in '" + s + "'");
      }
    }
  }
  for (const auto& [name, set] : sets) {
    const auto& parties = sc.config.parties();
    if (std::none_of(parties.begin(), parties.end(), [&](const PartySpec& p) { return p.name == name; })) {
      throw ConfigError("measurement set for unknown party " + name);
    }
  }
  return sets;
}

json secret_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

}  // namespace

MeasurementSets sets_from_terms(const BellOperator& op, const TeleportConfig& cfg) {
  MeasurementSets out;
  for (const auto& p : cfg.parties()) {
    auto& set = out[p.name];
    for (const auto& t : op.terms()) {
      const std::string s = restrict_letters(t, p.qubits);
      if (std::find(set.begin(), set.end(), s) == set.end()) set.push_back(s);
    }
  }
  return out;
}

BellScenario bell_scenario(std::string_view name) {
  if (name == "cluster4") {
    DqisFixture f = dqis_fixture("cluster4");
    return {"cluster4", f.code, f.config, bell_fixture("cluster4_phi2").op,
            {{"Alice", {"Y", "Z"}}, {"Bob", {"XI", "YI", "XX", "YX"}}, {"Rex", {"X", "Y"}}}};
  }
  if (name == "fiveq") {
    DqisFixture f = dqis_fixture("fiveq");
    BellOperator op = bell_fixture("fiveq").op;
    auto sets = sets_from_terms(op, f.config);
    return {"fiveq", f.code, f.config, op, sets};
  }
  throw ConfigError("unknown protocol scenario '" + std::string(name) + "'");
}

std::optional<std::size_t> sift(const BellScenario& sc, const MeasurementSets& declared,
                                const std::map<std::string, std::string>& settings) {
  for (const auto& p : sc.config.parties()) {
    const auto s = settings.find(p.name);
    if (s == settings.end()) throw std::invalid_argument("no setting for " + p.name);
    const auto d = declared.find(p.name);
    if (d == declared.end() || std::find(d->second.begin(), d->second.end(), s->second) == d->second.end()) {
      throw std::invalid_argument("setting '" + s->second + "' is not declared for " + p.name);
    }
  }
  for (std::size_t j = 0; j < sc.op.size(); ++j) {
    const auto& parties = sc.config.parties();
    const bool match = std::all_of(parties.begin(), parties.end(), [&](const PartySpec& p) {
      return restrict_letters(sc.op.terms()[j], p.qubits) == settings.at(p.name);
    });
    if (match) return j;
  }
  return std::nullopt;
}

ViolationEstimate estimate_violation(const BellOperator& op, std::span<const SiftedRecord> records) {
  if (records.empty()) throw std::invalid_argument("no sifted records");
  std::vector<std::vector<double>> values(op.size());
  for (const auto& r : records) {
    if (r.term >= op.size()) throw std::out_of_range("record refers to a missing term");
    values[r.term].push_back(static_cast<double>(op.terms()[r.term].sign() * r.product));
  }
  ViolationEstimate out;
  out.complete = true;
  double variance = 0.0;
  for (const auto& v : values) {
    TermStatistic t;
    t.count = v.size();
    if (t.count == 0) {
      out.complete = false;
    } else {
      t.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(t.count);
      if (t.count > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - t.mean) * (x - t.mean);
        t.standard_error = std::sqrt(ss / static_cast<double>(t.count - 1) / static_cast<double>(t.count));
      }
    }
    out.estimate += t.mean;
    variance += t.standard_error * t.standard_error;
    out.terms.push_back(t);
  }
  out.standard_error = std::sqrt(variance);
  return out;
}

std::string to_string(Decision d) { return d == Decision::Proceed ? "Proceed" : "Abort"; }

Transcript run_protocol(const ScenarioConfig& cfg, const Secret& s) {
  return run_protocol(bell_scenario(cfg.scenario), cfg, s);
}

Transcript run_protocol(const BellScenario& sc, const ScenarioConfig& cfg, const Secret& s) {
  // Configuration checks, before any round.
  const auto& parties = sc.config.parties();
  const std::string dealer = sc.config.dealer().name;
  const std::string rex = sc.config.recoverer().name;
  if (cfg.copies < 2) throw ConfigError("need at least two copies");
  if (s.dim() != sc.code.dim()) throw ConfigError("secret dimension does not match the code space");
  if (sc.op.qubits() != sc.code.qubits()) throw ConfigError("Bell operator does not match the code space");
  if (cfg.announcer != dealer && cfg.announcer != kDistributor) {
    throw ConfigError("announcer must be " + dealer + " or " + kDistributor);
  }
  const MeasurementSets sets = resolve_sets(sc, cfg.measurement_sets);
  const LRBound lr = lr_bound(sc.op);
  const double threshold = cfg.threshold.value_or(0.5 * (lr.bound + static_cast<double>(sc.op.size())));
  if (!(threshold > lr.bound)) {
    throw ConfigError("threshold must exceed the local-realist bound " + std::to_string(lr.bound));
  }
  if (cfg.attack) {
    try {
      cfg.attack->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (cfg.attack->target_qubit >= sc.code.qubits()) throw ConfigError("attack target outside the register");
  }
  const DivergenceReport divergence = check_divergence(sc.code, sc.config);
  if (!divergence.ok) throw ConfigError("scenario channel is not teleportation divergent");

  // Every party's randomness, drawn up front from its own stream.
  const std::size_t n = cfg.copies;
  struct Draws {
    std::vector<double> setting, outcome;
    double teleport = 0.0;
  };
  std::map<std::string, Draws> draws;
  double key_u = 0.0, reserve_u = 0.0;
  {
    Stream dolly(cfg.seed, 0);
    if (cfg.announcer == kDistributor) reserve_u = dolly.next();
  }
  for (std::size_t i = 0; i < parties.size(); ++i) {
    Stream st(cfg.seed, i + 1);
    if (parties[i].name == dealer) key_u = st.next();
    if (parties[i].name == cfg.announcer) reserve_u = st.next();
    Draws d;
    for (std::size_t c = 0; c < n; ++c) d.setting.push_back(st.next());
    for (std::size_t c = 0; c < n; ++c) d.outcome.push_back(st.next());
    d.teleport = st.next();
    draws[parties[i].name] = std::move(d);
  }

  Transcript t;
  t.scenario = sc.name;
  t.copies = n;
  t.seed = cfg.seed;
  t.attack = cfg.attack;
  t.announcer = cfg.announcer;
  t.measurement_sets = sets;
  t.terms = sc.op.terms();
  for (const auto& p : parties) t.ownership[p.name] = p.qubits;
  Channel ch;

  // Encryption and preparation.
  const EncryptionKey key{s.dim(), pick(key_u, s.dim() * s.dim())};
  const Secret encrypted = encrypt(s, key);
  t.key = key.str();
  ch.post(0, dealer, kDistributor, "encrypted_secret", {{"amplitudes", secret_json(encrypted.amps())}});
  StateVector prepared = encode(encrypted, sc.code);
  if (cfg.attack) {
    Vector amps = Vector::Zero(prepared.amps().size() * 2);
    for (Eigen::Index i = 0; i < prepared.amps().size(); ++i) amps[2 * i] = prepared.amps()[i];
    prepared = apply_gate(StateVector(prepared.qubits() + 1, amps), eve_unitary(*cfg.attack),
                          {cfg.attack->target_qubit, prepared.qubits()});
  }
  const Medium medium(prepared);

  // Distribution.
  ch.step();
  for (const auto& p : parties) {
    json q = json::array();
    for (auto i : p.qubits) q.push_back(i + 1);
    ch.post(0, kDistributor, p.name, "distribute", {{"copies", n}, {"qubits", q}});
  }
  ch.step();
  for (const auto& p : parties) ch.post(0, p.name, kDistributor, "ack", {{"copies", n}});
  ch.step();
  ch.post(0, dealer, "*", "delivery_confirmed", {{"copies", n}});
  ch.step();
  t.reserved = pick(reserve_u, n);
  ch.post(0, cfg.announcer, "*", "reserve", {{"serial", t.reserved}});

  // Bell test on every other copy.
  std::vector<SiftedRecord> sifted;
  for (std::size_t c = 0; c < n; ++c) {
    if (c == t.reserved) continue;
    const std::size_t round = c + 1;
    CopyRecord rec;
    rec.serial = c;
    std::vector<Request> requests;
    for (const auto& p : parties) {
      const auto& set = sets.at(p.name);
      rec.settings[p.name] = set[pick(draws[p.name].setting[c], set.size())];
      std::vector<std::size_t> reg(p.qubits.begin(), p.qubits.end());
      requests.push_back({reg, rec.settings[p.name], draws[p.name].outcome[c]});
    }
    const auto outcomes = medium.measure_copy(requests);
    ch.step();
    for (std::size_t i = 0; i < parties.size(); ++i) {
      rec.outcomes[parties[i].name] = outcomes[i];
      ch.post(round, parties[i].name, "*", "outcome", {{"copy", c}, {"outcome", outcomes[i]}});
    }
    ch.step();
    for (const auto& p : parties) {
      ch.post(round, p.name, "*", "setting", {{"copy", c}, {"setting", rec.settings[p.name]}});
    }
    rec.term = sift(sc, sets, rec.settings);
    ch.step();
    ch.post(round, dealer, "*", "reconcile",
            {{"copy", c}, {"term", rec.term ? json(*rec.term + 1) : json(nullptr)}});
    if (rec.term) {
      int product = 1;
      for (const auto& [name, o] : rec.outcomes) {
        for (int v : o) product *= v;
      }
      sifted.push_back({*rec.term, product});
    }
    t.records.push_back(std::move(rec));
  }

  BellTestReport& b = t.bell;
  b.measured = n - 1;
  b.sifted = sifted.size();
  b.sift_fraction = static_cast<double>(b.sifted) / static_cast<double>(b.measured);
  b.threshold = threshold;
  b.lr_bound = lr.bound;
  b.decision = Decision::Abort;
  if (sifted.empty()) {
    b.reason = "insufficient data: no copy was sifted";
    b.terms.assign(sc.op.size(), {});
  } else {
    const ViolationEstimate est = estimate_violation(sc.op, sifted);
    b.estimate = est.estimate;
    b.standard_error = est.standard_error;
    b.terms = est.terms;
    if (!est.complete) {
      b.reason = "insufficient data: some term has no sifted copy";
    } else if (est.estimate >= threshold) {
      b.decision = Decision::Proceed;
    } else {
      b.reason = "violation below threshold";
    }
  }
  const std::size_t final_round = n + 1;
  ch.step();
  ch.post(final_round, dealer, "*", "bell_test",
          {{"sifted", b.sifted},
           {"estimate", b.estimate},
           {"standard_error", b.standard_error},
           {"threshold", b.threshold},
           {"decision", to_string(b.decision)},
           {"reason", b.reason}});
  if (b.decision == Decision::Abort) {
    t.messages = ch.take();
    return t;
  }

  // Teleportation over the reserved copy.
  std::vector<double> tele_u;
  for (const auto& m : party_measurements(sc.config)) tele_u.push_back(draws[m.name].teleport);
  const auto result = medium.teleport(sc.config, tele_u);
  ch.step();
  for (const auto& [name, label] : result.by_party) {
    ch.post(final_round, name, rex, "teleport_outcome", {{"copy", t.reserved}, {"outcome", label}});
  }
  ch.step();
  ch.post(final_round, dealer, rex, "decryption_key", {{"key", key.str()}});

  const std::size_t r = sc.config.recoverer_qubits();
  std::vector<std::size_t> keep(r);
  std::iota(keep.begin(), keep.end(), 0);
  Matrix rho = partial_trace(result.post, keep).entries();
  const Matrix& u = divergence.recovery.unitaries.at(result.label);
  rho = u.adjoint() * rho * u;
  Matrix dec = Matrix::Identity(rho.rows(), rho.cols());
  dec.topLeftCorner(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(s.dim())) =
      key_operator(key).adjoint();
  rho = dec * rho * dec.adjoint();
  const Vector target = s.embedded(r).amps();
  const double fid = std::real(target.dot(rho * target));
  ch.step();
  ch.post(final_round, rex, "*", "recovered", {{"fidelity", fid}});
  t.recovery = RecoveryRecord{result.label, result.probability, key.str(), fid};
  t.messages = ch.take();
  return t;
}

std::vector<std::string> validate_transcript(const Transcript& t) {
  std::vector<std::string> errors;
  std::map<std::string, std::uint64_t> last_tick;
  struct CopyTiming {
    std::optional<std::pair<std::size_t, std::uint64_t>> stamp;
    std::size_t outcomes = 0;
    std::size_t last_outcome = 0;
    std::optional<std::size_t> first_setting;
  };
  std::map<std::size_t, CopyTiming> copies;
  for (std::size_t i = 0; i < t.messages.size(); ++i) {
    const Message& m = t.messages[i];
    auto it = last_tick.find(m.sender);
    if (it != last_tick.end() && m.tick < it->second) {
      errors.push_back("tick decreases for sender " + m.sender + " at message " + std::to_string(i));
    }
    last_tick[m.sender] = m.tick;
    if (m.kind != "outcome" && m.kind != "setting") continue;
    const std::size_t copy = m.payload.at("copy").get<std::size_t>();
    auto& ct = copies[copy];
    if (m.kind == "outcome") {
      const std::pair stamp{m.round, m.tick};
      if (ct.stamp && *ct.stamp != stamp) {
        errors.push_back("outcomes of copy " + std::to_string(copy) + " are not simultaneous");
      }
      ct.stamp = stamp;
      ++ct.outcomes;
      ct.last_outcome = i;
    } else if (!ct.first_setting) {
      ct.first_setting = i;
    }
  }
  const std::size_t parties = t.ownership.size();
  for (const auto& [copy, ct] : copies) {
    if (ct.first_setting && (ct.outcomes < parties || *ct.first_setting < ct.last_outcome)) {
      errors.push_back("setting of copy " + std::to_string(copy) + " announced before all outcomes");
    }
  }
  for (const auto& rec : t.records) {
    std::optional<std::size_t> expected;
    for (std::size_t j = 0; j < t.terms.size() && !expected; ++j) {
      bool match = true;
      for (const auto& [name, qubits] : t.ownership) {
        match = match && rec.settings.count(name) &&
                restrict_letters(t.terms[j], qubits) == rec.settings.at(name);
      }
      if (match) expected = j;
    }
    if (expected != rec.term) errors.push_back("copy " + std::to_string(rec.serial) + " is sifted inconsistently");
  }
  const bool complete = !t.bell.terms.empty() &&
                        std::all_of(t.bell.terms.begin(), t.bell.terms.end(),
                                    [](const TermStatistic& s) { return s.count > 0; });
  const bool should_proceed = complete && t.bell.estimate >= t.bell.threshold;
  if ((t.bell.decision == Decision::Proceed) != should_proceed) {
    errors.push_back("decision does not follow from the estimate and threshold");
  }
  return errors;
}

json to_json(const Transcript& t) {
  json j;
  j["schema"] = kTranscriptSchema;
  j["scenario"] = t.scenario;
  j["copies"] = t.copies;
  j["seed"] = t.seed;
  j["attack"] = t.attack ? json{{"theta", t.attack->theta}, {"target_qubit", t.attack->target_qubit + 1}}
                         : json(nullptr);
  j["announcer"] = t.announcer;
  j["reserved"] = t.reserved;
  j["key"] = t.key;
  j["measurement_sets"] = t.measurement_sets;
  json terms = json::array();
  for (const auto& p : t.terms) terms.push_back(p.str());
  j["terms"] = terms;
  json own = json::object();
  for (const auto& [name, qubits] : t.ownership) {
    json q = json::array();
    for (auto i : qubits) q.push_back(i + 1);
    own[name] = q;
  }
  j["ownership"] = own;
  json messages = json::array();
  for (const auto& m : t.messages) {
    messages.push_back({{"round", m.round},
                        {"sender", m.sender},
                        {"receiver", m.receiver},
                        {"tick", m.tick},
                        {"kind", m.kind},
                        {"payload", m.payload}});
  }
  j["messages"] = messages;
  json records = json::array();
  for (const auto& r : t.records) {
    records.push_back({{"serial", r.serial},
                       {"settings", r.settings},
                       {"outcomes", r.outcomes},
                       {"term", r.term ? json(*r.term + 1) : json(nullptr)}});
  }
  j["records"] = records;
  json stats = json::array();
  for (const auto& s : t.bell.terms) {
    stats.push_back({{"count", s.count}, {"mean", s.mean}, {"standard_error", s.standard_error}});
  }
  j["bell_test"] = {{"measured", t.bell.measured},
                    {"sifted", t.bell.sifted},
                    {"sift_fraction", t.bell.sift_fraction},
                    {"estimate", t.bell.estimate},
                    {"standard_error", t.bell.standard_error},
                    {"threshold", t.bell.threshold},
                    {"lr_bound", t.bell.lr_bound},
                    {"terms", stats},
                    {"decision", to_string(t.bell.decision)},
                    {"reason", t.bell.reason}};
  j["recovery"] = t.recovery ? json{{"outcome", t.recovery->outcome},
                                    {"probability", t.recovery->probability},
                                    {"key", t.recovery->key},
                                    {"fidelity", t.recovery->fidelity},
                                    {"tolerance", kFidelityTol}}
                             : json(nullptr);
  return j;
}

}  // namespace dqis
