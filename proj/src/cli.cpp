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

#include "dqis/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dqis/attack.hpp"
#include "dqis/bell.hpp"
#include "dqis/dqis.hpp"
#include "dqis/error.hpp"
#include "dqis/fixtures.hpp"
#include "dqis/graph.hpp"
#include "dqis/harness.hpp"
#include "dqis/json_io.hpp"

namespace dqis {

namespace {

using nlohmann::json;

json measured(double value, double tol) { return {{"value", value}, {"tolerance", tol}}; }
json exact(long long value) { return {{"value", value}, {"tolerance", 0}}; }

struct Options {
  std::string fixture;
  std::string scenario;
  std::size_t n = 0;
  std::vector<double> thetas;
  std::size_t target = 4;
  std::uint64_t seed = 1;
  std::optional<double> threshold;
  std::string announcer = "Alice";
  std::string secret;
  std::string signature;
  std::string format = "json";
  std::string output;
  std::string transcript;
  bool tables = false;
};

struct Result {
  json report;
  std::string csv;  // set when the command has a tabular form
  int code = 0;
};

Secret parse_secret(const std::string& text, std::size_t d, const Secret& fallback = Secret::qubit(0.6, 0.8)) {
  if (text.empty()) {
    if (d != fallback.dim()) throw ConfigError("a secret is required for this code space");
    return fallback;
  }
  std::vector<Complex> amps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      const double re = std::stod(item.substr(0, colon));
      const double im = colon == std::string::npos ? 0.0 : std::stod(item.substr(colon + 1));
      amps.emplace_back(re, im);
    } catch (const std::exception&) {
      throw ConfigError("cannot read secret amplitude '" + item + "'; use re or re:im");
    }
  }
  if (amps.size() != d) throw ConfigError("secret needs " + std::to_string(d) + " amplitudes");
  Vector v = Eigen::Map<Vector>(amps.data(), static_cast<Eigen::Index>(amps.size()));
  if (v.norm() == 0.0) throw ConfigError("secret must not be zero");
  return Secret(v / v.norm());
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + " is not valid JSON: " + e.what());
  }
}

json secret_json(const Secret& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) out.push_back({s[i].real(), s[i].imag()});
  return out;
}

json term_list(const BellOperator& op) {
  json out = json::array();
  for (const auto& t : op.terms()) out.push_back(t.str());
  return out;
}

Result run_graph(const Options& o) {
  Graph g = linear_cluster(4);
  json inputs;
  if (!o.scenario.empty()) {
    g = graph_from_json(read_json_file(o.scenario));
    inputs["scenario"] = o.scenario;
  } else if (o.n > 0) {
    if (o.n > kMaxQubits) throw ConfigError("graph too large for the state engine");
    g = linear_cluster(o.n);
    inputs["n"] = o.n;
  } else {
    inputs["n"] = 4;
  }
  const GraphSignature sig = o.signature.empty() ? GraphSignature::zeros(g.size()) : GraphSignature::parse(o.signature);
  if (sig.size() != g.size()) throw ConfigError("signature length must equal the vertex count");
  inputs["signature"] = sig.str();
  const auto gens = generators(g);
  const StateVector state = basis_state(g, sig);
  json gj = json::array();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    gj.push_back({{"generator", gens[j].str()}, {"expectation", measured(expectation(state, gens[j]), kExpectationTol)}});
  }
  json results{{"graph", graph_to_json(g)},
               {"generators", gj},
               {"rank", exact(static_cast<long long>(rank_gf2(gens)))},
               {"state", state_to_json(state)}};
  return {{{"inputs", inputs}, {"results", results}}, "", 0};
}

std::vector<BellFixture> bell_inputs(const Options& o, json& inputs) {
  if (!o.scenario.empty()) {
    inputs["scenario"] = o.scenario;
    const json file = read_json_file(o.scenario);
    BellSpec spec = bell_from_json(file.contains("bell") ? file.at("bell") : file);
    return {BellFixture{"scenario", std::nullopt, spec.generators, spec.op.recipe(), spec.op, {}, {}, {}}};
  }
  const std::string name = o.fixture.empty() ? "cluster4" : o.fixture;
  inputs["fixture"] = name;
  return bell_fixture_group(name);
}

Result run_bell(const Options& o) {
  json inputs;
  json ops = json::array();
  for (const auto& f : bell_inputs(o, inputs)) {
    if (f.op.qubits() > 12) throw ConfigError("operator too large for the dense quantum maximum");
    const LRBound lr = lr_bound(f.op);
    Matrix dense = Matrix::Zero(1 << f.op.qubits(), 1 << f.op.qubits());
    for (const auto& t : f.op.terms()) dense += gates::dense(t);
    const double qmax = Eigen::SelfAdjointEigenSolver<Matrix>(dense, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    json witness = json::array();
    for (const auto& [var, value] : lr.witness) {
      witness.push_back({{"qubit", var.site + 1}, {"letter", std::string(1, to_char(var.letter))}, {"value", value}});
    }
    json entry{{"name", f.name},
               {"terms", term_list(f.op)},
               {"m", exact(static_cast<long long>(f.op.size()))},
               {"independent_terms", exact(static_cast<long long>(rank_gf2(f.op.terms())))},
               {"lr_bound", exact(lr.bound)},
               {"q", exact(lr.q)},
               {"local_variables", lr.variables},
               {"witness", witness},
               {"quantum_max", measured(qmax, kFidelityTol)}};
    if (!f.code_space.empty()) {
      json values = json::array();
      for (const auto& s : f.code_space) values.push_back(measured(quantum_value(f.op, s), kFidelityTol));
      entry["code_space_values"] = values;
    }
    const PauliString prod = product(f.op.terms(), f.op.qubits());
    entry["terms_product"] = prod.str().empty() ? "+" + std::string(prod.size(), 'I') : prod.str();
    ops.push_back(entry);
  }
  return {{{"inputs", inputs}, {"results", {{"operators", ops}}}}, "", 0};
}

json signature_block(const BellOperator& op, const std::vector<PauliString>& gens,
                     const std::vector<std::size_t>& constrained) {
  const DegeneracySet set = degenerate_signatures(op, gens);
  json sigs = json::array(), restricted = json::array();
  for (const auto& s : set.signatures) {
    sigs.push_back(s.str());
    json r = json::array();
    for (auto i : constrained) r.push_back(s.sign(i));
    if (std::find(restricted.begin(), restricted.end(), r) == restricted.end()) restricted.push_back(r);
  }
  return {{"generators", gens.size()},
          {"rank", exact(static_cast<long long>(set.rank))},
          {"count", exact(static_cast<long long>(set.signatures.size()))},
          {"expected", exact(static_cast<long long>(set.expected_size()))},
          {"signatures", sigs},
          {"constrained_signs", restricted}};
}

Result run_degeneracy(const Options& o) {
  json inputs;
  json ops = json::array();
  for (const auto& f : bell_inputs(o, inputs)) {
    std::vector<std::size_t> constrained = f.constrained;
    if (constrained.empty()) {
      for (const auto& row : f.op.recipe()) constrained.insert(constrained.end(), row.begin(), row.end());
      std::sort(constrained.begin(), constrained.end());
      constrained.erase(std::unique(constrained.begin(), constrained.end()), constrained.end());
    }
    json constrained_json = json::array();
    for (auto i : constrained) constrained_json.push_back(i + 1);
    json entry{{"name", f.name}, {"constrained_generators", constrained_json},
               {"listed", signature_block(f.op, f.generators, constrained)}};
    std::vector<PauliString> full = f.generators;
    full.insert(full.end(), f.completion.begin(), f.completion.end());
    entry["full_stabilizer"] = signature_block(f.op, full, constrained);
    entry["signature_count"] = entry["full_stabilizer"]["count"];
    ops.push_back(entry);
  }
  return {{{"inputs", inputs}, {"results", {{"operators", ops}}}}, "", 0};
}

json branches_json(const std::vector<TeleportBranch>& branches, const StateVector* reference) {
  json out = json::array();
  for (const auto& b : branches) {
    json e{{"outcome", b.outcome},
           {"probability", measured(b.probability, kExpectationTol)},
           {"fidelity", measured(b.fidelity, kFidelityTol)},
           {"rex_state", state_to_json(b.rex_state)}};
    if (reference) e["fidelity_with_zero"] = measured(dqis::fidelity(b.rex_state, *reference), kFidelityTol);
    out.push_back(e);
  }
  return out;
}

Result run_dqis(const Options& o) {
  json inputs;
  std::optional<DqisFixture> fx;
  std::optional<Secret> file_secret;
  if (!o.scenario.empty()) {
    ScenarioFile f = load_scenario(o.scenario);
    fx = DqisFixture{"scenario", f.code, f.config};
    file_secret = f.secret;
    inputs["scenario"] = o.scenario;
  } else {
    fx = dqis_fixture(o.fixture.empty() ? "cluster4" : o.fixture);
    inputs["fixture"] = fx->name;
  }
  const Secret s = !o.secret.empty() || !file_secret ? parse_secret(o.secret, fx->code.dim()) : *file_secret;
  inputs["secret"] = secret_json(s);
  const DivergenceReport div = check_divergence(fx->code, fx->config);
  json checks = json::array();
  for (const auto& c : div.outcomes) {
    json gram = json::array();
    for (Eigen::Index i = 0; i < c.gram.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < c.gram.cols(); ++j) row.push_back({c.gram(i, j).real(), c.gram(i, j).imag()});
      gram.push_back(row);
    }
    checks.push_back({{"outcome", c.label},
                      {"equal_norms", c.equal_norms},
                      {"orthogonal", c.orthogonal},
                      {"parallel", c.parallel},
                      {"vanishing", c.vanishing},
                      {"gram", gram}});
  }
  json results{{"divergent", div.ok}, {"tolerance", kFidelityTol}, {"outcomes", checks}};
  if (div.ok) {
    results["branches"] = branches_json(run_teleportation(s, fx->code, fx->config, div.recovery), nullptr);
  } else if (fx->code.dim() == 2) {
    // Correct as for ordinary teleportation through the first code word.
    const DivergenceReport channel = channel_recovery(fx->code[0], fx->config);
    if (channel.ok) {
      const StateVector zero = StateVector::basis(fx->config.recoverer_qubits(), 0);
      results["channel_branches"] =
          branches_json(run_teleportation(s, fx->code, fx->config, channel.recovery), &zero);
    }
  }
  if (o.tables) {
    json rows = json::array();
    for (const auto& r : reproduce_tables()) {
      rows.push_back({{"table", r.table},
                      {"row", r.label},
                      {"printed", r.printed},
                      {"simulated", r.simulated},
                      {"overlap", measured(r.overlap, kFidelityTol)},
                      {"matched", r.matched}});
    }
    results["tables"] = rows;
  }
  return {{{"inputs", inputs}, {"results", results}}, "", 0};
}

Result run_attack(const Options& o) {
  std::vector<double> thetas = o.thetas;
  if (thetas.empty()) {
    for (int i = 0; i <= 16; ++i) thetas.push_back(std::numbers::pi / 2.0 * i / 16.0);
  }
  const Secret s = parse_secret(o.secret, 2, Secret::qubit(1.0, 0.0));
  if (o.target < 1 || o.target > 5) throw ConfigError("attack target must be a qubit 1..5");
  std::vector<AttackRow> rows;
  try {
    rows = violation_under_attack(s, thetas, o.target - 1);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  json jr = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "theta,value,h1,h2,h3,h4,h5\n";
  for (const auto& r : rows) {
    json terms = json::array();
    for (double t : r.terms) terms.push_back(t);
    jr.push_back({{"theta", r.theta},
                  {"value", measured(r.value, kFidelityTol)},
                  {"reduced_value", measured(r.reduced_value, kExpectationTol)},
                  {"terms", terms}});
    csv << r.theta << ',' << r.value;
    for (double t : r.terms) csv << ',' << t;
    csv << '\n';
  }
  json inputs{{"secret", secret_json(s)}, {"target_qubit", o.target}};
  return {{{"inputs", inputs}, {"results", {{"sweep", jr}}}}, csv.str(), 0};
}

Result run_protocol_cmd(const Options& o) {
  ScenarioConfig cfg;
  cfg.copies = o.n == 0 ? 4097 : o.n;
  cfg.seed = o.seed;
  cfg.threshold = o.threshold;
  cfg.announcer = o.announcer;
  if (!o.thetas.empty()) {
    if (o.thetas.size() != 1) throw ConfigError("protocol takes a single --theta");
    if (o.target < 1) throw ConfigError("attack target must be a qubit number");
    cfg.attack = AttackParams{o.thetas.front(), o.target - 1};
  }
  const std::string name = o.scenario.empty() ? "cluster4" : o.scenario;
  std::optional<BellScenario> sc;
  std::optional<Secret> file_secret;
  if (std::filesystem::exists(name)) {
    ScenarioFile f = load_scenario(name);
    if (!f.bell) throw ConfigError("protocol scenario files need a \"bell\" section");
    const MeasurementSets defaults = sets_from_terms(f.bell->op, f.config);
    sc = BellScenario{"custom", f.code, f.config, f.bell->op, defaults};
    cfg.measurement_sets = f.measurement_sets;
    file_secret = f.secret;
  } else {
    sc = bell_scenario(name);
  }
  cfg.scenario = sc->name;
  const Secret s = !o.secret.empty() || !file_secret ? parse_secret(o.secret, sc->code.dim()) : *file_secret;
  const Transcript t = run_protocol(*sc, cfg, s);
  const json tj = to_json(t);
  if (!o.transcript.empty()) {
    std::ofstream f(o.transcript);
    if (!f) throw ConfigError("cannot write transcript to " + o.transcript);
    f << tj.dump(1) << '\n';
  }
  json inputs{{"scenario", name},
              {"copies", cfg.copies},
              {"seed", cfg.seed},
              {"announcer", cfg.announcer},
              {"secret", secret_json(s)},
              {"attack", tj["attack"]}};
  json bell = tj["bell_test"];
  bell["estimate"] = measured(t.bell.estimate, t.bell.standard_error);
  json results{{"transcript_schema", kTranscriptSchema},
               {"messages", t.messages.size()},
               {"bell_test", bell},
               {"recovery", tj["recovery"]},
               {"transcript_valid", validate_transcript(t).empty()}};
  return {{{"inputs", inputs}, {"results", results}}, "", t.bell.decision == Decision::Proceed ? 0 : 2};
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual quantum information splitting: analysis and protocol simulation", "dqis"};
  app.require_subcommand(1);
  Options o;
  std::string theta_text;

  auto common_output = [&](CLI::App* sub) {
    sub->add_option("--out", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", o.output, "Write the report to this path instead of stdout");
  };
  auto* graph = app.add_subcommand("graph", "Graph-state generators and canonical state");
  graph->add_option("--n", o.n, "Vertices of a linear cluster");
  graph->add_option("--scenario", o.scenario, "Graph JSON file");
  graph->add_option("--signature", o.signature, "Graph basis label, e.g. 0101");
  common_output(graph);

  auto* bell = app.add_subcommand("bell", "Bell operator terms, local-realist bound and quantum maximum");
  bell->add_option("--fixture", o.fixture, "cluster4, cluster4_phi1, cluster4_phi2, fiveq, steane or shor");
  bell->add_option("--scenario", o.scenario, "Bell operator JSON file");
  common_output(bell);

  auto* deg = app.add_subcommand("degeneracy", "Bell-degenerate generator signatures");
  deg->add_option("--fixture", o.fixture, "Built-in operator");
  deg->add_option("--scenario", o.scenario, "Bell operator JSON file");
  common_output(deg);

  auto* dq = app.add_subcommand("dqis", "Teleportation divergence and recovery over every branch");
  dq->add_option("--fixture", o.fixture, "cluster4, fiveq or ghz_negative");
  dq->add_option("--scenario", o.scenario, "Scenario JSON file");
  dq->add_option("--secret", o.secret, "Comma-separated amplitudes, each re or re:im");
  dq->add_flag("--tables", o.tables, "Recompute the worked-example tables");
  common_output(dq);

  auto* atk = app.add_subcommand("attack", "Bell violation under Eve's entangling probe");
  atk->add_option("--theta", o.thetas, "Probe angles in radians (default: 17 points on [0, pi/2])");
  atk->add_option("--target", o.target, "Attacked qubit, 1-based");
  atk->add_option("--secret", o.secret, "Comma-separated amplitudes, each re or re:im");
  common_output(atk);

  auto* proto = app.add_subcommand("protocol", "Full multi-party protocol run");
  proto->add_option("--scenario", o.scenario, "cluster4, fiveq or a scenario JSON file");
  proto->add_option("--n", o.n, "Number of distributed copies");
  proto->add_option("--seed", o.seed, "Random seed");
  proto->add_option("--threshold", o.threshold, "Violation needed to proceed");
  proto->add_option("--theta", o.thetas, "Attack every copy with this probe angle");
  proto->add_option("--target", o.target, "Attacked qubit, 1-based");
  proto->add_option("--announcer", o.announcer, "Who announces the reserved copy: Alice or Dolly");
  proto->add_option("--secret", o.secret, "Comma-separated amplitudes, each re or re:im");
  proto->add_option("--transcript", o.transcript, "Write the full transcript JSON here");
  common_output(proto);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!o.fixture.empty() && !o.scenario.empty()) throw ConfigError("use either --fixture or --scenario");
    Result r;
    if (command == "graph") r = run_graph(o);
    else if (command == "bell") r = run_bell(o);
    else if (command == "degeneracy") r = run_degeneracy(o);
    else if (command == "dqis") r = run_dqis(o);
    else if (command == "attack") r = run_attack(o);
    else r = run_protocol_cmd(o);

    std::string text;
    if (o.format == "csv") {
      if (r.csv.empty()) throw ConfigError("csv output is only available for attack");
      text = r.csv;
    } else {
      json report{{"schema", kReportSchema}, {"command", command}};
      report.update(r.report);
      text = report.dump(2) + "\n";
    }
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream f(o.output);
      if (!f) throw ConfigError("cannot write report to " + o.output);
      f << text;
    }
    return r.code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dqis
