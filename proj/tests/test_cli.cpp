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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "dqis/cli.hpp"
#include "dqis/error.hpp"
#include "dqis/fixtures.hpp"
#include "dqis/json_io.hpp"

using namespace dqis;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dqis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

double value(const json& j) { return j.at("value").get<double>(); }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dqis_test_" + name);
}

json cluster_scenario() {
  return json::parse(R"({
    "codespace": {"graph": {"n": 4, "edges": [[1, 2], [2, 3], [3, 4]]}, "signatures": ["0000", "0101"]},
    "config": {
      "parties": [{"name": "Alice", "role": "dealer"}, {"name": "Bob", "role": "agent"},
                  {"name": "Rex", "role": "recoverer"}],
      "ownership": {"Alice": [1], "Bob": [2, 3], "Rex": [4]},
      "bases": {"Bob": "zz"}
    },
    "secret": [[0.6, 0.0], [0.0, 0.8]],
    "bell": {"generators": ["XZII", "ZXZI", "IZXZ", "IIZX"],
             "recipe": [[2, 4], [1, 2, 4], [1, 2, 3, 4], [2, 3, 4]]}
  })");
}

}  // namespace

TEST_CASE("bell report for the five-qubit operator") {
  const auto r = cli({"bell", "--fixture", "fiveq"});
  REQUIRE(r.code == 0);
  const auto op = r.report().at("results").at("operators").at(0);
  CHECK(value(op.at("lr_bound")) == 3);
  CHECK(value(op.at("quantum_max")) == doctest::Approx(5.0));
  CHECK(op.at("terms_product") == "IIIII");
  CHECK(r.report().at("schema") == std::string(kReportSchema));
}

TEST_CASE("cluster4 expands to both operators") {
  const auto ops = cli({"bell", "--fixture", "cluster4"}).report().at("results").at("operators");
  REQUIRE(ops.size() == 2);
  for (const auto& op : ops) {
    CHECK(value(op.at("lr_bound")) == 2);
    CHECK(value(op.at("quantum_max")) == doctest::Approx(4.0));
  }
}

TEST_CASE("degeneracy report") {
  const auto r = cli({"degeneracy", "--fixture", "steane"});
  REQUIRE(r.code == 0);
  const auto op = r.report().at("results").at("operators").at(0);
  CHECK(value(op.at("signature_count")) == 8);
  CHECK(value(op.at("listed").at("count")) == 4);
}

TEST_CASE("attack report") {
  const auto r = cli({"attack", "--theta", "1.5707963"});
  REQUIRE(r.code == 0);
  const auto row = r.report().at("results").at("sweep").at(0);
  CHECK(value(row.at("value")) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(cli({"attack"}).report().at("results").at("sweep").size() == 17);
  CHECK(cli({"attack", "--theta", "2"}).code == 1);
  CHECK(cli({"attack", "--target", "6"}).code == 1);
}

TEST_CASE("csv output") {
  const auto r = cli({"attack", "--theta", "0", "--theta", "1", "--out", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header.rfind("theta,value", 0) == 0);
  CHECK(first.rfind("0,5", 0) == 0);
}

TEST_CASE("graph report") {
  const auto r = cli({"graph", "--n", "4", "--signature", "0101"});
  REQUIRE(r.code == 0);
  const auto gens = r.report().at("results").at("generators");
  REQUIRE(gens.size() == 4);
  CHECK(gens.at(0).at("generator") == "XZII");
  CHECK(value(gens.at(1).at("expectation")) == doctest::Approx(-1.0));
  CHECK(cli({"graph", "--n", "4", "--signature", "01"}).code == 1);
}

TEST_CASE("dqis report") {
  const auto r = cli({"dqis", "--fixture", "cluster4", "--secret", "0.6,0:0.8"});
  REQUIRE(r.code == 0);
  const auto res = r.report().at("results");
  CHECK(res.at("divergent") == true);
  CHECK(res.at("branches").size() == 16);
  const auto ghz = cli({"dqis", "--fixture", "ghz_negative"}).report().at("results");
  CHECK(ghz.at("divergent") == false);
  CHECK(cli({"dqis", "--fixture", "nothing"}).code == 1);
}

TEST_CASE("protocol exit codes") {
  CHECK(cli({"protocol", "--n", "2000"}).code == 0);
  CHECK(cli({"protocol", "--scenario", "fiveq", "--n", "4000", "--theta", "1.5707963267948966", "--secret", "1,0",
             "--seed", "1"})
            .code == 2);
  CHECK(cli({"protocol", "--n", "1"}).code == 1);
  CHECK(cli({"protocol", "--threshold", "1"}).code == 1);
  CHECK(cli({"nonsense"}).code == 1);
  CHECK(cli({}).code == 1);
}

TEST_CASE("report and transcript files") {
  const auto report = temp_path("report.json");
  const auto transcript = temp_path("transcript.json");
  const auto r = cli({"protocol", "--n", "500", "--output", report.string(), "--transcript", transcript.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream rf(report), tf(transcript);
  const json rep = json::parse(rf), tr = json::parse(tf);
  CHECK(rep.at("command") == "protocol");
  CHECK(tr.at("schema") == "dqis.transcript/1");
  CHECK(tr.at("copies") == 500);
  std::filesystem::remove(report);
  std::filesystem::remove(transcript);
}

TEST_CASE("scenario files") {
  const auto path = temp_path("scenario.json");
  {
    std::ofstream f(path);
    f << cluster_scenario().dump(2);
  }
  const auto sc = load_scenario(path.string());
  CHECK(sc.code.dim() == 2);
  CHECK(sc.config.recoverer().qubits == std::vector<std::size_t>{3});
  REQUIRE(sc.bell.has_value());
  CHECK(sc.bell->op.terms() == bell_fixture("cluster4_phi2").op.terms());

  CHECK(cli({"dqis", "--scenario", path.string()}).report().at("results").at("divergent") == true);
  CHECK(value(cli({"bell", "--scenario", path.string()}).report().at("results").at("operators").at(0).at("lr_bound")) ==
        2);
  const auto proto = cli({"protocol", "--scenario", path.string(), "--n", "3000"});
  CHECK(proto.code == 0);

  auto bad = cluster_scenario();
  bad["config"]["ownership"]["Rex"] = json::array({5});
  CHECK_THROWS_AS(scenario_from_json(bad), ConfigError);
  bad = cluster_scenario();
  bad["bell"]["terms"] = json::array({"XXXX", "XXXX", "XXXX", "XXXX"});
  CHECK_THROWS_AS(scenario_from_json(bad), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_scenario(path.string()), ConfigError);
}

TEST_CASE("json round trips") {
  const Graph g = linear_cluster(5);
  CHECK(graph_from_json(graph_to_json(g)).edges() == g.edges());
  const auto s = fiveq_zero();
  CHECK(equal_up_to_global_phase(state_from_json(state_to_json(s), 5), s, 1e-12));
  const auto& fx = bell_fixture("shor");
  const BellSpec spec{fx.generators, fx.op};
  CHECK(bell_from_json(bell_to_json(spec)).op.terms() == fx.op.terms());
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 1]]})")), ConfigError);
}
