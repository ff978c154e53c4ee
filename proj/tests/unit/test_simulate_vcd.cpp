// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "adderkit/cost.hpp"
#include "adderkit/functional.hpp"
#include "adderkit/netlist.hpp"
#include "adderkit/prefix_network.hpp"
#include "adderkit/simulate.hpp"
#include "adderkit/vcd.hpp"
#include "support/vcd_reader.hpp"

using namespace adderkit;

namespace {

std::vector<DelayModel> dyadic_models() {
  DelayModel unit;
  unit.xor_delay = 1.0;
  unit.and_delay = 1.0;
  unit.or_delay = 1.0;
  unit.buffer_delay = 1.0;
  DelayModel loaded;
  loaded.xor_delay = 2.5;
  loaded.and_delay = 1.25;
  loaded.or_delay = 0.75;
  loaded.buffer_delay = 0.5;
  loaded.fanout_penalty_alpha = 0.5;
  return {DelayModel{}, unit, loaded};
}

TestVector vec(std::uint64_t a, std::uint64_t b, bool cin,
               std::uint64_t label) {
  TestVector v;
  v.a = a;
  v.b = b;
  v.cin = cin;
  v.time_label_ns = label;
  return v;
}

} // namespace

TEST_CASE("GateSimulator rejects broken netlists and out-of-range operands") {
  GateNetlist broken;
  broken.name = "broken";
  broken.width = 1;
  CHECK_THROWS_AS(GateSimulator{broken}, std::invalid_argument);

  const GateNetlist ok =
      expand_to_gates(build_network(TopologyKind::BrentKung, 4));
  GateSimulator sim(ok);
  CHECK(sim.width() == 4);
  CHECK_THROWS_AS(sim.simulate(16, 0, false), std::invalid_argument);
  CHECK_THROWS_AS(sim.simulate(0, 31, true), std::invalid_argument);
}

TEST_CASE("gate simulation matches the oracle exhaustively at width 3") {
  for (TopologyKind kind : all_topologies()) {
    const GateNetlist gates = expand_to_gates(build_network(kind, 3));
    GateSimulator sim(gates);
    for (std::uint64_t a = 0; a < 8; ++a) {
      for (std::uint64_t b = 0; b < 8; ++b) {
        for (int cin = 0; cin < 2; ++cin) {
          const SimResult got = sim.simulate(a, b, cin != 0);
          const AdditionResult want = oracle_add(a, b, cin != 0, 3);
          CAPTURE(to_string(kind));
          REQUIRE(got.sum == want.sum.value());
          REQUIRE(got.carry_out == want.carry_out);
        }
      }
    }
  }
}

TEST_CASE("simulation exposes every net value") {
  const GateNetlist gates =
      expand_to_gates(build_network(TopologyKind::BrentKung, 2));
  GateSimulator sim(gates);
  const SimResult r = sim.simulate(3, 1, false); // 3+1 = 4: sum 0, cout 1
  CHECK(r.sum == 0);
  CHECK(r.carry_out);
  CHECK(r.nets.at("a[0]"));
  CHECK(r.nets.at("a[1]"));
  CHECK(r.nets.at("b[0]"));
  CHECK_FALSE(r.nets.at("b[1]"));
  CHECK_FALSE(r.nets.at("cin"));
  CHECK(r.nets.at("g_0_0_0"));       // 1&1
  CHECK_FALSE(r.nets.at("p_0_0_0")); // 1^1
  CHECK(r.nets.at("c1"));
  CHECK(r.nets.at("cout"));
  CHECK_FALSE(r.nets.at("sum[0]"));
  CHECK_FALSE(r.nets.at("sum[1]"));
  // 2 a + 2 b + cin + 2 sum + cout + 10 internal nets.
  CHECK(r.nets.size() == 18);
}

TEST_CASE("critical_path equals estimate_delay under dyadic models") {
  for (const DelayModel &model : dyadic_models()) {
    for (TopologyKind kind : all_topologies()) {
      for (int width : {1, 2, 3, 5, 6, 8}) {
        const PrefixNetwork net = build_network(kind, width);
        const GateNetlist gates = expand_to_gates(net);
        const PathReport path = critical_path(gates, model);
        CAPTURE(to_string(kind));
        CAPTURE(width);
        CAPTURE(model.xor_delay);
        CHECK(path.delay == estimate_delay(net, model));
      }
    }
  }
}

TEST_CASE("critical_path reports a real connected path") {
  const DelayModel model = dyadic_models()[2];
  const GateNetlist gates =
      expand_to_gates(build_network(TopologyKind::Sklansky, 8));
  const PathReport path = critical_path(gates, model);
  REQUIRE(!path.gate_ids.empty());

  std::map<std::string, int> consumers;
  std::map<std::string, int> driver;
  for (const Gate &gate : gates.gates) {
    driver[gate.output] = gate.id;
    for (const std::string &in : gate.inputs) {
      ++consumers[in];
    }
  }
  // Head is fed by at least one input port.
  bool port_fed = false;
  for (const std::string &in : gates.gates[path.gate_ids.front()].inputs) {
    port_fed = port_fed || !driver.count(in);
  }
  CHECK(port_fed);
  // Each hop consumes the previous gate's output, and the weights along the
  // path sum to the reported delay.
  double total = 0.0;
  for (size_t i = 0; i < path.gate_ids.size(); ++i) {
    const Gate &gate = gates.gates[path.gate_ids[i]];
    if (i > 0) {
      const std::string &prev = gates.gates[path.gate_ids[i - 1]].output;
      bool reads = false;
      for (const std::string &in : gate.inputs) {
        reads = reads || in == prev;
      }
      CHECK(reads);
    }
    const auto it = consumers.find(gate.output);
    total += gate_weight(gate.kind, it == consumers.end() ? 0 : it->second,
                         model);
  }
  CHECK(total == path.delay);
}

TEST_CASE("critical_path tie-breaks to the smallest gate ids") {
  DelayModel unit;
  unit.xor_delay = 1.0;
  unit.and_delay = 1.0;
  unit.or_delay = 1.0;
  unit.buffer_delay = 1.0;

  SUBCASE("head tie prefers the smaller id") {
    GateNetlist n;
    n.name = "heads";
    n.width = 1;
    n.gates.push_back({0, GateKind::Xor, {"a[0]", "b[0]"}, "sum[0]"});
    n.gates.push_back({1, GateKind::And, {"a[0]", "b[0]"}, "x"});
    n.gates.push_back({2, GateKind::And, {"b[0]", "cin"}, "y"});
    n.gates.push_back({3, GateKind::Or, {"x", "y"}, "cout"});
    const PathReport path = critical_path(n, unit);
    CHECK(path.delay == 2.0);
    CHECK(path.gate_ids == std::vector<int>{1, 3});
  }
  SUBCASE("hop tie prefers the smaller consumer id") {
    GateNetlist n;
    n.name = "hops";
    n.width = 1;
    n.gates.push_back({0, GateKind::And, {"a[0]", "b[0]"}, "x"});
    n.gates.push_back({1, GateKind::Or, {"x", "cin"}, "cout"});
    n.gates.push_back({2, GateKind::Xor, {"x", "b[0]"}, "sum[0]"});
    const PathReport path = critical_path(n, unit);
    CHECK(path.delay == 2.0);
    CHECK(path.gate_ids == std::vector<int>{0, 1});
  }
}

TEST_CASE("toggle_count needs two vectors and sees constant inputs as zero") {
  const GateNetlist gates =
      expand_to_gates(build_network(TopologyKind::BrentKung, 4));
  CHECK_THROWS_AS(toggle_count(gates, {}), std::invalid_argument);
  CHECK_THROWS_AS(toggle_count(gates, {vec(1, 2, false, 0)}),
                  std::invalid_argument);
  const std::vector<TestVector> constant = {
      vec(5, 9, true, 0), vec(5, 9, true, 10), vec(5, 9, true, 20)};
  CHECK(toggle_count(gates, constant) == 0);
}

TEST_CASE("toggle_count over a width-1 adder, counted by hand") {
  const GateNetlist gates =
      expand_to_gates(build_network(TopologyKind::BrentKung, 1));
  // 0+0 -> 1+0 with cin 0 changes exactly a[0], p_0_0_0, sum[0].
  const std::vector<TestVector> vectors = {vec(0, 0, false, 0),
                                           vec(1, 0, false, 10)};
  CHECK(toggle_count(gates, vectors) == 3);
  // Adding the reverse transition doubles the count.
  const std::vector<TestVector> there_and_back = {
      vec(0, 0, false, 0), vec(1, 0, false, 10), vec(0, 0, false, 20)};
  CHECK(toggle_count(gates, there_and_back) == 6);
}

TEST_CASE("toggle_count is reproducible") {
  const GateNetlist gates =
      expand_to_gates(build_network(TopologyKind::KoggeStone, 16));
  std::vector<TestVector> vectors;
  for (int i = 0; i < 8; ++i) {
    vectors.push_back(vec((0x1234u * i) & 0xFFFF, (0x9876u ^ i) & 0xFFFF,
                          i % 2 == 0, 10 * i));
  }
  CHECK(toggle_count(gates, vectors) == toggle_count(gates, vectors));
}

TEST_CASE("run_schedule validates its vector labels") {
  const GateNetlist gates =
      expand_to_gates(build_network(TopologyKind::BrentKung, 2));
  CHECK_THROWS_AS(run_schedule(gates, {}), std::invalid_argument);
  CHECK_THROWS_AS(
      run_schedule(gates, {vec(0, 0, false, 10), vec(1, 0, false, 10)}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      run_schedule(gates, {vec(0, 0, false, 10), vec(1, 0, false, 5)}),
      std::invalid_argument);
}

TEST_CASE("run_schedule records all nets first, then only changes") {
  const GateNetlist gates =
      expand_to_gates(build_network(TopologyKind::BrentKung, 2));
  const std::vector<TestVector> vectors = {
      vec(0, 0, false, 0), vec(0, 0, false, 10), vec(1, 0, false, 30)};
  const ScheduleResult result = run_schedule(gates, vectors);
  REQUIRE(result.outputs.size() == 3);
  CHECK(result.outputs[2].sum == 1);

  // Declaration order: inputs, outputs, internals.
  REQUIRE(result.trace.nets.size() == 18);
  CHECK(result.trace.nets[0] == "a[0]");
  CHECK(result.trace.nets[4] == "cin");
  CHECK(result.trace.nets[5] == "sum[0]");
  CHECK(result.trace.nets[7] == "cout");
  CHECK(result.trace.nets[8] == "g_0_0_0");

  std::map<std::uint64_t, int> per_time;
  for (const SimChange &change : result.trace.changes) {
    ++per_time[change.time_ns];
  }
  CHECK(per_time[0] == 18); // every net at the first label
  CHECK(per_time.count(10) == 0); // identical vector: no changes
  // 0+0 -> 1+0: a[0], p_0_0_0, sum[0] flip; the rest hold.
  CHECK(per_time[30] == 3);
}

TEST_CASE("VCD round-trips through the reader with exact changes") {
  const GateNetlist gates =
      expand_to_gates(build_network(TopologyKind::BrentKung, 4));
  const std::vector<TestVector> vectors = {
      vec(0, 0, false, 0), vec(15, 1, false, 10), vec(7, 8, true, 25)};
  const ScheduleResult result = run_schedule(gates, vectors);
  const std::string text = write_vcd(result.trace, "brent_kung_adder");
  CHECK(write_vcd(result.trace, "brent_kung_adder") == text);

  const testsupport::VcdDocument doc = testsupport::read_vcd(text);
  CHECK(doc.timescale == "1ns");
  CHECK(doc.module == "brent_kung_adder");
  CHECK(doc.nets == result.trace.nets);
  REQUIRE(doc.changes.size() == result.trace.changes.size());
  for (size_t i = 0; i < doc.changes.size(); ++i) {
    CHECK(doc.changes[i].time_ns == result.trace.changes[i].time_ns);
    CHECK(doc.changes[i].net == result.trace.changes[i].net);
    CHECK(doc.changes[i].value == result.trace.changes[i].value);
  }
}

TEST_CASE("VCD headers and time blocks follow the expected layout") {
  SimTrace trace;
  trace.nets = {"beta", "alpha"};
  trace.changes = {{0, "beta", true}, {0, "alpha", false}, {7, "alpha", true}};
  const std::string text = write_vcd(trace, "tiny");
  CHECK(text.find("$timescale 1ns $end\n") == 0);
  CHECK(text.find("$scope module tiny $end") != std::string::npos);
  // Codes assigned over sorted names: alpha '!', beta '"'; declarations in
  // trace order.
  CHECK(text.find("$var wire 1 \" beta $end\n$var wire 1 ! alpha $end") !=
        std::string::npos);
  // First block is $dumpvars with no #0 marker.
  CHECK(text.find("#0\n") == std::string::npos);
  CHECK(text.find("$dumpvars\n1\"\n0!\n$end\n#7\n1!\n") != std::string::npos);
  CHECK_THROWS_AS(write_vcd(trace, ""), std::invalid_argument);
}

TEST_CASE("VCD with a late first label emits the time before dumpvars") {
  SimTrace trace;
  trace.nets = {"n"};
  trace.changes = {{5, "n", true}};
  const std::string text = write_vcd(trace, "m");
  CHECK(text.find("#5\n$dumpvars\n1!\n$end\n") != std::string::npos);
}

TEST_CASE("VCD codes stay unique past the single-character range") {
  SimTrace trace;
  for (int i = 0; i < 200; ++i) {
    std::string name = "n" + std::to_string(1000 + i);
    trace.nets.push_back(name);
    trace.changes.push_back({0, name, i % 2 == 0});
  }
  const std::string text = write_vcd(trace, "wide");
  const testsupport::VcdDocument doc = testsupport::read_vcd(text);
  CHECK(doc.nets == trace.nets);
  CHECK(doc.changes.size() == trace.changes.size());
}

TEST_CASE("simulation JSON serializers produce parseable documents") {
  const GateNetlist gates =
      expand_to_gates(build_network(TopologyKind::BrentKung, 2));
  GateSimulator sim(gates);
  const SimResult r = sim.simulate(2, 1, true);
  const nlohmann::json doc = nlohmann::json::parse(sim_result_to_json(r));
  CHECK(doc["sum"] == r.sum);
  CHECK(doc["carry_out"] == r.carry_out);
  CHECK(doc["nets"].size() == r.nets.size());
  CHECK(doc["nets"]["cin"] == true);

  const PathReport path = critical_path(gates, DelayModel{});
  const nlohmann::json pdoc =
      nlohmann::json::parse(path_report_to_json(path));
  CHECK(pdoc["delay"] == path.delay);
  CHECK(pdoc["gate_ids"].size() == path.gate_ids.size());
}
