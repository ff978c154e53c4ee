// SPDX-License-Identifier: Apache-2.0
//
// adderkit: generate, verify, compare, emit, and simulate carry networks.
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adderkit/cost.hpp"
#include "adderkit/functional.hpp"
#include "adderkit/netlist.hpp"
#include "adderkit/prefix_network.hpp"
#include "adderkit/simulate.hpp"
#include "adderkit/vcd.hpp"
#include "adderkit/verilog.hpp"

namespace {

using adderkit::TestVector;
using adderkit::TopologyKind;
using ordered_json = nlohmann::ordered_json;

constexpr const char *kVersion = "0.1.0";

constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

/// Thrown for configuration problems discovered after flag parsing; mapped
/// to the usage exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TopologyKind parse_topology(const std::string &name) {
  auto kind = adderkit::topology_from_string(name);
  if (!kind && name == "ripple") {
    kind = TopologyKind::RippleSerial; // common shorthand
  }
  if (!kind) {
    std::string valid;
    for (TopologyKind k : adderkit::all_topologies()) {
      if (!valid.empty()) {
        valid += ", ";
      }
      valid += to_string(k);
    }
    throw ConfigError("unknown topology '" + name + "' (valid: " + valid +
                      ")");
  }
  return *kind;
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path &path, const std::string &text) {
  if (!path.parent_path().empty()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw ConfigError("short write to " + path.string());
  }
}

ordered_json envelope(const std::string &command, ordered_json config,
                      ordered_json report) {
  ordered_json doc;
  doc["tool"] = "adderkit";
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["config"] = std::move(config);
  doc["report"] = std::move(report);
  return doc;
}

std::string slug(const adderkit::PrefixNetwork &net) {
  return std::string(to_string(net.topology)) + "-w" +
         std::to_string(net.width);
}

std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

/// Deterministic stimulus with oracle-filled expectations, 10ns apart.
std::vector<TestVector> random_vectors(int width, std::uint64_t count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = width_mask(width);
  std::vector<TestVector> vectors;
  vectors.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    TestVector v;
    v.a = rng() & mask;
    v.b = rng() & mask;
    v.cin = (rng() & 1) != 0;
    const adderkit::AdditionResult want =
        adderkit::oracle_add(v.a, v.b, v.cin, width);
    v.expected_sum = want.sum.value();
    v.expected_cout = want.carry_out;
    v.time_label_ns = 10 * i;
    vectors.push_back(v);
  }
  return vectors;
}

/// Corner operand pairs for widths without published vectors.
std::vector<TestVector> corner_vectors(int width) {
  const std::uint64_t mask = width_mask(width);
  std::vector<std::uint64_t> corners = {0, 1, mask,
                                        std::uint64_t{1} << (width - 1)};
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  std::vector<TestVector> vectors;
  std::uint64_t t = 0;
  for (std::uint64_t a : corners) {
    for (std::uint64_t b : corners) {
      for (bool cin : {false, true}) {
        TestVector v;
        v.a = a;
        v.b = b;
        v.cin = cin;
        const adderkit::AdditionResult want =
            adderkit::oracle_add(a, b, cin, width);
        v.expected_sum = want.sum.value();
        v.expected_cout = want.carry_out;
        v.time_label_ns = t;
        t += 10;
        vectors.push_back(v);
      }
    }
  }
  return vectors;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string topology;
  int width = 0;
  std::string out_dir = "out";
};

int cmd_generate(const GenerateArgs &args) {
  const adderkit::PrefixNetwork net =
      adderkit::build_network(parse_topology(args.topology), args.width);
  const adderkit::OperatorCounts ops = adderkit::operator_counts(net);

  const std::filesystem::path path =
      std::filesystem::path(args.out_dir) / (slug(net) + ".network.json");
  write_file(path, adderkit::network_to_json(net) + "\n");

  std::cout << to_string(net.topology) << " width " << net.width
            << ": operators " << ops.operators() << " (black " << ops.black
            << ", gray " << ops.gray << ", buffer " << ops.buffer
            << "), depth " << adderkit::network_depth(net) << ", max fanout "
            << adderkit::max_fanout(net) << "\n";
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string topology;
  int width = 0;
  std::string network_file;
  bool paper = false;
  bool exhaustive = false;
  std::uint64_t random_count = 0;
  std::uint64_t seed = 0;
  bool random_set = false;
  std::string out_dir = "out";
  std::string format = "text";
};

adderkit::PrefixNetwork load_network(const VerifyArgs &args) {
  if (!args.network_file.empty()) {
    try {
      return adderkit::network_from_json(read_file(args.network_file));
    } catch (const std::invalid_argument &e) {
      throw ConfigError(e.what());
    }
  }
  if (args.topology.empty() || args.width < 1) {
    throw ConfigError("pass --topology and --width, or --network FILE");
  }
  return adderkit::build_network(parse_topology(args.topology), args.width);
}

int cmd_verify(const VerifyArgs &args) {
  const adderkit::PrefixNetwork net = load_network(args);

  const int modes = (args.paper ? 1 : 0) + (args.exhaustive ? 1 : 0) +
                    (args.random_set ? 1 : 0);
  if (modes > 1) {
    throw ConfigError(
        "--paper-testbench, --exhaustive and --random are exclusive");
  }

  adderkit::VerificationReport report;
  std::string mode;
  if (args.paper) {
    mode = "paper-testbench";
    report.topology = to_string(net.topology);
    report.width = net.width;
    for (const adderkit::TestbenchRow &row :
         adderkit::run_paper_testbench(net)) {
      ++report.vectors_run;
      if (!row.pass) {
        ++report.mismatch_count;
        report.mismatches.push_back(
            {row.vector.a, row.vector.b, row.vector.cin, row.got.sum.value(),
             row.got.carry_out, row.vector.expected_sum,
             row.vector.expected_cout});
      }
    }
  } else if (args.random_set) {
    mode = "random";
    report = adderkit::verify_random(net, args.random_count, args.seed);
  } else {
    if (net.width > adderkit::kExhaustiveWidthLimit) {
      throw ConfigError(
          "width " + std::to_string(net.width) +
          " exceeds the exhaustive limit of " +
          std::to_string(adderkit::kExhaustiveWidthLimit) +
          "; pass --random COUNT [--seed S] or --paper-testbench");
    }
    mode = "exhaustive";
    report = adderkit::verify_exhaustive(net);
  }

  ordered_json config;
  config["mode"] = mode;
  config["topology"] = report.topology;
  config["width"] = report.width;
  if (!args.network_file.empty()) {
    config["network"] = args.network_file;
  }
  if (args.random_set) {
    config["count"] = args.random_count;
    config["seed"] = args.seed;
  }
  const ordered_json doc =
      envelope("verify", std::move(config),
               ordered_json::parse(adderkit::report_to_json(report)));

  const std::filesystem::path path =
      std::filesystem::path(args.out_dir) / (slug(net) + ".verify.json");
  write_file(path, doc.dump(2) + "\n");

  if (args.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << report.topology << " width " << report.width << " (" << mode
              << "): " << report.vectors_run << " vectors, "
              << report.mismatch_count << " mismatches\n";
    std::cout << "wrote " << path.string() << "\n";
  }
  return report.passed() ? 0 : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  int width = 0;
  bool all = false;
  std::vector<std::string> topologies;
  adderkit::DelayModel model;
  adderkit::AreaWeights weights;
  std::string out_dir = "out";
  std::string format = "text";
};

int cmd_compare(const CompareArgs &args) {
  std::vector<TopologyKind> kinds;
  if (args.all) {
    kinds = adderkit::all_topologies();
  } else {
    for (const std::string &name : args.topologies) {
      kinds.push_back(parse_topology(name));
    }
  }
  if (kinds.empty()) {
    throw ConfigError("pass --all or --topologies a,b,...");
  }

  const adderkit::ComparisonTable table =
      adderkit::compare_topologies(args.width, kinds, args.model,
                                   args.weights);
  const ordered_json full =
      ordered_json::parse(adderkit::comparison_to_json(table));

  ordered_json config;
  config["width"] = args.width;
  config["topologies"] = ordered_json::array();
  for (TopologyKind k : kinds) {
    config["topologies"].push_back(to_string(k));
  }
  const ordered_json doc = envelope("compare", std::move(config), full);
  const std::filesystem::path path =
      std::filesystem::path(args.out_dir) /
      ("compare-w" + std::to_string(args.width) + ".json");
  write_file(path, doc.dump(2) + "\n");

  if (args.format == "json") {
    std::cout << full["rows"].dump(2) << "\n";
  } else {
    std::cout << adderkit::comparison_to_text(table);
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// emit

struct EmitArgs {
  std::string topology;
  int width = 0;
  std::string style = "flat";
  std::string module_name;
  bool testbench = false;
  bool paper = false;
  std::string out_dir = "out";
};

int cmd_emit(const EmitArgs &args) {
  const adderkit::PrefixNetwork net =
      adderkit::build_network(parse_topology(args.topology), args.width);
  const adderkit::GateNetlist netlist = adderkit::expand_to_gates(net);

  adderkit::EmitOptions options;
  options.style = args.style == "hierarchical"
                      ? adderkit::EmitStyle::Hierarchical
                      : adderkit::EmitStyle::Flat;
  options.module_name = args.module_name;
  const std::string module =
      args.module_name.empty() ? netlist.name : args.module_name;

  std::string verilog;
  try {
    verilog = adderkit::emit_verilog(netlist, options);
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  const std::filesystem::path dut_path =
      std::filesystem::path(args.out_dir) / (module + ".v");
  write_file(dut_path, verilog);
  std::cout << "wrote " << dut_path.string() << "\n";

  if (args.testbench) {
    if (args.paper && args.width != 32) {
      throw ConfigError("the published vectors are 32-bit; --paper needs "
                        "--width 32");
    }
    const std::vector<TestVector> vectors =
        (args.paper || args.width == 32) ? adderkit::paper_testbench_vectors()
                                         : corner_vectors(args.width);
    const std::filesystem::path tb_path =
        std::filesystem::path(args.out_dir) / (module + "_tb.v");
    write_file(tb_path, adderkit::emit_testbench(args.width, vectors, module));
    std::cout << "wrote " << tb_path.string() << "\n";
  } else if (args.paper) {
    throw ConfigError("--paper only applies with --testbench");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sim

struct SimArgs {
  std::string topology;
  int width = 0;
  bool paper = false;
  std::uint64_t random_count = 0;
  std::uint64_t seed = 0;
  bool random_set = false;
  std::string vcd;
  bool toggles = false;
  std::string out_dir = "out";
  std::string format = "text";
};

int cmd_sim(const SimArgs &args) {
  if (args.paper == args.random_set) {
    throw ConfigError("pick one vector source: --paper-testbench or "
                      "--random COUNT [--seed S]");
  }
  if (args.paper && args.width != 32) {
    throw ConfigError("the published vectors are 32-bit; --paper-testbench "
                      "needs --width 32");
  }
  const adderkit::PrefixNetwork net =
      adderkit::build_network(parse_topology(args.topology), args.width);
  const adderkit::GateNetlist netlist = adderkit::expand_to_gates(net);

  const std::vector<TestVector> vectors =
      args.paper ? adderkit::paper_testbench_vectors()
                 : random_vectors(args.width, args.random_count, args.seed);
  if (vectors.empty()) {
    throw ConfigError("--random needs a positive vector count");
  }

  const adderkit::ScheduleResult run = adderkit::run_schedule(netlist, vectors);

  std::uint64_t failures = 0;
  ordered_json rows = ordered_json::array();
  for (size_t i = 0; i < vectors.size(); ++i) {
    const TestVector &v = vectors[i];
    const adderkit::SimResult &got = run.outputs[i];
    const bool pass =
        got.sum == v.expected_sum && got.carry_out == v.expected_cout;
    if (!pass) {
      ++failures;
    }
    ordered_json row;
    row["time_ns"] = v.time_label_ns;
    row["a"] = v.a;
    row["b"] = v.b;
    row["cin"] = v.cin;
    row["expected_sum"] = v.expected_sum;
    row["expected_cout"] = v.expected_cout;
    row["got_sum"] = got.sum;
    row["got_cout"] = got.carry_out;
    row["pass"] = pass;
    rows.push_back(std::move(row));
  }

  ordered_json report;
  report["vectors_run"] = vectors.size();
  report["failures"] = failures;
  report["passed"] = failures == 0;
  // Net value changes between consecutive vectors; the first vector only
  // establishes state.
  std::uint64_t first_block = 0;
  for (const adderkit::SimChange &change : run.trace.changes) {
    if (change.time_ns == vectors.front().time_label_ns) {
      ++first_block;
    }
  }
  if (args.toggles) {
    report["toggles"] = run.trace.changes.size() - first_block;
  }
  report["rows"] = std::move(rows);

  std::filesystem::path vcd_path;
  if (!args.vcd.empty()) {
    vcd_path = std::filesystem::path(args.vcd);
    if (vcd_path.is_relative()) {
      vcd_path = std::filesystem::path(args.out_dir) / vcd_path;
    }
    write_file(vcd_path, adderkit::write_vcd(run.trace, netlist.name));
    report["vcd"] = vcd_path.string();
  }

  ordered_json config;
  config["topology"] = to_string(net.topology);
  config["width"] = args.width;
  config["source"] = args.paper ? "paper-testbench" : "random";
  if (args.random_set) {
    config["count"] = args.random_count;
    config["seed"] = args.seed;
  }
  const ordered_json doc = envelope("sim", std::move(config), report);
  const std::filesystem::path path =
      std::filesystem::path(args.out_dir) / (slug(net) + ".sim.json");
  write_file(path, doc.dump(2) + "\n");

  if (args.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << to_string(net.topology) << " width " << args.width << ": "
              << (vectors.size() - failures) << "/" << vectors.size()
              << " vectors pass";
    if (args.toggles) {
      std::cout << ", toggles "
                << (run.trace.changes.size() - first_block);
    }
    std::cout << "\n";
    if (!vcd_path.empty()) {
      std::cout << "wrote " << vcd_path.string() << "\n";
    }
    std::cout << "wrote " << path.string() << "\n";
  }
  return failures == 0 ? 0 : kExitVerificationFailure;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Parallel-prefix adder toolkit: carry-network generation, "
               "verification, scoring, Verilog emission, and gate-level "
               "simulation."};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GenerateArgs gen;
  CLI::App *generate =
      app.add_subcommand("generate", "Build a carry network, write its JSON "
                                     "form, print a summary");
  generate->add_option("--topology", gen.topology, "Network topology")
      ->required();
  generate->add_option("--width", gen.width, "Bit width")
      ->required()
      ->check(CLI::Range(1, 64));
  generate->add_option("--out-dir", gen.out_dir, "Output directory");

  VerifyArgs ver;
  CLI::App *verify = app.add_subcommand(
      "verify", "Check a network against the integer oracle");
  verify->add_option("--topology", ver.topology, "Network topology");
  verify->add_option("--width", ver.width, "Bit width")
      ->check(CLI::Range(1, 64));
  verify->add_option("--network", ver.network_file,
                     "Load the network from a JSON file instead");
  verify->add_flag("--paper-testbench", ver.paper,
                   "Run the seven published 32-bit vectors");
  verify->add_flag("--exhaustive", ver.exhaustive,
                   "Force exhaustive mode (width <= 12)");
  CLI::Option *ver_random = verify->add_option(
      "--random", ver.random_count, "Run this many seeded random vectors");
  verify->add_option("--seed", ver.seed, "Seed for --random");
  verify->add_option("--out-dir", ver.out_dir, "Output directory");
  verify->add_option("--format", ver.format, "Stdout format")
      ->check(CLI::IsMember({"text", "json"}));

  CompareArgs cmp;
  CLI::App *compare = app.add_subcommand(
      "compare", "Score topologies at one width and rank by delay");
  compare->add_option("--width", cmp.width, "Bit width")
      ->required()
      ->check(CLI::Range(1, 64));
  compare->add_flag("--all", cmp.all, "All supported topologies");
  compare->add_option("--topologies", cmp.topologies,
                      "Comma-separated topology names")
      ->delimiter(',');
  compare->add_option("--xor-delay", cmp.model.xor_delay, "XOR gate delay");
  compare->add_option("--and-delay", cmp.model.and_delay, "AND gate delay");
  compare->add_option("--or-delay", cmp.model.or_delay, "OR gate delay");
  compare->add_option("--buf-delay", cmp.model.buffer_delay,
                      "Buffer gate delay");
  compare->add_option("--fanout-alpha", cmp.model.fanout_penalty_alpha,
                      "Per-extra-consumer delay penalty");
  compare->add_option("--and-area", cmp.weights.and_area, "AND gate area");
  compare->add_option("--or-area", cmp.weights.or_area, "OR gate area");
  compare->add_option("--xor-area", cmp.weights.xor_area, "XOR gate area");
  compare->add_option("--buf-area", cmp.weights.buf_area, "Buffer gate area");
  compare->add_option("--out-dir", cmp.out_dir, "Output directory");
  compare->add_option("--format", cmp.format, "Stdout format")
      ->check(CLI::IsMember({"text", "json"}));

  EmitArgs emi;
  CLI::App *emit =
      app.add_subcommand("emit", "Write structural Verilog for a network");
  emit->add_option("--topology", emi.topology, "Network topology")
      ->required();
  emit->add_option("--width", emi.width, "Bit width")
      ->required()
      ->check(CLI::Range(1, 64));
  emit->add_option("--style", emi.style, "Module structure")
      ->check(CLI::IsMember({"flat", "hierarchical"}));
  emit->add_option("--module-name", emi.module_name,
                   "Override the DUT module name");
  emit->add_flag("--testbench", emi.testbench,
                 "Also write a self-checking testbench");
  emit->add_flag("--paper", emi.paper,
                 "Testbench uses the published 32-bit vectors");
  emit->add_option("--out-dir", emi.out_dir, "Output directory");

  SimArgs sim;
  CLI::App *simulate = app.add_subcommand(
      "sim", "Gate-level simulation with oracle checking");
  simulate->add_option("--topology", sim.topology, "Network topology")
      ->required();
  simulate->add_option("--width", sim.width, "Bit width")
      ->required()
      ->check(CLI::Range(1, 64));
  simulate->add_flag("--paper-testbench", sim.paper,
                     "Run the seven published 32-bit vectors");
  CLI::Option *sim_random = simulate->add_option(
      "--random", sim.random_count, "Run this many seeded random vectors");
  simulate->add_option("--seed", sim.seed, "Seed for --random");
  simulate->add_option("--vcd", sim.vcd,
                       "Write a value-change dump to this file");
  simulate->add_flag("--toggles", sim.toggles,
                     "Report net toggle counts across the run");
  simulate->add_option("--out-dir", sim.out_dir, "Output directory");
  simulate->add_option("--format", sim.format, "Stdout format")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }
  ver.random_set = ver_random->count() > 0;
  sim.random_set = sim_random->count() > 0;

  try {
    if (generate->parsed()) {
      return cmd_generate(gen);
    }
    if (verify->parsed()) {
      return cmd_verify(ver);
    }
    if (compare->parsed()) {
      return cmd_compare(cmp);
    }
    if (emit->parsed()) {
      return cmd_emit(emi);
    }
    if (simulate->parsed()) {
      return cmd_sim(sim);
    }
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
