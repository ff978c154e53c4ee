// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "adderkit/cost.hpp"
#include "adderkit/functional.hpp"
#include "adderkit/netlist.hpp"

namespace adderkit {

struct SimResult {
  uint64_t sum = 0;
  bool carry_out = false;
  std::map<std::string, bool> nets; // every net, ports included
};

/// Event-free gate-level simulator. Gates are levelized once (Kahn order)
/// at construction; each simulate() call is a single sweep in that order.
/// Throws std::invalid_argument if the netlist fails check_netlist.
class GateSimulator {
public:
  explicit GateSimulator(const GateNetlist &netlist);

  SimResult simulate(uint64_t a, uint64_t b, bool cin) const;
  int width() const { return width_; }

private:
  const GateNetlist *netlist_;
  int width_;
  std::vector<int> order_; // gate indices, topological
};

struct PathReport {
  std::vector<int> gate_ids; // input-to-output order
  double delay = 0.0;
};

/// Longest weighted path via backward memoized DFS over the gate DAG.
/// Same weight definition as estimate_delay; among equal-delay paths the
/// one with lexicographically smallest gate id sequence is reported.
PathReport critical_path(const GateNetlist &netlist, const DelayModel &model);

/// Total number of net value changes across consecutive vector
/// applications (the first vector establishes state, transitions between
/// vector k and k+1 are counted). Requires at least two vectors.
uint64_t toggle_count(const GateNetlist &netlist,
                      const std::vector<TestVector> &vectors);

struct SimChange {
  uint64_t time_ns = 0;
  std::string net;
  bool value = false;
};

struct SimTrace {
  std::vector<std::string> nets; // declaration order
  std::vector<SimChange> changes;
};

struct ScheduleResult {
  SimTrace trace;
  std::vector<SimResult> outputs; // one per vector
};

/// Applies each vector at its time label (labels must be strictly
/// increasing) and records per-net changes. At the first label every net
/// is recorded; later labels record only nets whose value changed.
ScheduleResult run_schedule(const GateNetlist &netlist,
                            const std::vector<TestVector> &vectors);

std::string sim_result_to_json(const SimResult &result, int indent = 2);
std::string path_report_to_json(const PathReport &report, int indent = 2);

} // namespace adderkit
