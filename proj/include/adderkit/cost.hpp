// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "adderkit/netlist.hpp"
#include "adderkit/prefix_network.hpp"

namespace adderkit {

/// Abstract per-gate delay weights (dimensionless units, not nanoseconds).
/// The fanout penalty adds alpha * max(0, consumers-1) to each driving gate;
/// ports are not gates and carry no weight or penalty. Keep weights dyadic
/// (k/2^m) if exact cross-checks against gate_sim are wanted.
struct DelayModel {
  double xor_delay = 2.0;
  double and_delay = 1.0;
  double or_delay = 1.0;
  double buffer_delay = 0.0;
  double fanout_penalty_alpha = 0.0;
};

/// Abstract per-gate area units.
struct AreaWeights {
  double and_area = 1.0;
  double or_area = 1.0;
  double xor_area = 2.0;
  double buf_area = 0.5;
};

struct CostReport {
  std::string topology;
  int width = 0;
  int depth_levels = 0;
  OperatorCounts operator_counts;
  GateCounts gate_counts;
  int max_fanout = 0;
  double weighted_delay = 0.0;
  double area = 0.0;
};

/// Weight one gate contributes to a path: its kind delay plus
/// fanout_penalty_alpha * max(0, gate consumers - 1). Ports reading a net
/// are not consumers. Single definition shared by estimate_delay and
/// critical_path so the two routes must agree.
double gate_weight(GateKind kind, int gate_consumers, const DelayModel &model);

/// Longest weighted input-to-output path over the gate expansion of the
/// network. Shares the weight definition with critical_path but computes
/// the maximum independently (forward relaxation over the gate DAG).
double estimate_delay(const PrefixNetwork &net, const DelayModel &model);

/// Sum of gate areas over the expansion's census.
double estimate_area(const PrefixNetwork &net, const AreaWeights &weights);

CostReport score_network(const PrefixNetwork &net, const DelayModel &model,
                         const AreaWeights &weights);

struct ComparisonTable {
  int width = 0;
  DelayModel model;
  AreaWeights weights;
  std::vector<CostReport> rows; // sorted by weighted_delay, ties by name
};

ComparisonTable compare_topologies(int width,
                                   const std::vector<TopologyKind> &topologies,
                                   const DelayModel &model = {},
                                   const AreaWeights &weights = {});

/// Aligned plain-text table (Sr. No. | Adder Type | Delay | Area | Depth |
/// Bit Width).
std::string comparison_to_text(const ComparisonTable &table);
std::string comparison_to_json(const ComparisonTable &table, int indent = 2);

} // namespace adderkit
