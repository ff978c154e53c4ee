// SPDX-License-Identifier: Apache-2.0
#include "adderkit/cost.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace adderkit {

namespace {

using ordered_json = nlohmann::ordered_json;

double kind_delay(GateKind kind, const DelayModel &model) {
  switch (kind) {
  case GateKind::And:
    return model.and_delay;
  case GateKind::Or:
    return model.or_delay;
  case GateKind::Xor:
    return model.xor_delay;
  case GateKind::Buf:
    return model.buffer_delay;
  }
  return 0.0;
}

std::map<std::string, int> consumer_counts(const GateNetlist &netlist) {
  std::map<std::string, int> counts;
  for (const Gate &gate : netlist.gates) {
    for (const std::string &in : gate.inputs) {
      ++counts[in];
    }
  }
  return counts;
}

/// Forward relaxation over the gates in id order. Expansion emits gates in
/// dependency order, so a single pass settles every arrival time.
double netlist_delay(const GateNetlist &netlist, const DelayModel &model) {
  const std::map<std::string, int> consumers = consumer_counts(netlist);
  std::map<std::string, double> arrival;
  for (const std::string &net : netlist.input_port_nets()) {
    arrival[net] = 0.0;
  }
  for (const Gate &gate : netlist.gates) {
    double inputs_ready = 0.0;
    for (const std::string &in : gate.inputs) {
      const auto it = arrival.find(in);
      if (it == arrival.end()) {
        throw std::invalid_argument("gate " + std::to_string(gate.id) +
                                    " reads undriven net " + in);
      }
      inputs_ready = std::max(inputs_ready, it->second);
    }
    const auto fanout = consumers.find(gate.output);
    const int gate_consumers = fanout == consumers.end() ? 0 : fanout->second;
    arrival[gate.output] =
        inputs_ready + gate_weight(gate.kind, gate_consumers, model);
  }
  double delay = 0.0;
  for (const std::string &net : netlist.output_port_nets()) {
    const auto it = arrival.find(net);
    if (it == arrival.end()) {
      throw std::invalid_argument("output port " + net + " is undriven");
    }
    delay = std::max(delay, it->second);
  }
  return delay;
}

double netlist_area(const GateNetlist &netlist, const AreaWeights &weights) {
  const GateCounts counts = netlist.counts();
  return counts.and_gates * weights.and_area +
         counts.or_gates * weights.or_area +
         counts.xor_gates * weights.xor_area +
         counts.buf_gates * weights.buf_area;
}

/// Integer-valued doubles print bare, everything else with up to three
/// decimals, trailing zeros dropped.
std::string format_number(double value) {
  if (value == static_cast<double>(static_cast<long long>(value))) {
    return std::to_string(static_cast<long long>(value));
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  std::string text(buf);
  while (text.back() == '0') {
    text.pop_back();
  }
  return text;
}

} // namespace

double gate_weight(GateKind kind, int gate_consumers, const DelayModel &model) {
  const int extra = gate_consumers > 1 ? gate_consumers - 1 : 0;
  return kind_delay(kind, model) + model.fanout_penalty_alpha * extra;
}

double estimate_delay(const PrefixNetwork &net, const DelayModel &model) {
  return netlist_delay(expand_to_gates(net), model);
}

double estimate_area(const PrefixNetwork &net, const AreaWeights &weights) {
  return netlist_area(expand_to_gates(net), weights);
}

CostReport score_network(const PrefixNetwork &net, const DelayModel &model,
                         const AreaWeights &weights) {
  const GateNetlist netlist = expand_to_gates(net);
  CostReport report;
  report.topology = to_string(net.topology);
  report.width = net.width;
  report.depth_levels = network_depth(net);
  report.operator_counts = operator_counts(net);
  report.gate_counts = netlist.counts();
  report.max_fanout = max_fanout(net);
  report.weighted_delay = netlist_delay(netlist, model);
  report.area = netlist_area(netlist, weights);
  return report;
}

ComparisonTable compare_topologies(int width,
                                   const std::vector<TopologyKind> &topologies,
                                   const DelayModel &model,
                                   const AreaWeights &weights) {
  ComparisonTable table;
  table.width = width;
  table.model = model;
  table.weights = weights;
  for (TopologyKind kind : topologies) {
    table.rows.push_back(score_network(build_network(kind, width), model,
                                       weights));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const CostReport &a, const CostReport &b) {
              if (a.weighted_delay != b.weighted_delay) {
                return a.weighted_delay < b.weighted_delay;
              }
              return a.topology < b.topology;
            });
  return table;
}

std::string comparison_to_text(const ComparisonTable &table) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Sr. No.", "Adder Type", "Delay", "Area", "Operators",
                  "Depth", "Bit Width"});
  int rank = 1;
  for (const CostReport &r : table.rows) {
    rows.push_back({std::to_string(rank++), r.topology,
                    format_number(r.weighted_delay), format_number(r.area),
                    std::to_string(r.operator_counts.operators()),
                    std::to_string(r.depth_levels), std::to_string(r.width)});
  }
  std::vector<size_t> widths(rows[0].size(), 0);
  for (const auto &row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::string text;
  for (const auto &row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) {
        text += "  ";
      }
      text += row[i];
      if (i + 1 < row.size()) {
        text.append(widths[i] - row[i].size(), ' ');
      }
    }
    text += '\n';
  }
  return text;
}

namespace {

ordered_json report_json(const CostReport &r) {
  ordered_json row;
  row["topology"] = r.topology;
  row["width"] = r.width;
  row["depth_levels"] = r.depth_levels;
  row["operators"] = {{"black", r.operator_counts.black},
                      {"gray", r.operator_counts.gray},
                      {"buffer", r.operator_counts.buffer},
                      {"total", r.operator_counts.operators()}};
  row["gates"] = {{"and", r.gate_counts.and_gates},
                  {"or", r.gate_counts.or_gates},
                  {"xor", r.gate_counts.xor_gates},
                  {"buf", r.gate_counts.buf_gates},
                  {"total", r.gate_counts.total()}};
  row["max_fanout"] = r.max_fanout;
  row["weighted_delay"] = r.weighted_delay;
  row["area"] = r.area;
  return row;
}

} // namespace

std::string comparison_to_json(const ComparisonTable &table, int indent) {
  ordered_json doc;
  doc["width"] = table.width;
  doc["delay_model"] = {{"xor", table.model.xor_delay},
                        {"and", table.model.and_delay},
                        {"or", table.model.or_delay},
                        {"buf", table.model.buffer_delay},
                        {"fanout_penalty_alpha",
                         table.model.fanout_penalty_alpha}};
  doc["area_weights"] = {{"and", table.weights.and_area},
                         {"or", table.weights.or_area},
                         {"xor", table.weights.xor_area},
                         {"buf", table.weights.buf_area}};
  doc["rows"] = ordered_json::array();
  for (const CostReport &r : table.rows) {
    doc["rows"].push_back(report_json(r));
  }
  return doc.dump(indent);
}

} // namespace adderkit
