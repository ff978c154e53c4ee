// SPDX-License-Identifier: Apache-2.0
#include "adderkit/prefix_network.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace adderkit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string node_ref(const PrefixNode &node) {
  return "node " + std::to_string(node.id);
}

} // namespace

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
  case TopologyKind::BrentKung:
    return "brent-kung";
  case TopologyKind::KoggeStone:
    return "kogge-stone";
  case TopologyKind::Sklansky:
    return "sklansky";
  case TopologyKind::HanCarlson:
    return "han-carlson";
  case TopologyKind::RippleSerial:
    return "ripple-serial";
  }
  return "unknown";
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
  case NodeKind::Leaf:
    return "leaf";
  case NodeKind::Black:
    return "black";
  case NodeKind::Gray:
    return "gray";
  case NodeKind::Buffer:
    return "buffer";
  }
  return "unknown";
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::Cycle:
    return "cycle";
  case ViolationKind::MissingOutput:
    return "missing-output";
  case ViolationKind::SpanMismatch:
    return "span-mismatch";
  case ViolationKind::LevelOrder:
    return "level-order";
  case ViolationKind::BadNode:
    return "bad-node";
  case ViolationKind::GrayPropagateUse:
    return "gray-propagate-use";
  }
  return "unknown";
}

std::optional<TopologyKind> topology_from_string(std::string_view name) {
  for (TopologyKind kind : all_topologies()) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  return std::nullopt;
}

std::optional<NodeKind> node_kind_from_string(std::string_view name) {
  for (NodeKind kind : {NodeKind::Leaf, NodeKind::Black, NodeKind::Gray,
                        NodeKind::Buffer}) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  return std::nullopt;
}

const std::vector<TopologyKind> &all_topologies() {
  static const std::vector<TopologyKind> kAll = {
      TopologyKind::BrentKung,    TopologyKind::KoggeStone,
      TopologyKind::Sklansky,     TopologyKind::HanCarlson,
      TopologyKind::RippleSerial,
  };
  return kAll;
}

int ValidationReport::count(ViolationKind kind) const {
  int n = 0;
  for (const Violation &v : violations) {
    if (v.kind == kind) {
      ++n;
    }
  }
  return n;
}

namespace {

int expected_arity(NodeKind kind) {
  switch (kind) {
  case NodeKind::Leaf:
    return 0;
  case NodeKind::Buffer:
    return 1;
  case NodeKind::Black:
  case NodeKind::Gray:
    return 2;
  }
  return -1;
}

/// Structural pass used by both validate_network and the traversals:
/// ids match positions, inputs resolve, per-kind arity. Everything else
/// assumes these hold.
bool ids_and_arity_ok(const PrefixNetwork &net, ValidationReport *report) {
  bool ok = true;
  const int n = static_cast<int>(net.nodes.size());
  for (int i = 0; i < n; ++i) {
    const PrefixNode &node = net.nodes[i];
    if (node.id != i) {
      ok = false;
      if (report) {
        report->violations.push_back(
            {ViolationKind::BadNode, "node at index " + std::to_string(i) +
                                         " has id " + std::to_string(node.id)});
      }
      continue;
    }
    if (static_cast<int>(node.inputs.size()) != expected_arity(node.kind)) {
      ok = false;
      if (report) {
        report->violations.push_back(
            {ViolationKind::BadNode,
             node_ref(node) + ": " + std::string(to_string(node.kind)) +
                 " with " + std::to_string(node.inputs.size()) + " inputs"});
      }
    }
    for (int in : node.inputs) {
      if (in < 0 || in >= n) {
        ok = false;
        if (report) {
          report->violations.push_back(
              {ViolationKind::BadNode,
               node_ref(node) + ": input " + std::to_string(in) +
                   " out of range"});
        }
      }
    }
  }
  return ok;
}

/// Kahn topological order over the node DAG. Empty result means a cycle.
/// Requires ids_and_arity_ok.
std::vector<int> topological_order(const PrefixNetwork &net) {
  const int n = static_cast<int>(net.nodes.size());
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> consumers(n);
  for (const PrefixNode &node : net.nodes) {
    indegree[node.id] = static_cast<int>(node.inputs.size());
    for (int in : node.inputs) {
      consumers[in].push_back(node.id);
    }
  }
  std::vector<int> order;
  order.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) {
      order.push_back(i);
    }
  }
  for (size_t head = 0; head < order.size(); ++head) {
    for (int next : consumers[order[head]]) {
      if (--indegree[next] == 0) {
        order.push_back(next);
      }
    }
  }
  if (static_cast<int>(order.size()) != n) {
    return {};
  }
  return order;
}

} // namespace

ValidationReport validate_network(const PrefixNetwork &net) {
  ValidationReport report;
  if (net.width < 1) {
    report.violations.push_back(
        {ViolationKind::BadNode, "width " + std::to_string(net.width)});
    return report;
  }
  if (!ids_and_arity_ok(net, &report)) {
    return report;
  }

  std::vector<int> order = topological_order(net);
  if (order.empty() && !net.nodes.empty()) {
    report.violations.push_back({ViolationKind::Cycle, "node graph is cyclic"});
    return report;
  }

  for (const PrefixNode &node : net.nodes) {
    const Span span = node.span;
    if (span.lo < 0 || span.hi >= net.width || span.hi < span.lo) {
      report.violations.push_back(
          {ViolationKind::SpanMismatch,
           node_ref(node) + ": span (" + std::to_string(span.hi) + ":" +
               std::to_string(span.lo) + ") out of bounds"});
      continue;
    }
    switch (node.kind) {
    case NodeKind::Leaf:
      if (span.hi != span.lo) {
        report.violations.push_back(
            {ViolationKind::SpanMismatch,
             node_ref(node) + ": leaf span wider than one bit"});
      }
      break;
    case NodeKind::Buffer: {
      const Span in = net.nodes[node.inputs[0]].span;
      if (!(in == span)) {
        report.violations.push_back(
            {ViolationKind::SpanMismatch,
             node_ref(node) + ": buffer span differs from its input"});
      }
      break;
    }
    case NodeKind::Black:
    case NodeKind::Gray: {
      const Span hi = net.nodes[node.inputs[0]].span;
      const Span lo = net.nodes[node.inputs[1]].span;
      if (hi.lo != lo.hi + 1 || span.hi != hi.hi || span.lo != lo.lo) {
        report.violations.push_back(
            {ViolationKind::SpanMismatch,
             node_ref(node) + ": (" + std::to_string(span.hi) + ":" +
                 std::to_string(span.lo) + ") is not (" +
                 std::to_string(hi.hi) + ":" + std::to_string(hi.lo) +
                 ") joined with (" + std::to_string(lo.hi) + ":" +
                 std::to_string(lo.lo) + ")"});
      }
      break;
    }
    }
  }

  for (const PrefixNode &node : net.nodes) {
    if (node.inputs.empty()) {
      if (node.level != 0) {
        report.violations.push_back(
            {ViolationKind::LevelOrder,
             node_ref(node) + ": leaf at level " + std::to_string(node.level)});
      }
      continue;
    }
    for (int in : node.inputs) {
      if (net.nodes[in].level >= node.level) {
        report.violations.push_back(
            {ViolationKind::LevelOrder,
             node_ref(node) + ": level " + std::to_string(node.level) +
                 " not above input " + std::to_string(in) + " at level " +
                 std::to_string(net.nodes[in].level)});
      }
    }
  }

  std::vector<int> leaves_per_bit(net.width, 0);
  for (const PrefixNode &node : net.nodes) {
    if (node.kind == NodeKind::Leaf && node.span.hi == node.span.lo &&
        node.span.lo >= 0 && node.span.lo < net.width) {
      ++leaves_per_bit[node.span.lo];
    }
  }
  for (int bit = 0; bit < net.width; ++bit) {
    if (leaves_per_bit[bit] != 1) {
      report.violations.push_back(
          {ViolationKind::BadNode, "bit " + std::to_string(bit) + " has " +
                                       std::to_string(leaves_per_bit[bit]) +
                                       " leaves"});
    }
  }

  // Rail tracking: Gray nodes (and buffers of them) carry no propagate.
  // Consumers that need it: the hi side of any operator, the lo side of a
  // Black, and every designated output (the carry tap ANDs P with cin).
  std::vector<char> has_p(net.nodes.size(), 1);
  for (int id : order) {
    const PrefixNode &node = net.nodes[id];
    if (node.kind == NodeKind::Gray) {
      has_p[id] = 0;
    } else if (node.kind == NodeKind::Buffer) {
      has_p[id] = has_p[node.inputs[0]];
    }
  }
  for (const PrefixNode &node : net.nodes) {
    if (node.kind == NodeKind::Black || node.kind == NodeKind::Gray) {
      if (!has_p[node.inputs[0]]) {
        report.violations.push_back(
            {ViolationKind::GrayPropagateUse,
             node_ref(node) + ": hi input " + std::to_string(node.inputs[0]) +
                 " has no propagate"});
      }
      if (node.kind == NodeKind::Black && !has_p[node.inputs[1]]) {
        report.violations.push_back(
            {ViolationKind::GrayPropagateUse,
             node_ref(node) + ": lo input " + std::to_string(node.inputs[1]) +
                 " has no propagate"});
      }
    }
  }

  if (static_cast<int>(net.outputs.size()) != net.width) {
    report.violations.push_back(
        {ViolationKind::MissingOutput,
         std::to_string(net.outputs.size()) + " outputs for width " +
             std::to_string(net.width)});
  } else {
    for (int i = 0; i < net.width; ++i) {
      const int id = net.outputs[i];
      if (id < 0 || id >= static_cast<int>(net.nodes.size())) {
        report.violations.push_back(
            {ViolationKind::MissingOutput,
             "output " + std::to_string(i) + " names node " +
                 std::to_string(id)});
        continue;
      }
      if (!(net.nodes[id].span == Span{i, 0})) {
        report.violations.push_back(
            {ViolationKind::MissingOutput,
             "output " + std::to_string(i) + " has span (" +
                 std::to_string(net.nodes[id].span.hi) + ":" +
                 std::to_string(net.nodes[id].span.lo) + ")"});
        continue;
      }
      if (!has_p[id]) {
        report.violations.push_back(
            {ViolationKind::GrayPropagateUse,
             "output " + std::to_string(i) + " (node " + std::to_string(id) +
                 ") has no propagate for the carry tap"});
      }
    }
  }

  return report;
}

namespace {

struct LongestPath {
  int operators = 0;
  std::vector<int> ids;
};

/// Longest operator path ending at each node; ties prefer the
/// lexicographically smallest id sequence. Throws on cycles and unresolved
/// inputs.
std::vector<LongestPath> longest_paths(const PrefixNetwork &net) {
  if (!ids_and_arity_ok(net, nullptr)) {
    throw std::invalid_argument("network is not traversable");
  }
  std::vector<int> order = topological_order(net);
  if (order.empty() && !net.nodes.empty()) {
    throw std::invalid_argument("network contains a cycle");
  }
  std::vector<LongestPath> best(net.nodes.size());
  for (int id : order) {
    const PrefixNode &node = net.nodes[id];
    LongestPath here;
    for (int in : node.inputs) {
      const LongestPath &cand = best[in];
      if (here.ids.empty() || cand.operators > here.operators ||
          (cand.operators == here.operators && cand.ids < here.ids)) {
        here = cand;
      }
    }
    if (node.kind == NodeKind::Black || node.kind == NodeKind::Gray) {
      ++here.operators;
    }
    here.ids.push_back(id);
    best[id] = std::move(here);
  }
  return best;
}

const LongestPath &deepest_output(const PrefixNetwork &net,
                                  const std::vector<LongestPath> &best) {
  if (static_cast<int>(net.outputs.size()) != net.width || net.width < 1) {
    throw std::invalid_argument("network outputs are incomplete");
  }
  const LongestPath *top = nullptr;
  for (int id : net.outputs) {
    if (id < 0 || id >= static_cast<int>(net.nodes.size())) {
      throw std::invalid_argument("output names a missing node");
    }
    const LongestPath &cand = best[id];
    if (!top || cand.operators > top->operators ||
        (cand.operators == top->operators && cand.ids < top->ids)) {
      top = &cand;
    }
  }
  return *top;
}

} // namespace

int network_depth(const PrefixNetwork &net) {
  std::vector<LongestPath> best = longest_paths(net);
  return deepest_output(net, best).operators;
}

std::vector<int> longest_operator_path(const PrefixNetwork &net) {
  std::vector<LongestPath> best = longest_paths(net);
  return deepest_output(net, best).ids;
}

OperatorCounts operator_counts(const PrefixNetwork &net) {
  OperatorCounts counts;
  for (const PrefixNode &node : net.nodes) {
    switch (node.kind) {
    case NodeKind::Black:
      ++counts.black;
      break;
    case NodeKind::Gray:
      ++counts.gray;
      break;
    case NodeKind::Buffer:
      ++counts.buffer;
      break;
    case NodeKind::Leaf:
      break;
    }
  }
  return counts;
}

int max_fanout(const PrefixNetwork &net) {
  std::vector<int> fanout(net.nodes.size(), 0);
  for (const PrefixNode &node : net.nodes) {
    for (int in : node.inputs) {
      if (in >= 0 && in < static_cast<int>(fanout.size())) {
        ++fanout[in];
      }
    }
  }
  for (int id : net.outputs) {
    if (id >= 0 && id < static_cast<int>(fanout.size())) {
      ++fanout[id];
    }
  }
  int top = 0;
  for (int f : fanout) {
    top = std::max(top, f);
  }
  return top;
}

std::string network_to_json(const PrefixNetwork &net, int indent) {
  ordered_json doc;
  doc["width"] = net.width;
  doc["topology"] = to_string(net.topology);
  doc["nodes"] = ordered_json::array();
  for (const PrefixNode &node : net.nodes) {
    ordered_json item;
    item["id"] = node.id;
    item["kind"] = to_string(node.kind);
    item["level"] = node.level;
    item["span"] = {node.span.hi, node.span.lo};
    item["inputs"] = node.inputs;
    doc["nodes"].push_back(std::move(item));
  }
  doc["outputs"] = net.outputs;
  return doc.dump(indent);
}

namespace {

[[noreturn]] void schema_error(const std::string &what) {
  throw std::invalid_argument("network document: " + what);
}

int require_int(const ordered_json &doc, const char *key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    schema_error(std::string(key) + " must be an integer");
  }
  return doc[key].get<int>();
}

} // namespace

PrefixNetwork network_from_json(const std::string &text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    schema_error("not a JSON object");
  }
  PrefixNetwork net;
  net.width = require_int(doc, "width");
  if (!doc.contains("topology") || !doc["topology"].is_string()) {
    schema_error("topology must be a string");
  }
  const auto topology =
      topology_from_string(doc["topology"].get<std::string>());
  if (!topology) {
    schema_error("unknown topology " + doc["topology"].get<std::string>());
  }
  net.topology = *topology;
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    schema_error("nodes must be an array");
  }
  int index = 0;
  for (const ordered_json &item : doc["nodes"]) {
    if (!item.is_object()) {
      schema_error("nodes[" + std::to_string(index) + "] is not an object");
    }
    PrefixNode node;
    node.id = require_int(item, "id");
    if (node.id != index) {
      schema_error("nodes[" + std::to_string(index) + "] has id " +
                   std::to_string(node.id));
    }
    if (!item.contains("kind") || !item["kind"].is_string()) {
      schema_error("nodes[" + std::to_string(index) + "].kind");
    }
    const auto kind = node_kind_from_string(item["kind"].get<std::string>());
    if (!kind) {
      schema_error("unknown node kind " + item["kind"].get<std::string>());
    }
    node.kind = *kind;
    node.level = require_int(item, "level");
    if (!item.contains("span") || !item["span"].is_array() ||
        item["span"].size() != 2 || !item["span"][0].is_number_integer() ||
        !item["span"][1].is_number_integer()) {
      schema_error("nodes[" + std::to_string(index) + "].span");
    }
    node.span = {item["span"][0].get<int>(), item["span"][1].get<int>()};
    if (!item.contains("inputs") || !item["inputs"].is_array()) {
      schema_error("nodes[" + std::to_string(index) + "].inputs");
    }
    for (const ordered_json &in : item["inputs"]) {
      if (!in.is_number_integer()) {
        schema_error("nodes[" + std::to_string(index) + "].inputs");
      }
      node.inputs.push_back(in.get<int>());
    }
    net.nodes.push_back(std::move(node));
    ++index;
  }
  if (!doc.contains("outputs") || !doc["outputs"].is_array()) {
    schema_error("outputs must be an array");
  }
  for (const ordered_json &out : doc["outputs"]) {
    if (!out.is_number_integer()) {
      schema_error("outputs must hold integers");
    }
    net.outputs.push_back(out.get<int>());
  }
  return net;
}

} // namespace adderkit
