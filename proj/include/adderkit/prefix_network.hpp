// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adderkit {

/// Inclusive bit span (hi:lo), LSB is bit 0. (i:j) covers bits j..i.
struct Span {
  int hi = 0;
  int lo = 0;
  friend bool operator==(const Span &, const Span &) = default;
};

/// Group generate/propagate pair over one span.
struct GroupGP {
  bool g = false;
  bool p = false;
  friend bool operator==(const GroupGP &, const GroupGP &) = default;
};

/// Prefix operator: merges an upper span (hi) with the adjacent lower span
/// (lo) into one group. Associative; not commutative.
constexpr GroupGP combine_gp(GroupGP hi, GroupGP lo) {
  return {hi.g || (hi.p && lo.g), hi.p && lo.p};
}

/// Generate-only merge: the carry out of a group given the generate below it.
/// This is the carry-stage algebra; the lower propagate is not needed.
constexpr bool gray_combine(GroupGP node, bool lower_g) {
  return node.g || (node.p && lower_g);
}

enum class NodeKind {
  Leaf,   // per-bit (g,p) source
  Black,  // two (g,p) inputs -> one (g,p) output
  Gray,   // (g,p) input + generate-only input -> generate-only output
  Buffer, // pass-through
};

enum class TopologyKind {
  BrentKung,
  KoggeStone,
  Sklansky,
  HanCarlson,
  RippleSerial,
};

std::string_view to_string(TopologyKind kind);
std::string_view to_string(NodeKind kind);
std::optional<TopologyKind> topology_from_string(std::string_view name);
std::optional<NodeKind> node_kind_from_string(std::string_view name);
const std::vector<TopologyKind> &all_topologies();

struct PrefixNode {
  int id = 0; // == index into PrefixNetwork::nodes
  NodeKind kind = NodeKind::Leaf;
  int level = 0; // every input sits at a strictly smaller level
  Span span;
  std::vector<int> inputs; // Black/Gray: {hi, lo}; Buffer: {in}; Leaf: {}
  friend bool operator==(const PrefixNode &, const PrefixNode &) = default;
};

/// Immutable carry-network DAG. Leaves are the per-bit (g,p) sources;
/// outputs[i] names the node whose span is (i:0). Carry-in is not part of
/// the network: carries are derived afterwards as
///   c_0 = cin,  c_{i+1} = gray_combine(value(outputs[i]), cin).
struct PrefixNetwork {
  int width = 0;
  TopologyKind topology = TopologyKind::BrentKung;
  std::vector<PrefixNode> nodes;
  std::vector<int> outputs;
  friend bool operator==(const PrefixNetwork &, const PrefixNetwork &) = default;
};

/// Deterministic generator for all supported topologies, any width >= 1.
/// Brent-Kung at non-power-of-two widths builds the 2^ceil(log2 n) tree and
/// drops every node whose span would end above bit n-1.
/// Throws std::invalid_argument for width < 1.
PrefixNetwork build_network(TopologyKind topology, int width);

enum class ViolationKind {
  Cycle,
  MissingOutput,
  SpanMismatch,
  LevelOrder,
  BadNode,          // arity, dangling ids, duplicate/missing leaves, ...
  GrayPropagateUse, // something consumes a Gray node's propagate
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  /// Count of violations of one kind.
  int count(ViolationKind kind) const;
};

ValidationReport validate_network(const PrefixNetwork &net);

/// Longest leaf-to-output path measured in operator nodes (Black/Gray count
/// 1, Leaf/Buffer count 0). Throws std::invalid_argument if the network is
/// not traversable (cycle, dangling input, missing outputs).
int network_depth(const PrefixNetwork &net);

/// The node-id path realizing network_depth. Among equally long paths the
/// lexicographically smallest id sequence is returned.
std::vector<int> longest_operator_path(const PrefixNetwork &net);

struct OperatorCounts {
  int black = 0;
  int gray = 0;
  int buffer = 0;
  int operators() const { return black + gray; }
  friend bool operator==(const OperatorCounts &, const OperatorCounts &) = default;
};

OperatorCounts operator_counts(const PrefixNetwork &net);

/// Maximum consumer count over all nodes: in-network reader edges, plus one
/// for being a designated per-bit output (the post-tree carry tap).
int max_fanout(const PrefixNetwork &net);

/// JSON interchange: {width, topology, nodes:[{id, kind, level,
/// span:[hi,lo], inputs:[...]}], outputs:[...]} with stable field order.
std::string network_to_json(const PrefixNetwork &net, int indent = 2);

/// Parses the interchange document. Throws std::invalid_argument on
/// malformed JSON or schema mismatches (ids must equal positions).
PrefixNetwork network_from_json(const std::string &text);

} // namespace adderkit
