// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adderkit/prefix_network.hpp"

namespace adderkit {

enum class GateKind { And, Or, Xor, Buf };

std::string_view to_string(GateKind kind);

struct Gate {
  int id = 0;
  GateKind kind = GateKind::And;
  std::vector<std::string> inputs; // 1 net for Buf, 2 otherwise
  std::string output;              // unique across the netlist
};

/// Logical cell grouping of the flat gates, used for hierarchical emission.
enum class CellKind { Preprocess, Black, Gray, White, Postprocess };

struct CellInstance {
  CellKind kind;
  std::string name;
  std::vector<std::pair<std::string, std::string>> ports; // (port, net)
};

struct GateCounts {
  int and_gates = 0;
  int or_gates = 0;
  int xor_gates = 0;
  int buf_gates = 0;
  int total() const { return and_gates + or_gates + xor_gates + buf_gates; }
  friend bool operator==(const GateCounts &, const GateCounts &) = default;
};

/// Flattened gate graph with named nets. Ports are a[width-1:0],
/// b[width-1:0], cin, sum[width-1:0], cout; scalar net names are a[i], b[i],
/// cin, sum[i], cout. `cells` is the hierarchical view of exactly the same
/// gates.
struct GateNetlist {
  std::string name;
  int width = 0;
  std::vector<Gate> gates;
  std::vector<CellInstance> cells;

  std::vector<std::string> input_port_nets() const;
  std::vector<std::string> output_port_nets() const;
  /// Nets driven by gates that are not output ports, in driver order.
  std::vector<std::string> internal_nets() const;
  GateCounts counts() const;
};

struct NetlistCheck {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Structural invariants: single driver per net (ports count as drivers of
/// themselves), every gate input driven, no combinational cycle, per-kind
/// arity, all output ports driven.
NetlistCheck check_netlist(const GateNetlist &netlist);

/// Expands a valid prefix network into primitive gates:
///   per bit        1 AND + 1 XOR            (preprocess)
///   Black node     2 AND + 1 OR
///   Gray node      1 AND + 1 OR             (generate rail only)
///   Buffer node    1 BUF                    (generate rail; propagate aliases)
///   per carry      1 AND + 1 OR             (c_{i+1} from (i:0) and cin)
///   per bit        1 XOR                    (sum)
/// Net names are g_<level>_<hi>_<lo> / p_<level>_<hi>_<lo> for node outputs,
/// with a _t suffix for the in-cell AND, and c<i> for carries.
/// Throws std::invalid_argument if validate_network rejects the input.
GateNetlist expand_to_gates(const PrefixNetwork &net);

} // namespace adderkit
