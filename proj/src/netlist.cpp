// SPDX-License-Identifier: Apache-2.0
#include "adderkit/netlist.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace adderkit {

std::string_view to_string(GateKind kind) {
  switch (kind) {
  case GateKind::And:
    return "and";
  case GateKind::Or:
    return "or";
  case GateKind::Xor:
    return "xor";
  case GateKind::Buf:
    return "buf";
  }
  return "unknown";
}

std::vector<std::string> GateNetlist::input_port_nets() const {
  std::vector<std::string> nets;
  for (int i = 0; i < width; ++i) {
    nets.push_back("a[" + std::to_string(i) + "]");
  }
  for (int i = 0; i < width; ++i) {
    nets.push_back("b[" + std::to_string(i) + "]");
  }
  nets.push_back("cin");
  return nets;
}

std::vector<std::string> GateNetlist::output_port_nets() const {
  std::vector<std::string> nets;
  for (int i = 0; i < width; ++i) {
    nets.push_back("sum[" + std::to_string(i) + "]");
  }
  nets.push_back("cout");
  return nets;
}

std::vector<std::string> GateNetlist::internal_nets() const {
  std::set<std::string> outputs;
  for (const std::string &net : output_port_nets()) {
    outputs.insert(net);
  }
  std::vector<std::string> nets;
  for (const Gate &gate : gates) {
    if (!outputs.count(gate.output)) {
      nets.push_back(gate.output);
    }
  }
  return nets;
}

GateCounts GateNetlist::counts() const {
  GateCounts c;
  for (const Gate &gate : gates) {
    switch (gate.kind) {
    case GateKind::And:
      ++c.and_gates;
      break;
    case GateKind::Or:
      ++c.or_gates;
      break;
    case GateKind::Xor:
      ++c.xor_gates;
      break;
    case GateKind::Buf:
      ++c.buf_gates;
      break;
    }
  }
  return c;
}

NetlistCheck check_netlist(const GateNetlist &netlist) {
  NetlistCheck check;
  auto problem = [&check](const std::string &text) {
    check.problems.push_back(text);
  };
  if (netlist.width < 1) {
    problem("width " + std::to_string(netlist.width));
    return check;
  }

  std::set<std::string> driven;
  for (const std::string &net : netlist.input_port_nets()) {
    driven.insert(net);
  }

  std::map<std::string, int> driver; // net -> gate index
  for (size_t i = 0; i < netlist.gates.size(); ++i) {
    const Gate &gate = netlist.gates[i];
    if (gate.id != static_cast<int>(i)) {
      problem("gate at index " + std::to_string(i) + " has id " +
              std::to_string(gate.id));
    }
    const size_t arity = gate.kind == GateKind::Buf ? 1 : 2;
    if (gate.inputs.size() != arity) {
      problem("gate " + std::to_string(i) + ": " +
              std::string(to_string(gate.kind)) + " with " +
              std::to_string(gate.inputs.size()) + " inputs");
    }
    if (gate.output.empty()) {
      problem("gate " + std::to_string(i) + ": empty output net");
      continue;
    }
    if (driven.count(gate.output) || driver.count(gate.output)) {
      problem("net " + gate.output + " has more than one driver");
      continue;
    }
    driver[gate.output] = static_cast<int>(i);
  }

  for (const Gate &gate : netlist.gates) {
    for (const std::string &in : gate.inputs) {
      if (!driven.count(in) && !driver.count(in)) {
        problem("gate " + std::to_string(gate.id) + ": input " + in +
                " is undriven");
      }
    }
  }
  for (const std::string &net : netlist.output_port_nets()) {
    if (!driver.count(net)) {
      problem("output port " + net + " is undriven");
    }
  }
  if (!check.ok()) {
    return check; // the cycle walk below needs resolvable nets
  }

  // Kahn over gates; anything left over sits on a combinational loop.
  std::vector<int> indegree(netlist.gates.size(), 0);
  std::vector<std::vector<int>> consumers(netlist.gates.size());
  for (const Gate &gate : netlist.gates) {
    for (const std::string &in : gate.inputs) {
      auto it = driver.find(in);
      if (it != driver.end()) {
        consumers[it->second].push_back(gate.id);
        ++indegree[gate.id];
      }
    }
  }
  std::vector<int> order;
  for (size_t i = 0; i < netlist.gates.size(); ++i) {
    if (indegree[i] == 0) {
      order.push_back(static_cast<int>(i));
    }
  }
  for (size_t head = 0; head < order.size(); ++head) {
    for (int next : consumers[order[head]]) {
      if (--indegree[next] == 0) {
        order.push_back(next);
      }
    }
  }
  if (order.size() != netlist.gates.size()) {
    problem("combinational cycle through " +
            std::to_string(netlist.gates.size() - order.size()) + " gates");
  }
  return check;
}

namespace {

std::string span_tag(const PrefixNode &node) {
  return std::to_string(node.level) + "_" + std::to_string(node.span.hi) +
         "_" + std::to_string(node.span.lo);
}

class Expansion {
public:
  explicit Expansion(const PrefixNetwork &net) : net_(net) {
    // Valid Verilog identifier: kebab topology name with dashes folded.
    std::string name(to_string(net.topology));
    std::replace(name.begin(), name.end(), '-', '_');
    out_.name = name + "_adder";
    out_.width = net.width;
    for (const std::string &net_name : out_.input_port_nets()) {
      nets_.insert(net_name);
    }
  }

  GateNetlist run() {
    // Stage order follows the construction recipe: per-bit (g,p), the
    // operator tree in node order, the carry taps, then the sum bits.
    for (int bit = 0; bit < net_.width; ++bit) {
      const int leaf = leaf_of_bit(bit);
      const PrefixNode &node = net_.nodes[leaf];
      const std::string a = "a[" + std::to_string(bit) + "]";
      const std::string b = "b[" + std::to_string(bit) + "]";
      g_net_[leaf] = fresh("g_" + span_tag(node));
      p_net_[leaf] = fresh("p_" + span_tag(node));
      CellInstance cell{CellKind::Preprocess,
                        "pre_" + std::to_string(bit),
                        {{"a", a},
                         {"b", b},
                         {"g", g_net_[leaf]},
                         {"p", p_net_[leaf]}}};
      gate(GateKind::And, {a, b}, g_net_[leaf]);
      gate(GateKind::Xor, {a, b}, p_net_[leaf]);
      out_.cells.push_back(std::move(cell));
    }

    for (const PrefixNode &node : net_.nodes) {
      switch (node.kind) {
      case NodeKind::Leaf:
        break; // handled above, and duplicates of a bit are rejected there
      case NodeKind::Black: {
        const std::string g = fresh("g_" + span_tag(node));
        const std::string p = fresh("p_" + span_tag(node));
        const std::string t = fresh(g + "_t");
        const int hi = node.inputs[0];
        const int lo = node.inputs[1];
        gate(GateKind::And, {p_net_.at(hi), g_net_.at(lo)}, t);
        gate(GateKind::Or, {g_net_.at(hi), t}, g);
        gate(GateKind::And, {p_net_.at(hi), p_net_.at(lo)}, p);
        out_.cells.push_back({CellKind::Black,
                              "black_" + span_tag(node),
                              {{"gh", g_net_.at(hi)},
                               {"ph", p_net_.at(hi)},
                               {"gl", g_net_.at(lo)},
                               {"pl", p_net_.at(lo)},
                               {"g", g},
                               {"p", p}}});
        g_net_[node.id] = g;
        p_net_[node.id] = p;
        break;
      }
      case NodeKind::Gray: {
        const std::string g = fresh("g_" + span_tag(node));
        const std::string t = fresh(g + "_t");
        const int hi = node.inputs[0];
        const int lo = node.inputs[1];
        gate(GateKind::And, {p_net_.at(hi), g_net_.at(lo)}, t);
        gate(GateKind::Or, {g_net_.at(hi), t}, g);
        out_.cells.push_back({CellKind::Gray,
                              "gray_" + span_tag(node),
                              {{"gh", g_net_.at(hi)},
                               {"ph", p_net_.at(hi)},
                               {"gl", g_net_.at(lo)},
                               {"g", g}}});
        g_net_[node.id] = g;
        // No propagate rail; consumers were rejected by validation.
        break;
      }
      case NodeKind::Buffer: {
        const std::string g = fresh("g_" + span_tag(node));
        const int in = node.inputs[0];
        gate(GateKind::Buf, {g_net_.at(in)}, g);
        out_.cells.push_back({CellKind::White,
                              "white_" + span_tag(node),
                              {{"a", g_net_.at(in)}, {"y", g}}});
        g_net_[node.id] = g;
        if (p_net_.count(in)) {
          p_net_[node.id] = p_net_.at(in); // propagate passes through unbuffered
        }
        break;
      }
      }
    }

    // Carry taps: c_{i+1} = G(i:0) | (P(i:0) & cin). Built as gray cells
    // with cin on the generate-below port; the top one drives cout.
    for (int bit = 0; bit < net_.width; ++bit) {
      const int out = net_.outputs[bit];
      const std::string carry =
          bit + 1 == net_.width ? "cout" : "c" + std::to_string(bit + 1);
      const std::string t = fresh(carry + "_t");
      if (bit + 1 != net_.width) {
        fresh(carry); // reserve; "cout" is a port and pre-owned
      }
      gate(GateKind::And, {p_net_.at(out), "cin"}, t);
      gate(GateKind::Or, {g_net_.at(out), t}, carry);
      out_.cells.push_back({CellKind::Gray,
                            "carry_" + std::to_string(bit + 1),
                            {{"gh", g_net_.at(out)},
                             {"ph", p_net_.at(out)},
                             {"gl", "cin"},
                             {"g", carry}}});
    }

    for (int bit = 0; bit < net_.width; ++bit) {
      const std::string carry =
          bit == 0 ? "cin" : "c" + std::to_string(bit);
      const std::string s = "sum[" + std::to_string(bit) + "]";
      gate(GateKind::Xor, {p_net_.at(leaf_of_bit(bit)), carry}, s);
      out_.cells.push_back({CellKind::Postprocess,
                            "post_" + std::to_string(bit),
                            {{"p", p_net_.at(leaf_of_bit(bit))},
                             {"c", carry},
                             {"s", s}}});
    }
    return std::move(out_);
  }

private:
  int leaf_of_bit(int bit) {
    if (leaf_of_bit_.empty()) {
      leaf_of_bit_.assign(net_.width, -1);
      for (const PrefixNode &node : net_.nodes) {
        if (node.kind == NodeKind::Leaf) {
          if (leaf_of_bit_[node.span.lo] >= 0) {
            throw std::invalid_argument("bit " + std::to_string(node.span.lo) +
                                        " has more than one leaf");
          }
          leaf_of_bit_[node.span.lo] = node.id;
        }
      }
      for (int i = 0; i < net_.width; ++i) {
        if (leaf_of_bit_[i] < 0) {
          throw std::invalid_argument("bit " + std::to_string(i) +
                                      " has no leaf");
        }
      }
    }
    return leaf_of_bit_[bit];
  }

  /// Registers a net name, rejecting collisions (distinct nodes sharing
  /// level and span would alias otherwise).
  std::string fresh(const std::string &name) {
    if (!nets_.insert(name).second) {
      throw std::invalid_argument("duplicate net name " + name);
    }
    return name;
  }

  void gate(GateKind kind, std::vector<std::string> inputs,
            const std::string &output) {
    out_.gates.push_back({static_cast<int>(out_.gates.size()), kind,
                          std::move(inputs), output});
  }

  const PrefixNetwork &net_;
  GateNetlist out_;
  std::set<std::string> nets_;
  std::vector<int> leaf_of_bit_;
  std::map<int, std::string> g_net_, p_net_;
};

} // namespace

GateNetlist expand_to_gates(const PrefixNetwork &net) {
  const ValidationReport report = validate_network(net);
  if (!report.ok()) {
    throw std::invalid_argument("network fails validation: " +
                                report.violations.front().detail);
  }
  return Expansion(net).run();
}

} // namespace adderkit
