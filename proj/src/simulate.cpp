// SPDX-License-Identifier: Apache-2.0
#include "adderkit/simulate.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace adderkit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join_problems(const NetlistCheck &check) {
  std::string text = "netlist is not simulatable";
  for (const std::string &p : check.problems) {
    text += "; " + p;
  }
  return text;
}

std::unordered_map<std::string, int> driver_map(const GateNetlist &netlist) {
  std::unordered_map<std::string, int> driver;
  for (const Gate &gate : netlist.gates) {
    driver[gate.output] = gate.id;
  }
  return driver;
}

} // namespace

GateSimulator::GateSimulator(const GateNetlist &netlist) : netlist_(&netlist) {
  const NetlistCheck check = check_netlist(netlist);
  if (!check.ok()) {
    throw std::invalid_argument(join_problems(check));
  }
  width_ = netlist.width;

  const std::unordered_map<std::string, int> driver = driver_map(netlist);
  std::vector<int> indegree(netlist.gates.size(), 0);
  std::vector<std::vector<int>> consumers(netlist.gates.size());
  for (const Gate &gate : netlist.gates) {
    for (const std::string &in : gate.inputs) {
      const auto it = driver.find(in);
      if (it != driver.end()) {
        consumers[it->second].push_back(gate.id);
        ++indegree[gate.id];
      }
    }
  }
  order_.reserve(netlist.gates.size());
  for (size_t i = 0; i < netlist.gates.size(); ++i) {
    if (indegree[i] == 0) {
      order_.push_back(static_cast<int>(i));
    }
  }
  for (size_t head = 0; head < order_.size(); ++head) {
    for (int next : consumers[order_[head]]) {
      if (--indegree[next] == 0) {
        order_.push_back(next);
      }
    }
  }
  // check_netlist already rejected cycles; order_ covers every gate.
}

SimResult GateSimulator::simulate(std::uint64_t a, std::uint64_t b,
                                  bool cin) const {
  const std::uint64_t mask =
      width_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
  if ((a & ~mask) != 0 || (b & ~mask) != 0) {
    throw std::invalid_argument("operand does not fit in " +
                                std::to_string(width_) + " bits");
  }

  std::unordered_map<std::string, bool> value;
  for (int i = 0; i < width_; ++i) {
    value["a[" + std::to_string(i) + "]"] = (a >> i) & 1;
    value["b[" + std::to_string(i) + "]"] = (b >> i) & 1;
  }
  value["cin"] = cin;

  for (int id : order_) {
    const Gate &gate = netlist_->gates[id];
    bool out = false;
    switch (gate.kind) {
    case GateKind::And:
      out = value.at(gate.inputs[0]) && value.at(gate.inputs[1]);
      break;
    case GateKind::Or:
      out = value.at(gate.inputs[0]) || value.at(gate.inputs[1]);
      break;
    case GateKind::Xor:
      out = value.at(gate.inputs[0]) != value.at(gate.inputs[1]);
      break;
    case GateKind::Buf:
      out = value.at(gate.inputs[0]);
      break;
    }
    value[gate.output] = out;
  }

  SimResult result;
  for (int i = 0; i < width_; ++i) {
    if (value.at("sum[" + std::to_string(i) + "]")) {
      result.sum |= std::uint64_t{1} << i;
    }
  }
  result.carry_out = value.at("cout");
  result.nets.insert(value.begin(), value.end());
  return result;
}

PathReport critical_path(const GateNetlist &netlist, const DelayModel &model) {
  const NetlistCheck check = check_netlist(netlist);
  if (!check.ok()) {
    throw std::invalid_argument(join_problems(check));
  }

  const std::unordered_map<std::string, int> driver = driver_map(netlist);
  std::vector<std::vector<int>> consumers(netlist.gates.size());
  std::vector<bool> port_fed(netlist.gates.size(), false);
  for (const Gate &gate : netlist.gates) {
    for (const std::string &in : gate.inputs) {
      const auto it = driver.find(in);
      if (it != driver.end()) {
        consumers[it->second].push_back(gate.id);
      } else {
        port_fed[gate.id] = true; // an input port feeds this gate
      }
    }
  }
  std::vector<double> weight(netlist.gates.size());
  for (const Gate &gate : netlist.gates) {
    weight[gate.id] = gate_weight(
        gate.kind, static_cast<int>(consumers[gate.id].size()), model);
  }

  // down[g]: delay of the heaviest gate chain starting at g, inclusive.
  // Memoized depth-first walk toward the outputs; the netlist is acyclic.
  std::vector<double> down(netlist.gates.size(), -1.0);
  const std::function<double(int)> settle = [&](int id) {
    if (down[id] >= 0.0) {
      return down[id];
    }
    double tail = 0.0;
    for (int next : consumers[id]) {
      tail = std::max(tail, settle(next));
    }
    down[id] = weight[id] + tail;
    return down[id];
  };
  for (const Gate &gate : netlist.gates) {
    settle(gate.id);
  }

  // A full path starts at a port-fed gate; ties pick the smallest head,
  // then the smallest id at every hop, giving the least id sequence.
  PathReport report;
  int head = -1;
  for (const Gate &gate : netlist.gates) {
    if (port_fed[gate.id] && (head < 0 || down[gate.id] > down[head])) {
      head = gate.id;
    }
  }
  if (head < 0) {
    return report; // no gates at all
  }
  report.delay = down[head];
  int cursor = head;
  while (true) {
    report.gate_ids.push_back(cursor);
    int next = -1;
    for (int cand : consumers[cursor]) {
      if (down[cand] == down[cursor] - weight[cursor] &&
          (next < 0 || cand < next)) {
        next = cand;
      }
    }
    if (next < 0) {
      break;
    }
    cursor = next;
  }
  return report;
}

uint64_t toggle_count(const GateNetlist &netlist,
                      const std::vector<TestVector> &vectors) {
  if (vectors.size() < 2) {
    throw std::invalid_argument("toggle counting needs at least two vectors");
  }
  GateSimulator sim(netlist);
  SimResult prev = sim.simulate(vectors[0].a, vectors[0].b, vectors[0].cin);
  std::uint64_t toggles = 0;
  for (size_t i = 1; i < vectors.size(); ++i) {
    SimResult cur = sim.simulate(vectors[i].a, vectors[i].b, vectors[i].cin);
    auto p = prev.nets.begin();
    for (auto c = cur.nets.begin(); c != cur.nets.end(); ++c, ++p) {
      if (c->second != p->second) {
        ++toggles;
      }
    }
    prev = std::move(cur);
  }
  return toggles;
}

ScheduleResult run_schedule(const GateNetlist &netlist,
                            const std::vector<TestVector> &vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("schedule needs at least one vector");
  }
  for (size_t i = 1; i < vectors.size(); ++i) {
    if (vectors[i].time_label_ns <= vectors[i - 1].time_label_ns) {
      throw std::invalid_argument("vector times must be strictly increasing");
    }
  }
  GateSimulator sim(netlist);

  ScheduleResult result;
  for (const std::string &net : netlist.input_port_nets()) {
    result.trace.nets.push_back(net);
  }
  for (const std::string &net : netlist.output_port_nets()) {
    result.trace.nets.push_back(net);
  }
  for (const std::string &net : netlist.internal_nets()) {
    result.trace.nets.push_back(net);
  }

  std::map<std::string, bool> state;
  for (const TestVector &v : vectors) {
    SimResult out = sim.simulate(v.a, v.b, v.cin);
    for (const std::string &net : result.trace.nets) {
      const bool value = out.nets.at(net);
      if (state.empty() ? true : state.at(net) != value) {
        result.trace.changes.push_back({v.time_label_ns, net, value});
      }
    }
    state = out.nets;
    result.outputs.push_back(std::move(out));
  }
  return result;
}

std::string sim_result_to_json(const SimResult &result, int indent) {
  ordered_json doc;
  doc["sum"] = result.sum;
  doc["carry_out"] = result.carry_out;
  ordered_json nets = ordered_json::object();
  for (const auto &entry : result.nets) {
    nets[entry.first] = entry.second;
  }
  doc["nets"] = std::move(nets);
  return doc.dump(indent);
}

std::string path_report_to_json(const PathReport &report, int indent) {
  ordered_json doc;
  doc["delay"] = report.delay;
  doc["gate_ids"] = report.gate_ids;
  return doc.dump(indent);
}

} // namespace adderkit
