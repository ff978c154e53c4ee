// SPDX-License-Identifier: Apache-2.0
#include "adderkit/functional.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace adderkit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

void require_fits(std::uint64_t value, int width, const char *what) {
  if ((value & ~width_mask(width)) != 0) {
    throw std::invalid_argument(std::string(what) + " does not fit in " +
                                std::to_string(width) + " bits");
  }
}

} // namespace

Operand::Operand(int width, std::uint64_t value)
    : width_(width), value_(value) {
  if (width < 1 || width > 64) {
    throw std::invalid_argument("operand width must be 1..64");
  }
  require_fits(value, width, "operand value");
}

NetworkEvaluator::NetworkEvaluator(const PrefixNetwork &net) : net_(&net) {
  if (net.width < 1 || net.width > 64) {
    throw std::invalid_argument("network width must be 1..64");
  }
  width_ = net.width;

  const int n = static_cast<int>(net.nodes.size());
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> consumers(n);
  leaf_of_bit_.assign(width_, -1);
  for (int i = 0; i < n; ++i) {
    const PrefixNode &node = net.nodes[i];
    if (node.id != i) {
      throw std::invalid_argument("node ids must match their positions");
    }
    const size_t arity = node.kind == NodeKind::Leaf     ? 0
                         : node.kind == NodeKind::Buffer ? 1
                                                         : 2;
    if (node.inputs.size() != arity) {
      throw std::invalid_argument("node " + std::to_string(i) +
                                  " has the wrong input count");
    }
    for (int in : node.inputs) {
      if (in < 0 || in >= n) {
        throw std::invalid_argument("node " + std::to_string(i) +
                                    " reads a missing node");
      }
      consumers[in].push_back(i);
      ++indegree[i];
    }
    if (node.kind == NodeKind::Leaf) {
      if (node.span.hi != node.span.lo || node.span.lo < 0 ||
          node.span.lo >= width_) {
        throw std::invalid_argument("leaf " + std::to_string(i) +
                                    " does not sit on a single bit");
      }
      if (leaf_of_bit_[node.span.lo] < 0) {
        leaf_of_bit_[node.span.lo] = i;
      }
    }
  }
  for (int bit = 0; bit < width_; ++bit) {
    if (leaf_of_bit_[bit] < 0) {
      throw std::invalid_argument("bit " + std::to_string(bit) +
                                  " has no leaf");
    }
  }

  if (static_cast<int>(net.outputs.size()) != width_) {
    throw std::invalid_argument("network must name one output per bit");
  }
  for (int id : net.outputs) {
    if (id < 0 || id >= n) {
      throw std::invalid_argument("output names a missing node");
    }
  }
  outputs_ = net.outputs;

  order_.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) {
      order_.push_back(i);
    }
  }
  for (size_t head = 0; head < order_.size(); ++head) {
    for (int next : consumers[order_[head]]) {
      if (--indegree[next] == 0) {
        order_.push_back(next);
      }
    }
  }
  if (static_cast<int>(order_.size()) != n) {
    throw std::invalid_argument("network contains a cycle");
  }
  g_.assign(n, 0);
  p_.assign(n, 0);
}

AdditionResult NetworkEvaluator::add(std::uint64_t a, std::uint64_t b,
                                     bool cin) {
  require_fits(a, width_, "operand a");
  require_fits(b, width_, "operand b");
  for (int id : order_) {
    const PrefixNode &node = net_->nodes[id];
    switch (node.kind) {
    case NodeKind::Leaf: {
      const GroupGP gp =
          preprocess((a >> node.span.lo) & 1, (b >> node.span.lo) & 1);
      g_[id] = gp.g;
      p_[id] = gp.p;
      break;
    }
    case NodeKind::Black: {
      const int hi = node.inputs[0];
      const int lo = node.inputs[1];
      const GroupGP gp = combine_gp({g_[hi] != 0, p_[hi] != 0},
                                    {g_[lo] != 0, p_[lo] != 0});
      g_[id] = gp.g;
      p_[id] = gp.p;
      break;
    }
    case NodeKind::Gray: {
      const int hi = node.inputs[0];
      const int lo = node.inputs[1];
      g_[id] = gray_combine({g_[hi] != 0, p_[hi] != 0}, g_[lo] != 0);
      p_[id] = 0; // generate-only rail
      break;
    }
    case NodeKind::Buffer:
      g_[id] = g_[node.inputs[0]];
      p_[id] = p_[node.inputs[0]];
      break;
    }
  }

  std::uint64_t sum = 0;
  bool carry = cin; // c_0
  for (int bit = 0; bit < width_; ++bit) {
    if (postprocess(carry, p_[leaf_of_bit_[bit]] != 0)) {
      sum |= std::uint64_t{1} << bit;
    }
    const int out = outputs_[bit];
    carry = gray_combine({g_[out] != 0, p_[out] != 0}, cin); // c_{bit+1}
  }
  return {Operand(width_, sum), carry};
}

AdditionResult evaluate(const PrefixNetwork &net, const Operand &a,
                        const Operand &b, bool cin) {
  if (a.width() != net.width || b.width() != net.width) {
    throw std::invalid_argument("operand widths must match the network");
  }
  NetworkEvaluator eval(net);
  return eval.add(a.value(), b.value(), cin);
}

AdditionResult oracle_add(std::uint64_t a, std::uint64_t b, bool cin,
                          int width) {
  if (width < 1 || width > 64) {
    throw std::invalid_argument("width must be 1..64");
  }
  require_fits(a, width, "operand a");
  require_fits(b, width, "operand b");
  const unsigned __int128 total = static_cast<unsigned __int128>(a) +
                                  static_cast<unsigned __int128>(b) +
                                  (cin ? 1 : 0);
  const std::uint64_t sum = static_cast<std::uint64_t>(total) & width_mask(width);
  const bool cout = ((total >> width) & 1) != 0;
  return {Operand(width, sum), cout};
}

namespace {

void record_mismatch(VerificationReport &report, std::uint64_t a,
                     std::uint64_t b, bool cin, const AdditionResult &got,
                     const AdditionResult &want) {
  ++report.mismatch_count;
  if (report.mismatches.size() < kMaxRecordedMismatches) {
    report.mismatches.push_back({a, b, cin, got.sum.value(), got.carry_out,
                                 want.sum.value(), want.carry_out});
  }
}

void check_one(VerificationReport &report, NetworkEvaluator &eval,
               std::uint64_t a, std::uint64_t b, bool cin) {
  const AdditionResult got = eval.add(a, b, cin);
  const AdditionResult want = oracle_add(a, b, cin, eval.width());
  ++report.vectors_run;
  if (!(got == want)) {
    record_mismatch(report, a, b, cin, got, want);
  }
}

} // namespace

VerificationReport verify_exhaustive(const PrefixNetwork &net) {
  if (net.width > kExhaustiveWidthLimit) {
    throw std::invalid_argument(
        "exhaustive verification is limited to width " +
        std::to_string(kExhaustiveWidthLimit) + "; use verify_random");
  }
  NetworkEvaluator eval(net);
  VerificationReport report;
  report.topology = to_string(net.topology);
  report.width = net.width;
  const std::uint64_t limit = std::uint64_t{1} << net.width;
  for (std::uint64_t a = 0; a < limit; ++a) {
    for (std::uint64_t b = 0; b < limit; ++b) {
      check_one(report, eval, a, b, false);
      check_one(report, eval, a, b, true);
    }
  }
  return report;
}

VerificationReport verify_random(const PrefixNetwork &net, std::uint64_t count,
                                 std::uint64_t seed) {
  NetworkEvaluator eval(net);
  VerificationReport report;
  report.topology = to_string(net.topology);
  report.width = net.width;
  report.seed = seed;

  // Corner operands first: all-zeros, one, all-ones, top bit.
  const std::uint64_t mask = width_mask(net.width);
  std::vector<std::uint64_t> corners = {0, 1, mask,
                                        std::uint64_t{1} << (net.width - 1)};
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  for (std::uint64_t a : corners) {
    for (std::uint64_t b : corners) {
      check_one(report, eval, a, b, false);
      check_one(report, eval, a, b, true);
    }
  }

  // Raw draws masked to width; no distribution adapter, so the stream is
  // identical across standard library implementations.
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t a = rng() & mask;
    const std::uint64_t b = rng() & mask;
    const bool cin = (rng() & 1) != 0;
    check_one(report, eval, a, b, cin);
  }
  return report;
}

const std::vector<TestVector> &paper_testbench_vectors() {
  static const std::vector<TestVector> kVectors = {
      {0, 0, false, 0, false, 0},
      {1, 1, false, 2, false, 10},
      {4294967295u, 1, false, 0, true, 30},
      {2147483648u, 2147483648u, false, 0, true, 50},
      {0, 0, false, 0, false, 70},
      {10, 20, false, 30, false, 90},
      {15, 1, true, 17, false, 110},
  };
  return kVectors;
}

std::vector<TestbenchRow> run_paper_testbench(const PrefixNetwork &net) {
  if (net.width != 32) {
    throw std::invalid_argument("the published vectors are 32-bit");
  }
  NetworkEvaluator eval(net);
  std::vector<TestbenchRow> rows;
  for (const TestVector &v : paper_testbench_vectors()) {
    TestbenchRow row;
    row.vector = v;
    row.got = eval.add(v.a, v.b, v.cin);
    row.pass = row.got.sum.value() == v.expected_sum &&
               row.got.carry_out == v.expected_cout;
    rows.push_back(row);
  }
  return rows;
}

std::string report_to_json(const VerificationReport &report, int indent) {
  ordered_json doc;
  doc["topology"] = report.topology;
  doc["width"] = report.width;
  doc["vectors_run"] = report.vectors_run;
  if (report.seed) {
    doc["seed"] = *report.seed;
  } else {
    doc["seed"] = nullptr;
  }
  doc["mismatch_count"] = report.mismatch_count;
  doc["passed"] = report.passed();
  doc["mismatches"] = ordered_json::array();
  for (const Mismatch &m : report.mismatches) {
    ordered_json item;
    item["a"] = m.a;
    item["b"] = m.b;
    item["cin"] = m.cin;
    item["got_sum"] = m.got_sum;
    item["got_cout"] = m.got_cout;
    item["expected_sum"] = m.expected_sum;
    item["expected_cout"] = m.expected_cout;
    doc["mismatches"].push_back(std::move(item));
  }
  return doc.dump(indent);
}

std::string testbench_to_json(const std::vector<TestbenchRow> &rows,
                              int indent) {
  ordered_json doc = ordered_json::array();
  for (const TestbenchRow &row : rows) {
    ordered_json item;
    item["time_ns"] = row.vector.time_label_ns;
    item["a"] = row.vector.a;
    item["b"] = row.vector.b;
    item["cin"] = row.vector.cin;
    item["expected_sum"] = row.vector.expected_sum;
    item["expected_cout"] = row.vector.expected_cout;
    item["got_sum"] = row.got.sum.value();
    item["got_cout"] = row.got.carry_out;
    item["pass"] = row.pass;
    doc.push_back(std::move(item));
  }
  return doc.dump(indent);
}

} // namespace adderkit
