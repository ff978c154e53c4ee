// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adderkit/prefix_network.hpp"

namespace adderkit {

/// Unsigned n-bit operand, LSB = bit 0. Width 1..64.
class Operand {
public:
  Operand() = default;
  /// Throws std::invalid_argument if width is out of range or value does not
  /// fit in width bits.
  Operand(int width, std::uint64_t value);

  int width() const { return width_; }
  std::uint64_t value() const { return value_; }
  bool bit(int i) const { return (value_ >> i) & 1u; }

  friend bool operator==(const Operand &, const Operand &) = default;

private:
  int width_ = 1;
  std::uint64_t value_ = 0;
};

struct AdditionResult {
  Operand sum;
  bool carry_out = false;
  friend bool operator==(const AdditionResult &, const AdditionResult &) = default;
};

/// Per-bit generate/propagate: g = a&b, p = a^b. Never returns (g=1,p=1).
constexpr GroupGP preprocess(bool a_bit, bool b_bit) {
  return {a_bit && b_bit, a_bit != b_bit};
}

/// Sum bit from the incoming carry and the bit propagate.
constexpr bool postprocess(bool carry_in_bit, bool p) {
  return carry_in_bit != p;
}

/// Reusable evaluator: checks the network is evaluable once (ids resolve,
/// per-kind arity, acyclic, one output per bit, width 1..64) and precomputes
/// a topological schedule. add() is then allocation-free.
class NetworkEvaluator {
public:
  explicit NetworkEvaluator(const PrefixNetwork &net);

  /// a and b must fit in width() bits.
  AdditionResult add(std::uint64_t a, std::uint64_t b, bool cin);

  int width() const { return width_; }

private:
  int width_ = 0;
  std::vector<int> order_;            // node ids in evaluation order
  std::vector<int> leaf_of_bit_;      // bit -> leaf node id
  std::vector<int> outputs_;          // bit -> node id with span (i:0)
  const PrefixNetwork *net_ = nullptr;
  std::vector<unsigned char> g_, p_;  // scratch, indexed by node id
};

/// One-shot evaluation per the three-stage flow: preprocess, prefix network,
/// carry derivation from cin, postprocess. Operand widths must match the
/// network width.
AdditionResult evaluate(const PrefixNetwork &net, const Operand &a,
                        const Operand &b, bool cin);

/// Independent reference adder: plain wide-integer arithmetic, no shared
/// code with evaluate(). Throws if an operand does not fit in width bits.
AdditionResult oracle_add(std::uint64_t a, std::uint64_t b, bool cin, int width);

struct TestVector {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool cin = false;
  std::uint64_t expected_sum = 0;
  bool expected_cout = false;
  std::uint64_t time_label_ns = 0;
  friend bool operator==(const TestVector &, const TestVector &) = default;
};

struct Mismatch {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool cin = false;
  std::uint64_t got_sum = 0;
  bool got_cout = false;
  std::uint64_t expected_sum = 0;
  bool expected_cout = false;
};

/// At most this many mismatches are recorded in a report; mismatch_count
/// keeps the true total.
inline constexpr std::uint64_t kMaxRecordedMismatches = 1000;

/// verify_exhaustive refuses widths above this (2^(2w+1) vectors).
inline constexpr int kExhaustiveWidthLimit = 12;

struct VerificationReport {
  std::string topology;
  int width = 0;
  std::uint64_t vectors_run = 0;
  std::uint64_t mismatch_count = 0;
  std::optional<std::uint64_t> seed; // absent for exhaustive runs
  std::vector<Mismatch> mismatches;  // first kMaxRecordedMismatches
  bool passed() const { return mismatch_count == 0; }
};

/// Runs every (a, b, cin) triple against oracle_add. Width must be at most
/// kExhaustiveWidthLimit; larger widths are refused with a pointer to
/// verify_random.
VerificationReport verify_exhaustive(const PrefixNetwork &net);

/// Seeded random verification. The four boundary values {0, 1, 2^w-1,
/// 2^(w-1)} are always exercised as operand pairs (both cin values) before
/// `count` random vectors. Deterministic for a fixed seed.
VerificationReport verify_random(const PrefixNetwork &net, std::uint64_t count,
                                 std::uint64_t seed);

/// The seven published 32-bit vectors with their ns time labels
/// (0, 10, 30, 50, 70, 90, 110).
const std::vector<TestVector> &paper_testbench_vectors();

struct TestbenchRow {
  TestVector vector;
  AdditionResult got;
  bool pass = false;
};

/// Runs the seven-vector suite in order. Width must be 32.
std::vector<TestbenchRow> run_paper_testbench(const PrefixNetwork &net);

std::string report_to_json(const VerificationReport &report, int indent = 2);
std::string testbench_to_json(const std::vector<TestbenchRow> &rows, int indent = 2);

} // namespace adderkit
