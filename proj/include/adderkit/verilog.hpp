// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "adderkit/functional.hpp"
#include "adderkit/netlist.hpp"

namespace adderkit {

enum class EmitStyle {
  Flat,         // one module, gate primitives only
  Hierarchical, // cell modules (black_cell, gray_cell, ...) + top
};

struct EmitOptions {
  EmitStyle style = EmitStyle::Flat;
  std::string module_name; // empty: use netlist.name
  int indent = 2;
};

/// Structural Verilog-2001 using gate primitives (and/or/xor/buf) only.
/// Output uses LF line endings and is byte-deterministic for a given
/// netlist and options. Throws std::invalid_argument if the module name is
/// not a plain Verilog identifier.
std::string emit_verilog(const GateNetlist &netlist,
                         const EmitOptions &options = {});

/// Self-checking testbench: applies each vector at its time label, checks
/// sum/cout with === five time units later, and $monitors the DUT ports.
std::string emit_testbench(int width, const std::vector<TestVector> &vectors,
                           const std::string &dut_module_name,
                           int indent = 2);

} // namespace adderkit
