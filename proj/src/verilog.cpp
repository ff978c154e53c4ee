// SPDX-License-Identifier: Apache-2.0
#include "adderkit/verilog.hpp"

#include <set>
#include <stdexcept>

namespace adderkit {

namespace {

bool is_identifier(const std::string &name) {
  if (name.empty()) {
    return false;
  }
  auto head = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!head(name[0])) {
    return false;
  }
  for (char c : name.substr(1)) {
    if (!head(c) && !(c >= '0' && c <= '9') && c != '$') {
      return false;
    }
  }
  return true;
}

std::string require_identifier(const std::string &name) {
  if (!is_identifier(name)) {
    throw std::invalid_argument("not a Verilog identifier: " + name);
  }
  return name;
}

class Writer {
public:
  explicit Writer(int indent) : pad_(static_cast<size_t>(indent), ' ') {}

  void line(const std::string &text = "") {
    if (!text.empty()) {
      out_ += pad_;
      out_ += text;
    }
    out_ += '\n';
  }

  void raw(const std::string &text) {
    out_ += text;
    out_ += '\n';
  }

  std::string take() { return std::move(out_); }

private:
  std::string pad_;
  std::string out_;
};

std::string dec_literal(int width, std::uint64_t value) {
  return std::to_string(width) + "'d" + std::to_string(value);
}

std::string bit_literal(bool value) { return value ? "1'b1" : "1'b0"; }

void open_module(Writer &w, const std::string &name,
                 const std::vector<std::string> &ports) {
  w.raw("module " + name + " (");
  for (size_t i = 0; i < ports.size(); ++i) {
    w.line(ports[i] + (i + 1 < ports.size() ? "," : ""));
  }
  w.raw(");");
  w.line();
}

std::vector<std::string> adder_ports(int width) {
  const std::string range = "[" + std::to_string(width - 1) + ":0] ";
  return {"input " + range + "a", "input " + range + "b", "input cin",
          "output " + range + "sum", "output cout"};
}

void emit_gate_line(Writer &w, const Gate &gate) {
  std::string text(to_string(gate.kind));
  text += " u" + std::to_string(gate.id) + " (" + gate.output;
  for (const std::string &in : gate.inputs) {
    text += ", " + in;
  }
  text += ");";
  w.line(text);
}

void emit_flat(Writer &w, const GateNetlist &netlist,
               const std::string &name) {
  open_module(w, name, adder_ports(netlist.width));
  for (const std::string &net : netlist.internal_nets()) {
    w.line("wire " + net + ";");
  }
  w.line();
  for (const Gate &gate : netlist.gates) {
    emit_gate_line(w, gate);
  }
  w.line();
  w.raw("endmodule");
}

const char *cell_module_name(CellKind kind) {
  switch (kind) {
  case CellKind::Preprocess:
    return "preprocessing";
  case CellKind::Black:
    return "black_cell";
  case CellKind::Gray:
    return "gray_cell";
  case CellKind::White:
    return "white_cell";
  case CellKind::Postprocess:
    return "postprocessing";
  }
  return "unknown_cell";
}

/// Fixed cell bodies matching the recipe in expand_to_gates, so flat and
/// hierarchical emissions describe gate-for-gate identical logic.
void emit_cell_module(Writer &w, CellKind kind) {
  switch (kind) {
  case CellKind::Preprocess:
    open_module(w, "preprocessing",
                {"input a", "input b", "output g", "output p"});
    w.line("and u0 (g, a, b);");
    w.line("xor u1 (p, a, b);");
    break;
  case CellKind::Black:
    open_module(w, "black_cell",
                {"input gh", "input ph", "input gl", "input pl", "output g",
                 "output p"});
    w.line("wire t;");
    w.line();
    w.line("and u0 (t, ph, gl);");
    w.line("or u1 (g, gh, t);");
    w.line("and u2 (p, ph, pl);");
    break;
  case CellKind::Gray:
    open_module(w, "gray_cell",
                {"input gh", "input ph", "input gl", "output g"});
    w.line("wire t;");
    w.line();
    w.line("and u0 (t, ph, gl);");
    w.line("or u1 (g, gh, t);");
    break;
  case CellKind::White:
    open_module(w, "white_cell", {"input a", "output y"});
    w.line("buf u0 (y, a);");
    break;
  case CellKind::Postprocess:
    open_module(w, "postprocessing", {"input p", "input c", "output s"});
    w.line("xor u0 (s, p, c);");
    break;
  }
  w.line();
  w.raw("endmodule");
}

void emit_hierarchical(Writer &w, const GateNetlist &netlist,
                       const std::string &name) {
  std::set<CellKind> used;
  for (const CellInstance &cell : netlist.cells) {
    used.insert(cell.kind);
  }
  for (CellKind kind : {CellKind::Preprocess, CellKind::Black, CellKind::Gray,
                        CellKind::White, CellKind::Postprocess}) {
    if (!used.count(kind)) {
      continue;
    }
    if (name == cell_module_name(kind)) {
      throw std::invalid_argument("module name collides with cell module " +
                                  name);
    }
    emit_cell_module(w, kind);
    w.raw("");
  }

  open_module(w, name, adder_ports(netlist.width));

  std::set<std::string> ports;
  for (const std::string &net : netlist.input_port_nets()) {
    ports.insert(net);
  }
  for (const std::string &net : netlist.output_port_nets()) {
    ports.insert(net);
  }
  std::set<std::string> declared;
  for (const CellInstance &cell : netlist.cells) {
    for (const auto &port_net : cell.ports) {
      const std::string &net = port_net.second;
      if (!ports.count(net) && declared.insert(net).second) {
        w.line("wire " + net + ";");
      }
    }
  }
  w.line();
  for (const CellInstance &cell : netlist.cells) {
    std::string text(cell_module_name(cell.kind));
    text += " " + cell.name + " (";
    for (size_t i = 0; i < cell.ports.size(); ++i) {
      if (i > 0) {
        text += ", ";
      }
      text += "." + cell.ports[i].first + "(" + cell.ports[i].second + ")";
    }
    text += ");";
    w.line(text);
  }
  w.line();
  w.raw("endmodule");
}

} // namespace

std::string emit_verilog(const GateNetlist &netlist,
                         const EmitOptions &options) {
  const std::string name = require_identifier(
      options.module_name.empty() ? netlist.name : options.module_name);
  Writer w(options.indent);
  w.raw("// " + std::to_string(netlist.width) +
        "-bit adder, structural gate primitives only.");
  if (options.style == EmitStyle::Flat) {
    emit_flat(w, netlist, name);
  } else {
    emit_hierarchical(w, netlist, name);
  }
  return w.take();
}

std::string emit_testbench(int width, const std::vector<TestVector> &vectors,
                           const std::string &dut_module_name, int indent) {
  if (width < 1 || width > 64) {
    throw std::invalid_argument("width must be 1..64");
  }
  if (vectors.empty()) {
    throw std::invalid_argument("testbench needs at least one vector");
  }
  for (size_t i = 1; i < vectors.size(); ++i) {
    if (vectors[i].time_label_ns < vectors[i - 1].time_label_ns + 5) {
      throw std::invalid_argument("vector times must be at least 5ns apart");
    }
  }
  require_identifier(dut_module_name);

  const std::string range = "[" + std::to_string(width - 1) + ":0] ";
  Writer w(indent);
  w.raw("`timescale 1ns / 1ps");
  w.raw("");
  w.raw("module " + dut_module_name + "_tb;");
  w.line();
  w.line("reg " + range + "a;");
  w.line("reg " + range + "b;");
  w.line("reg cin;");
  w.line("wire " + range + "sum;");
  w.line("wire cout;");
  w.line("integer errors;");
  w.line();
  w.line(dut_module_name +
         " dut (.a(a), .b(b), .cin(cin), .sum(sum), .cout(cout));");
  w.line();
  w.line("task check (input " + range + "expect_sum, input expect_cout);");
  w.line("  begin");
  w.line("    if (sum !== expect_sum || cout !== expect_cout) begin");
  w.line("      errors = errors + 1;");
  w.line("      $display(\"FAIL at %0t: sum=%0d cout=%b, expected sum=%0d "
         "cout=%b\",");
  w.line("               $time, sum, cout, expect_sum, expect_cout);");
  w.line("    end");
  w.line("  end");
  w.line("endtask");
  w.line();
  w.line("initial begin");
  w.line("  errors = 0;");
  w.line("  $monitor(\"%0t ns: a=%0d b=%0d cin=%b sum=%0d cout=%b\",");
  w.line("           $time, a, b, cin, sum, cout);");

  // Each vector is applied at its own time label and checked 5ns later.
  std::uint64_t now = 0;
  for (const TestVector &v : vectors) {
    std::string apply;
    if (v.time_label_ns > now) {
      apply = "#" + std::to_string(v.time_label_ns - now) + " ";
    }
    apply += "a = " + dec_literal(width, v.a) +
             "; b = " + dec_literal(width, v.b) +
             "; cin = " + bit_literal(v.cin) + ";";
    w.line("  " + apply);
    w.line("  #5 check(" + dec_literal(width, v.expected_sum) + ", " +
           bit_literal(v.expected_cout) + ");");
    now = v.time_label_ns + 5;
  }
  w.line("  #5;");
  w.line("  if (errors == 0) $display(\"PASS: %0d vectors\", " +
         std::to_string(vectors.size()) + ");");
  w.line("  else $display(\"FAIL: %0d errors\", errors);");
  w.line("  $finish;");
  w.line("end");
  w.line();
  w.raw("endmodule");
  return w.take();
}

} // namespace adderkit
