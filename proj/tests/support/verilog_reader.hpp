// SPDX-License-Identifier: Apache-2.0
//
// Test-only structural Verilog reader covering exactly the emitter's
// output: gate primitives, scalar wires, vector ports, named-port module
// instances. Flattens one design back into a GateNetlist so emitted files
// can be linted and re-simulated without an external toolchain.
#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "adderkit/netlist.hpp"

namespace testsupport {

namespace verilog_detail {

struct Token {
  std::string text;
};

inline std::vector<Token> tokenize(const std::string &text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
      }
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_' || text[j] == '$')) {
        ++j;
      }
      tokens.push_back({text.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::string("()[];,.:").find(c) != std::string::npos) {
      tokens.push_back({std::string(1, c)});
      ++i;
      continue;
    }
    throw std::invalid_argument("unexpected character '" + std::string(1, c) +
                                "'");
  }
  return tokens;
}

struct Port {
  std::string direction;
  int msb = -1; // -1: scalar
  std::string name;
};

struct Primitive {
  adderkit::GateKind kind;
  std::string instance;
  std::vector<std::string> connections; // output first
};

struct Instance {
  std::string module;
  std::string name;
  std::vector<std::pair<std::string, std::string>> ports; // formal -> actual
};

struct Module {
  std::string name;
  std::vector<Port> ports;
  std::vector<std::string> wires;
  std::vector<Primitive> primitives;
  std::vector<Instance> instances;
};

class Parser {
public:
  explicit Parser(const std::string &text) : tokens_(tokenize(text)) {}

  std::map<std::string, Module> parse() {
    std::map<std::string, Module> modules;
    while (pos_ < tokens_.size()) {
      expect("module");
      Module mod = parse_module();
      if (!modules.emplace(mod.name, mod).second) {
        throw std::invalid_argument("duplicate module " + mod.name);
      }
    }
    return modules;
  }

private:
  const std::string &peek() const {
    if (pos_ >= tokens_.size()) {
      throw std::invalid_argument("unexpected end of input");
    }
    return tokens_[pos_].text;
  }

  std::string take() {
    std::string text = peek();
    ++pos_;
    return text;
  }

  void expect(const std::string &text) {
    if (take() != text) {
      throw std::invalid_argument("expected '" + text + "'");
    }
  }

  bool accept(const std::string &text) {
    if (pos_ < tokens_.size() && tokens_[pos_].text == text) {
      ++pos_;
      return true;
    }
    return false;
  }

  /// IDENT or IDENT[NUM], returned as one net reference.
  std::string parse_net_ref() {
    std::string name = take();
    if (accept("[")) {
      name += "[" + take() + "]";
      expect("]");
    }
    return name;
  }

  Port parse_port() {
    Port port;
    port.direction = take();
    if (port.direction != "input" && port.direction != "output") {
      throw std::invalid_argument("expected port direction, got " +
                                  port.direction);
    }
    if (accept("[")) {
      port.msb = std::stoi(take());
      expect(":");
      expect("0");
      expect("]");
    }
    port.name = take();
    return port;
  }

  Module parse_module() {
    Module mod;
    mod.name = take();
    expect("(");
    while (true) {
      mod.ports.push_back(parse_port());
      if (!accept(",")) {
        break;
      }
    }
    expect(")");
    expect(";");

    while (!accept("endmodule")) {
      const std::string head = take();
      if (head == "wire") {
        mod.wires.push_back(take());
        expect(";");
      } else if (head == "and" || head == "or" || head == "xor" ||
                 head == "buf") {
        Primitive prim;
        prim.kind = head == "and"  ? adderkit::GateKind::And
                    : head == "or" ? adderkit::GateKind::Or
                    : head == "xor" ? adderkit::GateKind::Xor
                                    : adderkit::GateKind::Buf;
        prim.instance = take();
        expect("(");
        while (true) {
          prim.connections.push_back(parse_net_ref());
          if (!accept(",")) {
            break;
          }
        }
        expect(")");
        expect(";");
        mod.primitives.push_back(std::move(prim));
      } else {
        Instance inst;
        inst.module = head;
        inst.name = take();
        expect("(");
        while (true) {
          expect(".");
          std::string formal = take();
          expect("(");
          std::string actual = parse_net_ref();
          expect(")");
          inst.ports.emplace_back(std::move(formal), std::move(actual));
          if (!accept(",")) {
            break;
          }
        }
        expect(")");
        expect(";");
        mod.instances.push_back(std::move(inst));
      }
    }
    return mod;
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

class Flattener {
public:
  explicit Flattener(std::map<std::string, Module> modules)
      : modules_(std::move(modules)) {}

  adderkit::GateNetlist flatten(const std::string &top_name) {
    const auto it = modules_.find(top_name);
    if (it == modules_.end()) {
      throw std::invalid_argument("no module named " + top_name);
    }
    const Module &top = it->second;
    out_.name = top.name;
    for (const Port &port : top.ports) {
      if (port.name == "a") {
        if (port.msb < 0) {
          throw std::invalid_argument("port a must be a vector");
        }
        out_.width = port.msb + 1;
      }
      top_ports_.emplace(port.name, port.msb);
    }
    if (out_.width == 0) {
      throw std::invalid_argument("module " + top_name + " has no port a");
    }
    elaborate(top, "", {});
    return std::move(out_);
  }

private:
  void elaborate(const Module &mod, const std::string &prefix,
                 const std::map<std::string, std::string> &portmap) {
    std::map<std::string, std::string> names = portmap;
    for (const std::string &wire : mod.wires) {
      names[wire] = prefix + wire;
    }
    auto resolve = [&](const std::string &ref) -> std::string {
      const auto hit = names.find(ref);
      if (hit != names.end()) {
        return hit->second;
      }
      if (prefix.empty() && is_top_port_ref(ref)) {
        return ref;
      }
      throw std::invalid_argument("unresolved net " + ref + " in module " +
                                  mod.name);
    };

    for (const Primitive &prim : mod.primitives) {
      if (prim.connections.size() != (prim.kind == adderkit::GateKind::Buf
                                          ? 2u
                                          : 3u)) {
        throw std::invalid_argument("primitive " + prim.instance +
                                    " has the wrong connection count");
      }
      adderkit::Gate gate;
      gate.id = static_cast<int>(out_.gates.size());
      gate.kind = prim.kind;
      gate.output = resolve(prim.connections[0]);
      for (size_t i = 1; i < prim.connections.size(); ++i) {
        gate.inputs.push_back(resolve(prim.connections[i]));
      }
      out_.gates.push_back(std::move(gate));
    }

    for (const Instance &inst : mod.instances) {
      const auto it = modules_.find(inst.module);
      if (it == modules_.end()) {
        throw std::invalid_argument("instance of unknown module " +
                                    inst.module);
      }
      std::map<std::string, std::string> child_map;
      for (const auto &conn : inst.ports) {
        child_map[conn.first] = resolve(conn.second);
      }
      elaborate(it->second, prefix + inst.name + ".", child_map);
    }
  }

  bool is_top_port_ref(const std::string &ref) const {
    const size_t bracket = ref.find('[');
    const std::string base = ref.substr(0, bracket);
    const auto it = top_ports_.find(base);
    if (it == top_ports_.end()) {
      return false;
    }
    if (bracket == std::string::npos) {
      return it->second < 0; // scalar port referenced bare
    }
    const int index = std::stoi(ref.substr(bracket + 1));
    return index >= 0 && index <= it->second;
  }

  std::map<std::string, Module> modules_;
  std::map<std::string, int> top_ports_; // name -> msb (-1 scalar)
  adderkit::GateNetlist out_;
};

} // namespace verilog_detail

/// Parses structural Verilog text and flattens `top` into primitive gates.
/// Throws std::invalid_argument on anything outside the emitted subset.
inline adderkit::GateNetlist read_verilog(const std::string &text,
                                          const std::string &top) {
  verilog_detail::Parser parser(text);
  verilog_detail::Flattener flattener(parser.parse());
  return flattener.flatten(top);
}

} // namespace testsupport
