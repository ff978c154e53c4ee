// SPDX-License-Identifier: Apache-2.0
//
// Minimal value-change-dump reader for round-trip tests. Supports exactly
// the subset write_vcd produces: scalar wires, one scope, decimal times.
#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

struct VcdChange {
  std::uint64_t time_ns = 0;
  std::string net;
  bool value = false;
};

struct VcdDocument {
  std::string timescale;
  std::string module;
  std::vector<std::string> nets; // declaration order
  std::vector<VcdChange> changes;
};

inline VcdDocument read_vcd(const std::string &text) {
  VcdDocument doc;
  std::map<std::string, std::string> net_by_code;
  std::istringstream in(text);
  std::string line;
  std::uint64_t now = 0;
  bool in_header = true;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    if (in_header) {
      if (word == "$timescale") {
        std::string unit, end;
        fields >> unit >> end;
        if (end != "$end") {
          throw std::invalid_argument("unterminated $timescale");
        }
        doc.timescale = unit;
      } else if (word == "$scope") {
        std::string kind, name, end;
        fields >> kind >> name >> end;
        if (kind != "module" || end != "$end") {
          throw std::invalid_argument("unsupported $scope");
        }
        doc.module = name;
      } else if (word == "$var") {
        std::string type, size, code, name, end;
        fields >> type >> size >> code >> name >> end;
        if (type != "wire" || size != "1" || end != "$end") {
          throw std::invalid_argument("unsupported $var: " + line);
        }
        if (!net_by_code.emplace(code, name).second) {
          throw std::invalid_argument("duplicate code " + code);
        }
        doc.nets.push_back(name);
      } else if (word == "$upscope") {
        // $end follows; nothing to record
      } else if (word == "$enddefinitions") {
        in_header = false;
      } else {
        throw std::invalid_argument("unexpected header line: " + line);
      }
      continue;
    }
    if (word[0] == '#') {
      now = std::stoull(word.substr(1));
    } else if (word == "$dumpvars" || word == "$end") {
      // initial-value block delimiters; values inside use the normal form
    } else if (word[0] == '0' || word[0] == '1') {
      const std::string code = word.substr(1);
      const auto it = net_by_code.find(code);
      if (it == net_by_code.end()) {
        throw std::invalid_argument("unknown code " + code);
      }
      doc.changes.push_back({now, it->second, word[0] == '1'});
    } else {
      throw std::invalid_argument("unexpected dump line: " + line);
    }
  }
  return doc;
}

} // namespace testsupport
