// SPDX-License-Identifier: Apache-2.0
#include "adderkit/vcd.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace adderkit {

namespace {

/// Short identifier codes over the printable range '!'..'~'.
std::string code_for(size_t index) {
  std::string code;
  do {
    code += static_cast<char>('!' + index % 94);
    index /= 94;
  } while (index > 0);
  return code;
}

} // namespace

std::string write_vcd(const SimTrace &trace, const std::string &module_name) {
  if (module_name.empty()) {
    throw std::invalid_argument("module name must not be empty");
  }

  // Codes follow sorted net names, so the mapping does not depend on how
  // the trace was assembled; declarations keep the trace's net order.
  std::vector<std::string> sorted = trace.nets;
  std::sort(sorted.begin(), sorted.end());
  std::map<std::string, std::string> codes;
  for (size_t i = 0; i < sorted.size(); ++i) {
    codes[sorted[i]] = code_for(i);
  }

  std::string out;
  out += "$timescale 1ns $end\n";
  out += "$scope module " + module_name + " $end\n";
  for (const std::string &net : trace.nets) {
    out += "$var wire 1 " + codes.at(net) + " " + net + " $end\n";
  }
  out += "$upscope $end\n";
  out += "$enddefinitions $end\n";

  size_t i = 0;
  bool first_block = true;
  while (i < trace.changes.size()) {
    const std::uint64_t t = trace.changes[i].time_ns;
    size_t j = i;
    while (j < trace.changes.size() && trace.changes[j].time_ns == t) {
      ++j;
    }
    if (first_block) {
      // Initial values sit inside the dumpvars block.
      if (t > 0) {
        out += "#" + std::to_string(t) + "\n";
      }
      out += "$dumpvars\n";
      for (size_t k = i; k < j; ++k) {
        out += (trace.changes[k].value ? "1" : "0") +
               codes.at(trace.changes[k].net) + "\n";
      }
      out += "$end\n";
      first_block = false;
    } else {
      out += "#" + std::to_string(t) + "\n";
      for (size_t k = i; k < j; ++k) {
        out += (trace.changes[k].value ? "1" : "0") +
               codes.at(trace.changes[k].net) + "\n";
      }
    }
    i = j;
  }
  return out;
}

} // namespace adderkit
