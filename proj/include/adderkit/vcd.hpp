// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "adderkit/simulate.hpp"

namespace adderkit {

/// Value-change-dump text for a trace: 1ns timescale, one scalar $var per
/// net. Identifier codes are assigned in sorted net-name order so the
/// output is independent of trace construction order; declarations keep
/// the trace's net order. Byte-deterministic, LF line endings.
std::string write_vcd(const SimTrace &trace, const std::string &module_name);

} // namespace adderkit
