// SPDX-License-Identifier: Apache-2.0
//
// Deterministic carry-network generators. All trees are built from Black
// operators; the generate-only carry stage lives outside the network (see
// PrefixNetwork). Node levels are as-soon-as-possible: max(inputs) + 1.
#include "adderkit/prefix_network.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace adderkit {

namespace {

class Builder {
public:
  Builder(TopologyKind topology, int width) {
    net_.topology = topology;
    net_.width = width;
    net_.nodes.reserve(static_cast<size_t>(width) * 3);
    for (int i = 0; i < width; ++i) {
      net_.nodes.push_back({i, NodeKind::Leaf, 0, {i, i}, {}});
    }
  }

  /// Black operator joining node `hi` with the adjacent lower node `lo`.
  int combine(int hi, int lo) {
    const PrefixNode &h = net_.nodes[hi];
    const PrefixNode &l = net_.nodes[lo];
    const int id = static_cast<int>(net_.nodes.size());
    net_.nodes.push_back({id,
                          NodeKind::Black,
                          std::max(h.level, l.level) + 1,
                          {h.span.hi, l.span.lo},
                          {hi, lo}});
    return id;
  }

  PrefixNetwork finish(std::vector<int> outputs) {
    net_.outputs = std::move(outputs);
    return std::move(net_);
  }

private:
  PrefixNetwork net_;
};

/// Up-sweep pairs positions stride apart, down-sweep fills the remaining
/// prefixes from the up-sweep partials. Positions past width-1 are simply
/// never visited, which prunes the tree for non-power-of-two widths.
PrefixNetwork build_brent_kung(int n) {
  Builder b(TopologyKind::BrentKung, n);
  int top = 1;
  while (top < n) {
    top *= 2;
  }

  // up[i] covers (i : i-stride+1) once position i has been swept at stride.
  std::vector<int> up(n);
  std::iota(up.begin(), up.end(), 0);
  std::vector<int> prefix(n, -1);
  prefix[0] = 0;
  for (int stride = 2; stride <= top; stride *= 2) {
    for (int i = stride - 1; i < n; i += stride) {
      up[i] = b.combine(up[i], up[i - stride / 2]);
      if (i - stride + 1 == 0) {
        prefix[i] = up[i];
      }
    }
  }
  for (int stride = top; stride >= 2; stride /= 2) {
    for (int i = stride + stride / 2 - 1; i < n; i += stride) {
      prefix[i] = b.combine(up[i], prefix[i - stride / 2]);
    }
  }
  return b.finish(std::move(prefix));
}

PrefixNetwork build_kogge_stone(int n) {
  Builder b(TopologyKind::KoggeStone, n);
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  for (int offset = 1; offset < n; offset *= 2) {
    const std::vector<int> prev = cur;
    for (int i = offset; i < n; ++i) {
      cur[i] = b.combine(prev[i], prev[i - offset]);
    }
  }
  return b.finish(std::move(cur));
}

PrefixNetwork build_sklansky(int n) {
  Builder b(TopologyKind::Sklansky, n);
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  for (int half = 1; half < n; half *= 2) {
    for (int i = 0; i < n; ++i) {
      if (i & half) {
        // Top of the lower half of this 2*half block; never updated at
        // this level, so no snapshot is needed.
        const int anchor = (i & ~(2 * half - 1)) + half - 1;
        cur[i] = b.combine(cur[i], cur[anchor]);
      }
    }
  }
  return b.finish(std::move(cur));
}

/// Odd bits pair up, run Kogge-Stone among themselves, then every even bit
/// taps its odd neighbour. Half the wiring of Kogge-Stone, one level more.
PrefixNetwork build_han_carlson(int n) {
  Builder b(TopologyKind::HanCarlson, n);
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  for (int i = 1; i < n; i += 2) {
    cur[i] = b.combine(cur[i], cur[i - 1]);
  }
  for (int offset = 2; offset < n; offset *= 2) {
    const std::vector<int> prev = cur;
    // Odd bits below offset+1 already reach bit 0; the start index skips
    // them, so no completeness check is needed here.
    for (int i = offset + 1; i < n; i += 2) {
      cur[i] = b.combine(prev[i], prev[i - offset]);
    }
  }
  for (int i = 2; i < n; i += 2) {
    cur[i] = b.combine(i, cur[i - 1]);
  }
  return b.finish(std::move(cur));
}

PrefixNetwork build_ripple_serial(int n) {
  Builder b(TopologyKind::RippleSerial, n);
  std::vector<int> prefix(n);
  prefix[0] = 0;
  for (int i = 1; i < n; ++i) {
    prefix[i] = b.combine(i, prefix[i - 1]);
  }
  return b.finish(std::move(prefix));
}

} // namespace

PrefixNetwork build_network(TopologyKind topology, int width) {
  if (width < 1) {
    throw std::invalid_argument("width must be at least 1");
  }
  switch (topology) {
  case TopologyKind::BrentKung:
    return build_brent_kung(width);
  case TopologyKind::KoggeStone:
    return build_kogge_stone(width);
  case TopologyKind::Sklansky:
    return build_sklansky(width);
  case TopologyKind::HanCarlson:
    return build_han_carlson(width);
  case TopologyKind::RippleSerial:
    return build_ripple_serial(width);
  }
  throw std::invalid_argument("unknown topology");
}

} // namespace adderkit
