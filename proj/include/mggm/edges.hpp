#pragma once

#include <set>
#include <utility>

namespace mggm {

/// Unordered node pair, stored with first < second, 0-based.
using Edge = std::pair<int, int>;
using EdgeSet = std::set<Edge>;

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace mggm
