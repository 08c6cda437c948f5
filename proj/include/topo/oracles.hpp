#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "topo/instance.hpp"

namespace topo {

/// Smallest set of extra high nodes (on top of `base`) that makes the induced
/// digraph strongly connected.  Scans additions by ascending cardinality and
/// lexicographically within a cardinality, so the reported optimum is unique
/// and reruns are byte-identical.  Returns the full assignment base + extras.
/// budget_ms == 0 means no time limit; otherwise timeout_error.
PowerAssignment min_addition(const Instance& inst, const PowerAssignment& base,
                             std::int64_t budget_ms = 0);

/// Minimum number of high nodes for the instance from scratch.
PowerAssignment dpa_opt(const Instance& inst, std::int64_t budget_ms = 0);

/// Minimum-cardinality arc subset of g that is still strongly connected on all
/// of g's nodes.  Iterative deepening over the target size with include/
/// exclude branching in lexicographic arc order; the witness returned is the
/// first (hence lexicographically least) optimal arc set.
std::vector<std::pair<int, int>> scss_opt(const DiGraph& g, std::int64_t budget_ms = 0);

/// All simple cycles (length >= 3) of the given undirected graph that use
/// every required edge.  Each cycle is reported once, as its node sequence in
/// canonical form: smallest node first, then the smaller of the two
/// directions.  The list is sorted.
std::vector<std::vector<int>> enumerate_cycles(int n,
                                               const std::vector<std::pair<int, int>>& edges,
                                               const std::vector<std::pair<int, int>>& required);

/// The subset of enumerate_cycles that visits every node.
std::vector<std::vector<int>> enumerate_ham_cycles(int n,
                                                   const std::vector<std::pair<int, int>>& edges,
                                                   const std::vector<std::pair<int, int>>& required);

}  // namespace topo
