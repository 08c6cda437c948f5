#pragma once

#include <string>
#include <utility>
#include <vector>

namespace topo {

/// Simple directed graph on nodes 0..n-1.  Out-lists are kept sorted and
/// deduplicated; self-loops are rejected.
struct DiGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    DiGraph() = default;
    explicit DiGraph(int nodes) : n(nodes), adj(nodes) {}

    void add_arc(int u, int v);
    bool has_arc(int u, int v) const;
    std::vector<std::pair<int, int>> arcs() const;
    int arc_count() const;
};

DiGraph digraph_from_arcs(int n, const std::vector<std::pair<int, int>>& arcs);

/// Partition of a digraph's nodes into strongly connected components.
/// Components are numbered so that component i contains the i-th smallest
/// "minimum node id" among all components; node lists are sorted.  This makes
/// every downstream choice that iterates components reproducible.
struct SccPartition {
    std::vector<int> comp_of;               // node id -> component id
    std::vector<std::vector<int>> comps;    // component id -> sorted node ids

    int count() const { return static_cast<int>(comps.size()); }
};

SccPartition scc(const DiGraph& g);
bool is_strongly_connected(const DiGraph& g);

/// Condensation of g: one node per strongly connected component, an arc
/// between distinct components whenever some original arc crosses them.
DiGraph condensation(const DiGraph& g, const SccPartition& p);

std::string to_dot(const DiGraph& g, const std::string& name = "g");

}  // namespace topo
