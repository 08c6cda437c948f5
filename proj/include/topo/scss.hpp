#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "topo/digraph.hpp"
#include "topo/rational.hpp"

namespace topo {

/// Arc-count guarantee of the cycle-contraction solver when every contracted
/// cycle has at least k arcs: (3k-2)/(2k).  Below 3/2 for every k.
Rational scss_bounded_ratio(int k);

/// Validated view of a digraph whose arcs come in opposite pairs and which is
/// strongly connected.
struct SymDigraph {
    DiGraph g;
};

SymDigraph make_sym(const DiGraph& g);
SymDigraph sym_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

/// Longest simple directed cycle as a node sequence starting from its
/// smallest node; among equals the first in anchor-ascending,
/// neighbour-ascending order.  Empty when the graph is acyclic.  cap > 0
/// stops as soon as a cycle that long is found.
std::vector<int> longest_cycle(const DiGraph& g, int cap = 0);

/// Exact smallest arc subset strongly connecting nodes 0..n-1, valid only
/// when no simple cycle has more than three arcs (checked; the error names a
/// longer cycle).  Plain combination scan, kept separate from the
/// iterative-deepening reference solver on purpose.
std::vector<std::pair<int, int>> base_case_solve(int n,
                                                 const std::vector<std::pair<int, int>>& arcs);

struct ScssStep {
    std::vector<int> cycle_nodes;            // groups named by smallest member
    std::vector<std::pair<int, int>> arcs;   // input arcs kept for this cycle
};

struct ScssResult {
    std::vector<std::pair<int, int>> kept;       // all input arcs kept, sorted
    std::vector<ScssStep> steps;                 // contractions in order
    std::vector<std::pair<int, int>> base_arcs;  // arcs chosen on the residue
};

/// Cycle contraction: repeatedly contracts a longest cycle while one with at
/// least four arcs exists, then finishes the residue exactly.  The kept arc
/// set is validated to strongly connect the input.  k >= 4 names the cycle
/// length the ratio guarantee is quoted for.
ScssResult scss_approx(const SymDigraph& sg, int k = 8);

std::string scss_result_to_json(const ScssResult& r);

}  // namespace topo
