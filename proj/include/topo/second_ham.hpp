#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace topo {

/// Undirected graph split into a cycle side and an attachment side.  Nodes
/// 0..n_v-1 carry a fixed Hamiltonian cycle (h_edges); nodes n_v..n_v+n_u-1
/// are attachments, wired up by e_edges.  e_edges may touch any nodes; the
/// conjecture inputs keep them strictly between the two sides.
struct StructureGraph {
    int n_v = 0;
    int n_u = 0;
    std::vector<std::pair<int, int>> h_edges;
    std::vector<std::pair<int, int>> e_edges;

    int total() const { return n_v + n_u; }
};

/// Checks the shape: h_edges is a single simple cycle through every
/// cycle-side node, all edges are in range, no loops or duplicates, and
/// e_edges never repeats a cycle edge.  Throws input_error.
void validate_structure(const StructureGraph& g);

StructureGraph structure_from_json(const std::string& text);
std::string structure_to_json(const StructureGraph& g);

/// A simple cycle through every cycle-side node (attachments optional),
/// stored canonically: smallest node first, smaller direction second.
struct CycleWitness {
    std::vector<int> nodes;
};

/// Throws input_error unless w is a genuine covering cycle of g that differs
/// from the fixed cycle in at least one edge.
void validate_witness(const StructureGraph& g, const CycleWitness& w);

/// Exhaustive search for a covering cycle other than the fixed one,
/// optionally forced through the given edges.  Deterministic: the
/// canonically smallest witness is found first.  budget_ms == 0 means no
/// limit; otherwise timeout_error.
std::optional<CycleWitness> find_sec_ham(const StructureGraph& g,
                                         const std::vector<std::pair<int, int>>& require_edges = {},
                                         std::int64_t budget_ms = 0);

/// Edge subset of a forest giving every node odd degree; exists exactly when
/// every component has an even number of nodes.  Throws input_error on a
/// non-forest or an odd component.
std::vector<std::pair<int, int>> odd_forest_decompose(int n,
                                                      const std::vector<std::pair<int, int>>& edges);

/// For a bipartite forest (cycle side 0..n_v-1, attachments after) whose
/// attachment nodes have degree two or three and whose components each hold
/// an even number of cycle-side nodes: an edge subset giving every
/// cycle-side node odd degree and every attachment degree two or zero.
std::vector<std::pair<int, int>> forest_decompose_deg23(
    int n_v, int n_u, const std::vector<std::pair<int, int>>& edges);

/// Two mirrored copies tied together across the cycle edge {vi, vj}: the
/// bridges {vi, vi'} and {vj, vj'} join the halves into one long cycle, and
/// one extra crossing edge {vj, vi'} is added.  Any covering cycle of the
/// doubled graph must use both bridges, so it folds back onto one half.
/// Only odd cycle lengths are accepted.
struct DuplicateTransform {
    StructureGraph doubled;
    int vi = -1, vj = -1;
};

DuplicateTransform duplicate_transform(const StructureGraph& g, int vi, int vj);
CycleWitness duplicate_backmap(const StructureGraph& g, const DuplicateTransform& t,
                               const CycleWitness& w);

/// Replaces every attachment next to vi (and to vj) by degree-two relays, one
/// per far endpoint.  Requires the cycle edge {vi, vj}, disjoint attachment
/// neighbourhoods, and that every attachment of degree four or more sits at
/// the pinned edge, so the result has attachment degrees of three at most.
/// A witness through {vi, vj} uses at most one relay on each side and maps
/// straight back.
struct SplitTransform {
    StructureGraph reduced;
    int vi = -1, vj = -1;
    struct UOrigin {
        int orig_u = -1;     // surviving attachment, original id
        int relay_from = -1; // or: relay made from this deleted attachment...
        int relay_to = -1;   // ...towards this far endpoint
    };
    std::vector<UOrigin> u_origin;  // indexed by reduced attachment offset
};

SplitTransform split_high_degree(const StructureGraph& g, int vi, int vj);
CycleWitness split_backmap(const StructureGraph& g, const SplitTransform& t, const CycleWitness& w);

/// For a cycle node vi with exactly one attachment neighbour u: widens the
/// cycle with vl, vr around vi, hangs a fresh attachment u' below them,
/// relays u's other endpoints through degree-two attachments at vi, and
/// deletes u.  A witness of the widened graph maps back by one of three
/// local rewrites.
struct LeafTransform {
    StructureGraph widened;
    int vi = -1, u = -1;          // original ids
    int vl = -1, vr = -1, uprime = -1;  // widened ids
    std::vector<std::pair<int, int>> relays;  // (widened relay id, far endpoint)
    std::vector<int> u_origin;    // widened attachment offset -> original id, -1 for new
};

LeafTransform leaf_transform(const StructureGraph& g, int vi);
CycleWitness leaf_backmap(const StructureGraph& g, const LeafTransform& t, const CycleWitness& w);

/// Folds attachment-attachment edges away by merging one endpoint into the
/// other until the attachment side is independent.  The cycle side must be
/// independent already.  Witnesses lift back fold by fold.
struct BipartizeResult {
    StructureGraph folded;
    struct Fold {
        int ui = -1, uj = -1;                      // original-scheme ids; ui merged into uj
        std::vector<std::pair<int, int>> added;    // edges uj gained by the fold
    };
    std::vector<Fold> steps;
    std::vector<int> folded_of;    // original id -> folded id, -1 when merged away
    std::vector<int> original_of;  // folded id -> original id
};

BipartizeResult bipartize(const StructureGraph& g);
CycleWitness bipartize_lift(const StructureGraph& g, const BipartizeResult& t,
                            const CycleWitness& w);

/// Second Hamiltonian cycle sharing the edge between node 0 and the smaller
/// of its two cycle neighbours, for graphs where every node has odd degree.
/// Deterministic pivot walk; never enumerates.  Returns the cycle
/// canonically.
std::vector<int> lollipop_second_cycle(int n, const std::vector<std::pair<int, int>>& edges,
                                       const std::vector<int>& ham_cycle);

/// Every attachment family on the n_v-cycle the covering-cycle question is
/// about, up to rotation, reflection, and attachment renaming: groups of two
/// or more nodes, pairwise sharing at most one, connected and cycle-free as
/// a family, spanning all nodes, never holding two cycle neighbours, at most
/// max_u groups.
std::vector<StructureGraph> conjecture_instances(int n_v, int max_u);

struct SweepOutcome {
    int instances = 0;
    int counterexamples = 0;
    std::vector<std::string> report_lines;  // one JSON object per instance
};

/// Runs find_sec_ham over every instance with 3..max_v cycle nodes and up to
/// max_u attachments.  budget_ms limits each single search.
SweepOutcome verify_conjecture_sweep(int max_v, int max_u, std::int64_t budget_ms = 0);

/// Connected 3-regular graphs containing the cycle 0..n-1, one edge list per
/// isomorphism class: the cycle plus every perfect chord matching, deduped by
/// exact canonical relabeling.
std::vector<std::vector<std::pair<int, int>>> cubic_ham_graphs(int n);

}  // namespace topo
