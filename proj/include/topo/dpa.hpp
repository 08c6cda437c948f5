#pragma once

#include <string>
#include <vector>

#include "topo/contraction.hpp"
#include "topo/rational.hpp"

namespace topo {

/// Worst-case size ratio of the contraction solver with threshold k, as an
/// exact fraction: (3k - 2) / (2k - 2).  k = 8 gives 11/7.
Rational ratio_bound(int k);

struct ContractionRecord {
    int stage = 0;       // k for the opening sweep, then k-1 .. 4, finally 3
    int size = 0;        // components merged by this step
    StructureClass cls = StructureClass::CombinedCycles;
    int leaf_count = 0;
    std::vector<int> comps;  // component ids at the time of the step
    std::vector<int> reps;   // raised nodes, aligned with comps
    int comps_before = 0;
    int comps_after = 0;
};

struct StageStart {
    int stage = 0;
    int comps_at_start = 0;
    std::vector<int> high_at_start;
};

/// Complete account of one solver run; enough to replay it from scratch.
struct RunTrace {
    int k = 0;
    int n_nodes = 0;
    int comps_initial = 0;
    std::vector<StageStart> stages;
    std::vector<ContractionRecord> contractions;
    std::vector<int> cover_nodes;  // endgame additions after the last merge
    std::vector<int> final_high;
};

struct DpaResult {
    PowerAssignment assignment;
    RunTrace trace;
};

/// The contraction solver: repeatedly merge large contracted sets, then ever
/// smaller ones preferring leafy shapes, and finish the remaining tree of
/// components exactly.
DpaResult dpa_approx(const Instance& inst, int k = 8);

/// The endgame on its own: triangle merges until the component graph is a
/// tree, then the exact per-component completion.  Returns every node it
/// raises, sorted.  Requires that no contracted set with four or more
/// components exists; throws contract_error otherwise.
std::vector<int> phase3_optimal(const Instance& inst, const PowerAssignment& start);

/// Minimum choice of candidates covering all elements 0 .. element_count-1,
/// where each candidate is (node id, elements it covers) and covers at most
/// two.  Solved through the pairing identity: answer = elements - max pairs
/// served together.  Returns chosen node ids, deterministic.
std::vector<int> two_set_cover_solve(int element_count,
                                     const std::vector<std::pair<int, std::vector<int>>>& candidates);

/// Replays the trace against the instance and reports every discrepancy:
/// steps that were not contracted sets, wrong component counts, stage
/// snapshots that do not match, broken stage arithmetic, or a final
/// assignment that does not strongly connect.  Empty result means clean.
///
/// stage_opts is optional and aligns with trace.stages: entry t is the fewest
/// extra high nodes that finish the job from snapshot t (an exact residual
/// optimum).  When supplied, the audit also checks the per-stage optimum
/// window i/(i-1)*(n_i-1) <= opt_i <= 2*(n_i-1) for stages below the
/// threshold, and the guaranteed savings of each middle stage: merges of the
/// stage's own size save two each up to the half threshold and one each
/// above it, smaller merges save by their own bracket, and every counted
/// leaf saves one.
std::vector<std::string> audit_trace(const Instance& inst, const RunTrace& trace,
                                     const std::vector<int>& stage_opts = {});

std::string trace_to_json(const RunTrace& trace);
RunTrace trace_from_json(const std::string& text);

}  // namespace topo
