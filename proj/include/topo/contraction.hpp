#pragma once

#include <optional>
#include <vector>

#include "topo/instance.hpp"

namespace topo {

/// A family of components of the current induced digraph together with one
/// representative node per component.  Adding all representatives to the high
/// set merges every listed component into a single strongly connected
/// component; `is_contracted_set` is the authoritative check.
struct ContractedSet {
    std::vector<int> comps;  // component ids, ascending
    std::vector<int> reps;   // reps[t] belongs to comps[t]

    int size() const { return static_cast<int>(comps.size()); }
};

/// Directed graph over the components of a contracted set.  Arc (a,b) means
/// the representative chosen in component a covers some node of component b
/// at high range (direct reach, no intermediate hops).
struct ContractibleStructure {
    ContractedSet base;
    std::vector<std::pair<int, int>> arcs;  // component id pairs, sorted
};

enum class StructureClass { TwoPlusLeaves, OneLeaf, SimpleCycle, CombinedCycles };

const char* structure_class_name(StructureClass c);

bool is_contracted_set(const Instance& inst, const PowerAssignment& r,
                       const std::vector<int>& comps, const std::vector<int>& reps);

/// Same check against a partition the caller already computed for (inst, r);
/// saves the repeated decomposition inside scan loops.
bool is_contracted_set(const Instance& inst, const PowerAssignment& r, const SccPartition& part,
                       const std::vector<int>& comps, const std::vector<int>& reps);

/// Builds the reach structure of a verified contracted set.
/// Throws contract_error when the given (comps, reps) is not a contracted set.
ContractibleStructure induced_structure(const Instance& inst, const PowerAssignment& r,
                                        const ContractedSet& cset);

/// Component ids of the structure that satisfy all three leaf conditions:
///  (1) dropping the component and its rep leaves a contracted set,
///  (2) no other member is reachable from it through components outside the
///      structure in the component graph,
///  (3) no node of it can high-reach both a member and a non-member.
std::vector<int> leaves(const Instance& inst, const PowerAssignment& r,
                        const ContractibleStructure& cs);

StructureClass classify(const ContractibleStructure& cs, int leaf_count);

/// What find_contracted_set should look for.
struct SetQuery {
    enum class Kind {
        SizeAtLeast,   // any contracted set of size >= size (path-extension search)
        ExactSize,     // any contracted set of exactly this size
        ClassAndSize,  // exact size with a specific structure class
    };
    Kind kind = Kind::ExactSize;
    int size = 0;
    StructureClass cls = StructureClass::SimpleCycle;

    static SetQuery at_least(int k) { return {Kind::SizeAtLeast, k, StructureClass::SimpleCycle}; }
    static SetQuery exact(int i) { return {Kind::ExactSize, i, StructureClass::SimpleCycle}; }
    static SetQuery with_class(StructureClass c, int j) { return {Kind::ClassAndSize, j, c}; }
};

struct FoundSet {
    ContractedSet set;
    ContractibleStructure structure;
    int leaf_count = 0;
    StructureClass cls = StructureClass::CombinedCycles;
};

/// Deterministic search over the current component structure.  Exact-size
/// queries scan component combinations in lexicographic order and, within a
/// combination, representative tuples in lexicographic order; the first hit
/// wins.  SizeAtLeast uses bounded path extension: grow a chain of components
/// whose reps each directly cover the next, and accept the first chain of
/// length >= size that closes into a contracted set.
std::optional<FoundSet> find_contracted_set(const Instance& inst, const PowerAssignment& r,
                                            const SetQuery& query);

}  // namespace topo
