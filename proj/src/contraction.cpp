#include "topo/contraction.hpp"

#include <algorithm>
#include <deque>

#include "topo/errors.hpp"
#include "topo/geom.hpp"

namespace topo {

const char* structure_class_name(StructureClass c) {
    switch (c) {
        case StructureClass::TwoPlusLeaves: return "two-plus-leaves";
        case StructureClass::OneLeaf: return "one-leaf";
        case StructureClass::SimpleCycle: return "simple-cycle";
        case StructureClass::CombinedCycles: return "combined-cycles";
    }
    return "unknown";
}

namespace {

// True iff v's high radius covers some node of the given component.
bool covers_component(const Instance& inst, int v, const std::vector<int>& comp_nodes) {
    for (int w : comp_nodes)
        if (dist_sq(inst.points[v], inst.points[w]) <= inst.rh_sq) return true;
    return false;
}

void check_alignment(const SccPartition& part, const std::vector<int>& comps,
                     const std::vector<int>& reps) {
    if (comps.size() != reps.size())
        throw input_error("component list and representative list differ in length");
    for (std::size_t t = 0; t < comps.size(); ++t) {
        if (comps[t] < 0 || comps[t] >= part.count())
            throw input_error("component id out of range");
        if (t > 0 && comps[t] <= comps[t - 1])
            throw input_error("component ids must be strictly ascending");
        if (reps[t] < 0 || reps[t] >= static_cast<int>(part.comp_of.size()) ||
            part.comp_of[reps[t]] != comps[t])
            throw input_error("representative does not belong to its component");
    }
}

// Core merge test against a precomputed base partition.
bool merges_into_one(const Instance& inst, const PowerAssignment& r, const SccPartition& part,
                     const std::vector<int>& comps, const std::vector<int>& reps) {
    if (comps.empty()) return true;
    PowerAssignment boosted = r;
    for (int v : reps) boosted.add(v);
    SccPartition after = scc(induce_graph(inst, boosted));
    int target = after.comp_of[part.comps[comps[0]][0]];
    for (int c : comps)
        for (int v : part.comps[c])
            if (after.comp_of[v] != target) return false;
    return true;
}

}  // namespace

bool is_contracted_set(const Instance& inst, const PowerAssignment& r,
                       const std::vector<int>& comps, const std::vector<int>& reps) {
    SccPartition part = scc(induce_graph(inst, r));
    check_alignment(part, comps, reps);
    return merges_into_one(inst, r, part, comps, reps);
}

bool is_contracted_set(const Instance& inst, const PowerAssignment& r, const SccPartition& part,
                       const std::vector<int>& comps, const std::vector<int>& reps) {
    check_alignment(part, comps, reps);
    return merges_into_one(inst, r, part, comps, reps);
}

ContractibleStructure induced_structure(const Instance& inst, const PowerAssignment& r,
                                        const ContractedSet& cset) {
    SccPartition part = scc(induce_graph(inst, r));
    check_alignment(part, cset.comps, cset.reps);
    if (!merges_into_one(inst, r, part, cset.comps, cset.reps))
        throw contract_error("the given components and representatives do not merge");

    ContractibleStructure cs;
    cs.base = cset;
    int m = cset.size();
    for (int t = 0; t < m; ++t)
        for (int s = 0; s < m; ++s) {
            if (s == t) continue;
            if (covers_component(inst, cset.reps[t], part.comps[cset.comps[s]]))
                cs.arcs.emplace_back(cset.comps[t], cset.comps[s]);
        }
    std::sort(cs.arcs.begin(), cs.arcs.end());
    return cs;
}

std::vector<int> leaves(const Instance& inst, const PowerAssignment& r,
                        const ContractibleStructure& cs) {
    ComponentGraph cg = component_graph(inst, r);
    const SccPartition& part = cg.part;
    const auto& comps = cs.base.comps;
    const auto& reps = cs.base.reps;
    check_alignment(part, comps, reps);
    int m = cs.base.size();

    std::vector<char> member(part.count(), 0);
    for (int c : comps) member[c] = 1;

    std::vector<int> out;
    for (int t = 0; t < m; ++t) {
        int ci = comps[t];

        // The rest must still merge on its own.
        std::vector<int> rest_comps, rest_reps;
        for (int s = 0; s < m; ++s)
            if (s != t) {
                rest_comps.push_back(comps[s]);
                rest_reps.push_back(reps[s]);
            }
        if (!merges_into_one(inst, r, part, rest_comps, rest_reps)) continue;

        // No detour from ci to another member through outside components.
        bool detour = false;
        std::vector<char> seen(part.count(), 0);
        seen[ci] = 1;
        std::deque<int> queue;
        for (int nb : cg.adj[ci])
            if (!member[nb] && !seen[nb]) {
                seen[nb] = 1;
                queue.push_back(nb);
            }
        while (!queue.empty() && !detour) {
            int o = queue.front();
            queue.pop_front();
            for (int nb : cg.adj[o]) {
                if (member[nb] && nb != ci) {
                    detour = true;
                    break;
                }
                if (!member[nb] && !seen[nb]) {
                    seen[nb] = 1;
                    queue.push_back(nb);
                }
            }
        }
        if (detour) continue;

        // No node of ci may see both another member and an outsider at high range.
        bool mixed = false;
        for (int u : part.comps[ci]) {
            bool other_member = false, outsider = false;
            for (int c2 = 0; c2 < part.count(); ++c2) {
                if (c2 == ci) continue;
                if (!covers_component(inst, u, part.comps[c2])) continue;
                if (member[c2])
                    other_member = true;
                else
                    outsider = true;
            }
            if (other_member && outsider) {
                mixed = true;
                break;
            }
        }
        if (mixed) continue;

        out.push_back(ci);
    }
    return out;
}

StructureClass classify(const ContractibleStructure& cs, int leaf_count) {
    if (leaf_count >= 2) return StructureClass::TwoPlusLeaves;
    if (leaf_count == 1) return StructureClass::OneLeaf;

    // Leafless: a simple cycle means the reach arcs are exactly one directed
    // cycle through every component.
    int m = cs.base.size();
    if (static_cast<int>(cs.arcs.size()) != m || m < 2) return StructureClass::CombinedCycles;
    std::vector<int> succ(m, -1), indeg(m, 0);
    auto idx = [&](int comp) {
        return static_cast<int>(std::lower_bound(cs.base.comps.begin(), cs.base.comps.end(), comp) -
                                cs.base.comps.begin());
    };
    for (auto [a, b] : cs.arcs) {
        int ia = idx(a), ib = idx(b);
        if (succ[ia] != -1) return StructureClass::CombinedCycles;  // out-degree two
        succ[ia] = ib;
        ++indeg[ib];
    }
    for (int i = 0; i < m; ++i)
        if (succ[i] == -1 || indeg[i] != 1) return StructureClass::CombinedCycles;
    int cur = 0, steps = 0;
    do {
        cur = succ[cur];
        ++steps;
    } while (cur != 0 && steps <= m);
    return steps == m ? StructureClass::SimpleCycle : StructureClass::CombinedCycles;
}

namespace {

struct SearchCtx {
    const Instance& inst;
    const PowerAssignment& r;
    SccPartition part;
};

FoundSet finish(const SearchCtx& ctx, std::vector<int> comps, std::vector<int> reps) {
    FoundSet f;
    f.set = ContractedSet{std::move(comps), std::move(reps)};
    f.structure = induced_structure(ctx.inst, ctx.r, f.set);
    f.leaf_count = static_cast<int>(leaves(ctx.inst, ctx.r, f.structure).size());
    f.cls = classify(f.structure, f.leaf_count);
    return f;
}

// Component combinations in lexicographic order, representative tuples in
// lexicographic order within each; the first qualifying set wins.
std::optional<FoundSet> exact_size_scan(const SearchCtx& ctx, const SetQuery& query) {
    int m = ctx.part.count();
    int s = query.size;
    if (s < 1 || s > m) return std::nullopt;

    std::vector<int> combo(s);
    for (int t = 0; t < s; ++t) combo[t] = t;
    while (true) {
        std::vector<int> pick(s, 0);
        bool more = true;
        while (more) {
            std::vector<int> reps(s);
            for (int t = 0; t < s; ++t) reps[t] = ctx.part.comps[combo[t]][pick[t]];
            if (merges_into_one(ctx.inst, ctx.r, ctx.part, combo, reps)) {
                FoundSet f = finish(ctx, combo, reps);
                if (query.kind == SetQuery::Kind::ExactSize || f.cls == query.cls) return f;
            }
            int t = s - 1;
            while (t >= 0 && pick[t] + 1 >= static_cast<int>(ctx.part.comps[combo[t]].size())) {
                pick[t] = 0;
                --t;
            }
            if (t < 0)
                more = false;
            else
                ++pick[t];
        }
        int t = s - 1;
        while (t >= 0 && combo[t] == m - s + t) --t;
        if (t < 0) return std::nullopt;
        ++combo[t];
        for (int q = t + 1; q < s; ++q) combo[q] = combo[q - 1] + 1;
    }
}

// Depth-first chain growth: each chosen representative must cover some node of
// the next component at high range.  Tests the chain as soon as it is long
// enough and keeps extending on failure.
struct ChainSearch {
    const SearchCtx& ctx;
    int want;
    std::vector<int> chain_comps, chain_reps;
    std::vector<char> used;

    explicit ChainSearch(const SearchCtx& c, int w)
        : ctx(c), want(w), used(c.part.count(), 0) {}

    std::optional<FoundSet> attempt() {
        if (static_cast<int>(chain_comps.size()) >= want) {
            std::vector<std::pair<int, int>> pairs;
            for (std::size_t t = 0; t < chain_comps.size(); ++t)
                pairs.emplace_back(chain_comps[t], chain_reps[t]);
            std::sort(pairs.begin(), pairs.end());
            std::vector<int> comps, reps;
            for (auto [c, v] : pairs) {
                comps.push_back(c);
                reps.push_back(v);
            }
            if (merges_into_one(ctx.inst, ctx.r, ctx.part, comps, reps))
                return finish(ctx, comps, reps);
        }
        return std::nullopt;
    }

    std::optional<FoundSet> extend() {
        if (auto hit = attempt()) return hit;
        int last_rep = chain_reps.back();
        for (int c = 0; c < ctx.part.count(); ++c) {
            if (used[c]) continue;
            if (!covers_component(ctx.inst, last_rep, ctx.part.comps[c])) continue;
            used[c] = 1;
            chain_comps.push_back(c);
            for (int v : ctx.part.comps[c]) {
                chain_reps.push_back(v);
                if (auto hit = extend()) return hit;
                chain_reps.pop_back();
            }
            chain_comps.pop_back();
            used[c] = 0;
        }
        return std::nullopt;
    }

    std::optional<FoundSet> run() {
        for (int c = 0; c < ctx.part.count(); ++c) {
            used[c] = 1;
            chain_comps.push_back(c);
            for (int v : ctx.part.comps[c]) {
                chain_reps.push_back(v);
                if (auto hit = extend()) return hit;
                chain_reps.pop_back();
            }
            chain_comps.pop_back();
            used[c] = 0;
        }
        return std::nullopt;
    }
};

}  // namespace

std::optional<FoundSet> find_contracted_set(const Instance& inst, const PowerAssignment& r,
                                            const SetQuery& query) {
    SearchCtx ctx{inst, r, scc(induce_graph(inst, r))};
    if (query.kind == SetQuery::Kind::SizeAtLeast) {
        if (query.size < 2) throw input_error("chain search needs a target of at least two");
        if (query.size > ctx.part.count()) return std::nullopt;
        ChainSearch search(ctx, query.size);
        return search.run();
    }
    return exact_size_scan(ctx, query);
}

}  // namespace topo
