#pragma once

// Shared helpers for the test binaries: tiny hand-checkable geometries plus
// slow reference implementations that recompute everything from first
// principles, kept deliberately separate from the library's code paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "topo/geom.hpp"
#include "topo/instance.hpp"

namespace fixtures {

// Four two-node clusters on a square.  Each cluster center sits 30 from its
// arm (low reach, boundary exactly), each arm sits 70 from the next cluster
// center going clockwise (high reach, boundary exactly), and nothing else is
// in range.  Low components form a 4-ring and the unique optimum raises one
// node in each of the four components.
inline topo::Instance ring_square() {
    topo::Instance inst;
    inst.points = {{0, 0},     {30, 0},   {100, 0}, {100, 30},
                   {100, 100}, {70, 100}, {0, 100}, {0, 70}};
    inst.rl_sq = 900;
    inst.rh_sq = 4900;
    return inst;
}

// n collinear points 60 apart: low range 30 hears nobody, high range 60
// reaches exactly the immediate neighbours, so the only feasible assignment
// raises every single node.
inline topo::Instance line_instance(int n) {
    topo::Instance inst;
    for (int i = 0; i < n; ++i) inst.points.push_back({static_cast<std::int64_t>(i) * 60, 0});
    inst.rl_sq = 900;
    inst.rh_sq = 3600;
    return inst;
}

// Instance shapes used by the randomized suites; all generate reliably.
struct GenCfg {
    int n;
    std::int64_t extent;
    std::int64_t rl_sq;
    std::int64_t rh_sq;
};

inline std::vector<GenCfg> gen_configs() {
    return {{5, 60, 100, 900},    {6, 80, 144, 1600},  {7, 100, 225, 2500},
            {8, 100, 400, 2500},  {9, 120, 225, 3600}, {10, 140, 400, 4900},
            {11, 160, 400, 6400}};
}

// Arc list recomputed pair by pair with nothing shared with the library's
// builder; already lexicographic by construction.
inline std::vector<std::pair<int, int>> arc_oracle(const topo::Instance& inst,
                                                   const std::vector<int>& high) {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < inst.size(); ++u) {
        bool hi = std::find(high.begin(), high.end(), u) != high.end();
        std::int64_t reach = hi ? inst.rh_sq : inst.rl_sq;
        for (int v = 0; v < inst.size(); ++v)
            if (u != v && topo::dist_sq(inst.points[u], inst.points[v]) <= reach)
                out.emplace_back(u, v);
    }
    return out;
}

inline std::vector<char> reach_oracle(int n, const std::vector<std::pair<int, int>>& arcs,
                                      int start) {
    std::vector<char> seen(n, 0);
    seen[start] = 1;
    std::vector<int> queue{start};
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        for (const auto& [a, b] : arcs)
            if (a == u && !seen[b]) {
                seen[b] = 1;
                queue.push_back(b);
            }
    }
    return seen;
}

inline bool sc_oracle(int n, const std::vector<std::pair<int, int>>& arcs) {
    if (n == 0) return false;
    std::vector<char> fwd = reach_oracle(n, arcs, 0);
    std::vector<std::pair<int, int>> rev;
    for (const auto& [a, b] : arcs) rev.emplace_back(b, a);
    std::vector<char> bwd = reach_oracle(n, rev, 0);
    for (int v = 0; v < n; ++v)
        if (!fwd[v] || !bwd[v]) return false;
    return true;
}

// Mutual-reachability classes, the slow way; sorted inside and out.
inline std::vector<std::vector<int>> scc_oracle(int n,
                                                const std::vector<std::pair<int, int>>& arcs) {
    std::vector<std::vector<char>> reach(n);
    for (int u = 0; u < n; ++u) reach[u] = reach_oracle(n, arcs, u);
    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> comps;
    for (int u = 0; u < n; ++u) {
        if (cls[u] != -1) continue;
        std::vector<int> members;
        for (int v = u; v < n; ++v)
            if (cls[v] == -1 && reach[u][v] && reach[v][u]) {
                cls[v] = static_cast<int>(comps.size());
                members.push_back(v);
            }
        comps.push_back(members);
    }
    return comps;  // ordered by smallest member because u scans upward
}

// Every index subset of 0..m-1, ascending by size then lexicographic; the
// callback returns true to stop (first hit wins).
inline bool scan_subsets(int m, int max_size,
                         const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> pick;
    std::function<bool(int, int)> rec = [&](int from, int left) -> bool {
        if (left == 0) return fn(pick);
        for (int x = from; x <= m - left; ++x) {
            pick.push_back(x);
            if (rec(x + 1, left - 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    for (int size = 0; size <= max_size; ++size)
        if (rec(0, size)) return true;
    return false;
}

// All simple cycles of an undirected edge list with at least three nodes, as
// canonical sequences (smallest node first, smaller neighbour second),
// found by brute permutation; sorted.
inline std::vector<std::vector<int>> cycle_oracle(int n,
                                                  const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& [a, b] : edges) adj[a][b] = adj[b][a] = 1;
    std::vector<std::vector<int>> out;
    std::vector<int> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i;
    scan_subsets(n, n, [&](const std::vector<int>& pick) {
        if (pick.size() < 3) return false;
        int a = pick[0];
        std::vector<int> rest(pick.begin() + 1, pick.end());
        do {
            if (rest.front() > rest.back()) continue;
            bool ok = adj[a][rest.front()] && adj[rest.back()][a];
            for (std::size_t t = 0; ok && t + 1 < rest.size(); ++t)
                ok = adj[rest[t]][rest[t + 1]];
            if (ok) {
                std::vector<int> seq{a};
                seq.insert(seq.end(), rest.begin(), rest.end());
                out.push_back(seq);
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
        return false;
    });
    std::sort(out.begin(), out.end());
    return out;
}

// All directed simple cycles (length >= 2) as sequences starting at their
// smallest node; sorted.
inline std::vector<std::vector<int>> directed_cycle_oracle(
    int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
    for (const auto& [a, b] : arcs) has[a][b] = 1;
    std::vector<std::vector<int>> out;
    scan_subsets(n, n, [&](const std::vector<int>& pick) {
        if (pick.size() < 2) return false;
        int a = pick[0];
        std::vector<int> rest(pick.begin() + 1, pick.end());
        do {
            bool ok = has[a][rest.front()] && has[rest.back()][a];
            for (std::size_t t = 0; ok && t + 1 < rest.size(); ++t)
                ok = has[rest[t]][rest[t + 1]];
            if (ok) {
                std::vector<int> seq{a};
                seq.insert(seq.end(), rest.begin(), rest.end());
                out.push_back(seq);
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
        return false;
    });
    std::sort(out.begin(), out.end());
    return out;
}

// Fewest extra high nodes on top of `base` that strongly connect the
// instance, scanning subsets ascending/lexicographic; returns the full node
// set, matching the library's tie-break contract.
inline std::vector<int> brute_min_addition(const topo::Instance& inst,
                                           const std::vector<int>& base) {
    std::vector<int> others;
    for (int v = 0; v < inst.size(); ++v)
        if (std::find(base.begin(), base.end(), v) == base.end()) others.push_back(v);
    std::vector<int> result;
    scan_subsets(static_cast<int>(others.size()), static_cast<int>(others.size()),
                 [&](const std::vector<int>& pick) {
                     std::vector<int> high = base;
                     for (int idx : pick) high.push_back(others[idx]);
                     std::sort(high.begin(), high.end());
                     if (!sc_oracle(inst.size(), arc_oracle(inst, high))) return false;
                     result = high;
                     return true;
                 });
    return result;
}

// Fewest arcs keeping the digraph strongly connected, scanning arc subsets
// ascending/lexicographic over the given arc order.
inline std::vector<std::pair<int, int>> brute_min_sc_arcs(
    int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<std::pair<int, int>> result;
    scan_subsets(static_cast<int>(arcs.size()), static_cast<int>(arcs.size()),
                 [&](const std::vector<int>& pick) {
                     std::vector<std::pair<int, int>> sub;
                     for (int idx : pick) sub.push_back(arcs[idx]);
                     if (!sc_oracle(n, sub)) return false;
                     result = sub;
                     return true;
                 });
    return result;
}

// Random digraph with arc probability num/den, self-loops excluded.
inline std::vector<std::pair<int, int>> random_arcs(std::mt19937& rng, int n, int num, int den) {
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && static_cast<int>(rng() % den) < num) arcs.emplace_back(u, v);
    return arcs;
}

// Random symmetric strongly connected arc list: a random spanning tree taken
// both ways plus extra symmetric pairs.
inline std::vector<std::pair<int, int>> random_sym_sc_arcs(std::mt19937& rng, int n,
                                                           int extra_pairs) {
    std::set<std::pair<int, int>> arcs;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng() % v);
        arcs.insert({u, v});
        arcs.insert({v, u});
    }
    for (int t = 0; t < extra_pairs; ++t) {
        int u = static_cast<int>(rng() % n);
        int v = static_cast<int>(rng() % n);
        if (u == v) continue;
        arcs.insert({u, v});
        arcs.insert({v, u});
    }
    return {arcs.begin(), arcs.end()};
}

}  // namespace fixtures
