#include "topo/second_ham.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "topo/deadline.hpp"
#include "topo/errors.hpp"

namespace topo {

namespace {

using Edge = std::pair<int, int>;

Edge norm_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::vector<Edge> sorted_edges(std::vector<Edge> es) {
    for (auto& e : es) e = norm_edge(e.first, e.second);
    std::sort(es.begin(), es.end());
    return es;
}

std::vector<std::vector<int>> adjacency(const StructureGraph& g) {
    std::vector<std::vector<int>> adj(g.total());
    auto add = [&](const Edge& e) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    };
    for (const auto& e : g.h_edges) add(e);
    for (const auto& e : g.e_edges) add(e);
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

std::vector<Edge> cycle_edge_set(const std::vector<int>& nodes) {
    std::vector<Edge> es;
    es.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        es.push_back(norm_edge(nodes[i], nodes[(i + 1) % nodes.size()]));
    std::sort(es.begin(), es.end());
    return es;
}

std::vector<int> canonical_cycle(std::vector<int> seq) {
    auto it = std::min_element(seq.begin(), seq.end());
    std::rotate(seq.begin(), it, seq.end());
    if (seq.size() > 2 && seq[1] > seq.back()) std::reverse(seq.begin() + 1, seq.end());
    return seq;
}

// Walks a path given by its edge set from one endpoint to the other.
std::vector<int> walk_path(const std::vector<Edge>& edges, int from, int to) {
    std::map<int, std::vector<int>> nb;
    for (const auto& e : edges) {
        nb[e.first].push_back(e.second);
        nb[e.second].push_back(e.first);
    }
    std::vector<int> seq{from};
    int prev = -1, cur = from;
    while (cur != to) {
        const auto& cand = nb[cur];
        if (cand.empty() || cand.size() > 2) throw contract_error("path fragment is not a path");
        int next = (cand[0] != prev) ? cand[0] : (cand.size() > 1 ? cand[1] : -1);
        if (next < 0) throw contract_error("path fragment ends early");
        prev = cur;
        cur = next;
        seq.push_back(cur);
    }
    return seq;
}

// A simple cycle held as a neighbour map, for local rewrites.
struct CycleMap {
    std::map<int, std::array<int, 2>> nb;

    static CycleMap of(const std::vector<int>& seq) {
        CycleMap cm;
        int n = static_cast<int>(seq.size());
        for (int i = 0; i < n; ++i)
            cm.nb[seq[i]] = {seq[(i + n - 1) % n], seq[(i + 1) % n]};
        return cm;
    }

    bool contains(int x) const { return nb.count(x) != 0; }

    bool adjacent(int x, int y) const {
        auto it = nb.find(x);
        return it != nb.end() && (it->second[0] == y || it->second[1] == y);
    }

    void replace_ref(int node, int from, int to) {
        auto& a = nb.at(node);
        if (a[0] == from)
            a[0] = to;
        else if (a[1] == from)
            a[1] = to;
        else
            throw contract_error("cycle rewrite lost an edge");
    }

    void splice_out(int x) {
        auto [a, b] = nb.at(x);
        if (a == b) throw contract_error("cycle too short to rewrite");
        replace_ref(a, x, b);
        replace_ref(b, x, a);
        nb.erase(x);
    }

    void rename(int from, int to) {
        auto a = nb.at(from);
        nb.erase(from);
        replace_ref(a[0], from, to);
        replace_ref(a[1], from, to);
        nb[to] = a;
    }

    void insert_between(int a, int b, int x) {
        if (!adjacent(a, b)) throw contract_error("cycle rewrite expected adjacent nodes");
        replace_ref(a, b, x);
        replace_ref(b, a, x);
        nb[x] = {a, b};
    }

    std::vector<int> sequence() const {
        std::vector<int> seq;
        int start = nb.begin()->first;
        int prev = -1, cur = start;
        do {
            seq.push_back(cur);
            auto [a, b] = nb.at(cur);
            int next = (a != prev) ? a : b;
            prev = cur;
            cur = next;
        } while (cur != start);
        if (seq.size() != nb.size()) throw contract_error("cycle rewrite split the cycle");
        return seq;
    }
};

nlohmann::json parse_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad JSON: ") + e.what());
    }
}

const nlohmann::json& need(const nlohmann::json& j, const char* field) {
    if (!j.contains(field)) throw parse_error(std::string("missing field: ") + field);
    return j.at(field);
}

std::vector<Edge> edges_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw parse_error("edge list must be an array");
    std::vector<Edge> es;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw parse_error("edge must be a pair");
        es.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return es;
}

nlohmann::json edges_to_json(const std::vector<Edge>& es) {
    auto arr = nlohmann::json::array();
    for (const auto& e : es) arr.push_back({e.first, e.second});
    return arr;
}

}  // namespace

void validate_structure(const StructureGraph& g) {
    if (g.n_v < 3) throw input_error("structure needs at least three cycle nodes");
    if (g.n_u < 0) throw input_error("negative attachment count");
    int total = g.total();
    if (static_cast<int>(g.h_edges.size()) != g.n_v)
        throw input_error("cycle edge count must equal the cycle node count");
    std::set<Edge> seen;
    auto check = [&](const Edge& e, bool cycle_side) {
        if (e.first < 0 || e.second < 0 || e.first >= total || e.second >= total)
            throw input_error("edge endpoint out of range");
        if (e.first == e.second) throw input_error("self loop");
        if (cycle_side && (e.first >= g.n_v || e.second >= g.n_v))
            throw input_error("cycle edge leaves the cycle side");
        if (!seen.insert(norm_edge(e.first, e.second)).second) throw input_error("duplicate edge");
    };
    for (const auto& e : g.h_edges) check(e, true);
    for (const auto& e : g.e_edges) check(e, false);

    std::vector<std::vector<int>> hn(g.n_v);
    for (const auto& e : g.h_edges) {
        hn[e.first].push_back(e.second);
        hn[e.second].push_back(e.first);
    }
    for (const auto& nbs : hn)
        if (nbs.size() != 2) throw input_error("cycle side is not a single cycle");
    int prev = -1, cur = 0, steps = 0;
    do {
        int next = (hn[cur][0] != prev) ? hn[cur][0] : hn[cur][1];
        prev = cur;
        cur = next;
        ++steps;
    } while (cur != 0 && steps <= g.n_v);
    if (steps != g.n_v) throw input_error("cycle side is not a single cycle");
}

StructureGraph structure_from_json(const std::string& text) {
    auto j = parse_text(text);
    StructureGraph g;
    g.n_v = need(j, "n_v").get<int>();
    g.n_u = need(j, "n_u").get<int>();
    g.h_edges = edges_from_json(need(j, "h_edges"));
    g.e_edges = edges_from_json(need(j, "e_edges"));
    validate_structure(g);
    return g;
}

std::string structure_to_json(const StructureGraph& g) {
    nlohmann::json j;
    j["n_v"] = g.n_v;
    j["n_u"] = g.n_u;
    j["h_edges"] = edges_to_json(g.h_edges);
    j["e_edges"] = edges_to_json(g.e_edges);
    return j.dump(2) + "\n";
}

void validate_witness(const StructureGraph& g, const CycleWitness& w) {
    validate_structure(g);
    const auto& nodes = w.nodes;
    if (nodes.size() < 3) throw input_error("witness too short");
    std::set<int> distinct(nodes.begin(), nodes.end());
    if (distinct.size() != nodes.size()) throw input_error("witness repeats a node");
    for (int x : nodes)
        if (x < 0 || x >= g.total()) throw input_error("witness node out of range");
    std::set<Edge> have;
    for (const auto& e : g.h_edges) have.insert(norm_edge(e.first, e.second));
    for (const auto& e : g.e_edges) have.insert(norm_edge(e.first, e.second));
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (!have.count(norm_edge(nodes[i], nodes[(i + 1) % nodes.size()])))
            throw input_error("witness uses a missing edge");
    for (int v = 0; v < g.n_v; ++v)
        if (!distinct.count(v)) throw input_error("witness skips a cycle node");
    if (cycle_edge_set(nodes) == sorted_edges(g.h_edges))
        throw input_error("witness repeats the fixed cycle");
}

namespace {

// Exhaustive covering-cycle search, canonical order: anchored at node 0,
// neighbours ascending, reflections cut by second < last.
struct SecHamSearch {
    const StructureGraph& g;
    std::vector<std::vector<int>> adj;
    std::vector<Edge> hset;
    std::vector<Edge> req;
    Deadline dl;

    std::vector<char> visited{};
    std::vector<int> path{};
    std::set<Edge> on_path{};
    int need = 0;  // cycle-side nodes still missing
    std::vector<int> stamp{};
    int stamp_id = 0;
    long ticks = 0;
    std::optional<std::vector<int>> hit{};

    bool reachable_ok(int head) {
        ++stamp_id;
        std::vector<int> stack{head};
        stamp[head] = stamp_id;
        bool reach0 = false;
        int got = 0;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int w : adj[x]) {
                if (w == 0) {
                    reach0 = true;
                    continue;
                }
                if (visited[w] || stamp[w] == stamp_id) continue;
                stamp[w] = stamp_id;
                if (w < g.n_v) ++got;
                stack.push_back(w);
            }
        }
        return reach0 && got == need;
    }

    bool required_ok(int head) {
        for (const auto& e : req) {
            auto fin = [&](int x) { return visited[x] && x != head && x != 0; };
            if (fin(e.first) && fin(e.second) && !on_path.count(e)) return false;
        }
        return true;
    }

    bool dfs(int y) {
        if ((++ticks & 2047) == 0) dl.check("second-cycle search");
        for (int z : adj[y]) {
            if (z == 0) {
                if (path.size() < 3 || need != 0 || path[1] > path.back()) continue;
                auto edges = cycle_edge_set(path);
                if (edges == hset) continue;
                bool all = true;
                for (const auto& e : req)
                    if (!std::binary_search(edges.begin(), edges.end(), e)) {
                        all = false;
                        break;
                    }
                if (!all) continue;
                hit = path;
                return true;
            }
            if (visited[z]) continue;
            visited[z] = 1;
            path.push_back(z);
            if (z < g.n_v) --need;
            Edge pe = norm_edge(y, z);
            on_path.insert(pe);
            bool ok = reachable_ok(z) && required_ok(z);
            if (ok && dfs(z)) return true;
            on_path.erase(pe);
            if (z < g.n_v) ++need;
            path.pop_back();
            visited[z] = 0;
        }
        return false;
    }
};

}  // namespace

std::optional<CycleWitness> find_sec_ham(const StructureGraph& g,
                                         const std::vector<Edge>& require_edges,
                                         std::int64_t budget_ms) {
    validate_structure(g);
    SecHamSearch s{.g = g,
                   .adj = adjacency(g),
                   .hset = sorted_edges(g.h_edges),
                   .req = {},
                   .dl = Deadline::after_ms(budget_ms)};
    std::set<Edge> have(s.hset.begin(), s.hset.end());
    for (const auto& e : g.e_edges) have.insert(norm_edge(e.first, e.second));
    for (const auto& e : require_edges) {
        Edge ne = norm_edge(e.first, e.second);
        if (!have.count(ne)) throw input_error("required edge not in the graph");
        s.req.push_back(ne);
    }
    std::sort(s.req.begin(), s.req.end());
    s.visited.assign(g.total(), 0);
    s.stamp.assign(g.total(), 0);
    s.path = {0};
    s.visited[0] = 1;
    s.need = g.n_v - 1;
    if (!s.dfs(0)) return std::nullopt;
    return CycleWitness{*s.hit};
}

std::vector<Edge> odd_forest_decompose(int n, const std::vector<Edge>& edges) {
    if (n <= 0) throw input_error("empty forest");
    std::vector<std::vector<int>> adj(n);
    std::set<Edge> seen;
    for (const auto& e : edges) {
        if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
            throw input_error("edge endpoint out of range");
        if (e.first == e.second) throw input_error("self loop");
        if (!seen.insert(norm_edge(e.first, e.second)).second) throw input_error("duplicate edge");
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::vector<int> parent(n, -2), order;
    std::vector<int> kept_deg(n, 0);
    std::vector<Edge> kept;
    for (int root = 0; root < n; ++root) {
        if (parent[root] != -2) continue;
        // iterative DFS, recording a child-before-parent order
        order.clear();
        parent[root] = -1;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int w : adj[v]) {
                if (w == parent[v]) continue;
                if (parent[w] != -2) throw input_error("not a forest");
                parent[w] = v;
                stack.push_back(w);
            }
        }
        if (order.size() % 2 != 0) throw input_error("a component has an odd node count");
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int v = *it;
            if (parent[v] < 0) continue;
            if (kept_deg[v] % 2 == 0) {
                kept.push_back(norm_edge(v, parent[v]));
                ++kept_deg[v];
                ++kept_deg[parent[v]];
            }
        }
        if (kept_deg[root] % 2 == 0) throw contract_error("root came out even");
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<Edge> forest_decompose_deg23(int n_v, int n_u, const std::vector<Edge>& edges) {
    if (n_v <= 0 || n_u < 0) throw input_error("bad node counts");
    int total = n_v + n_u;
    std::vector<std::set<int>> adj(total);
    for (const auto& e : edges) {
        if (e.first < 0 || e.second < 0 || e.first >= total || e.second >= total)
            throw input_error("edge endpoint out of range");
        bool a_v = e.first < n_v, b_v = e.second < n_v;
        if (a_v == b_v) throw input_error("edge must join the two sides");
        if (!adj[e.first].insert(e.second).second) throw input_error("duplicate edge");
        adj[e.second].insert(e.first);
    }
    for (int u = n_v; u < total; ++u)
        if (adj[u].size() < 2 || adj[u].size() > 3)
            throw input_error("attachment degree must be two or three");

    // cycle-side count of the piece hanging at v once the edge {u, v} is cut
    auto side_count = [&](int u, int v) {
        std::set<int> seen{v};
        std::vector<int> stack{v};
        int cnt = v < n_v ? 1 : 0;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int w : adj[x]) {
                if (x == v && w == u) continue;
                if (!seen.insert(w).second) continue;
                if (w < n_v) ++cnt;
                stack.push_back(w);
            }
        }
        return cnt;
    };

    {
        // forest + even components check
        std::vector<char> vis(total, 0);
        int edge_cnt = static_cast<int>(edges.size());
        int comp_nodes = 0, comps = 0;
        for (int s = 0; s < total; ++s) {
            if (vis[s]) continue;
            ++comps;
            int sz = 0, vcnt = 0;
            std::vector<int> stack{s};
            vis[s] = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                ++sz;
                if (x < n_v) ++vcnt;
                for (int w : adj[x])
                    if (!vis[w]) {
                        vis[w] = 1;
                        stack.push_back(w);
                    }
            }
            comp_nodes += sz;
            if (vcnt % 2 != 0) throw input_error("a component has an odd cycle-side count");
        }
        if (edge_cnt != comp_nodes - comps) throw input_error("not a forest");
    }

    for (;;) {
        int u3 = -1;
        for (int u = n_v; u < total; ++u)
            if (adj[u].size() == 3) {
                u3 = u;
                break;
            }
        if (u3 < 0) break;
        int cut = -1;
        for (int v : adj[u3])
            if (side_count(u3, v) % 2 == 0) {
                cut = v;
                break;
            }
        if (cut < 0) throw contract_error("no even split at a degree-three attachment");
        adj[u3].erase(cut);
        adj[cut].erase(u3);
    }

    // contract the degree-two attachments into plain edges
    std::vector<Edge> v_edges;
    std::map<Edge, int> via;
    for (int u = n_v; u < total; ++u) {
        if (adj[u].size() != 2) throw contract_error("attachment degree drifted");
        auto it = adj[u].begin();
        int a = *it++, b = *it;
        Edge e = norm_edge(a, b);
        if (via.count(e)) throw contract_error("parallel contraction");
        via[e] = u;
        v_edges.push_back(e);
    }
    auto kept_v = odd_forest_decompose(n_v, v_edges);
    std::vector<Edge> kept;
    for (const auto& e : kept_v) {
        int u = via.at(e);
        kept.push_back(norm_edge(e.first, u));
        kept.push_back(norm_edge(e.second, u));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

namespace {

bool has_h_edge(const StructureGraph& g, int a, int b) {
    Edge ne = norm_edge(a, b);
    for (const auto& e : g.h_edges)
        if (norm_edge(e.first, e.second) == ne) return true;
    return false;
}

}  // namespace

DuplicateTransform duplicate_transform(const StructureGraph& g, int vi, int vj) {
    validate_structure(g);
    if (g.n_v % 2 == 0) throw input_error("doubling needs an odd cycle length");
    if (vi < 0 || vj < 0 || vi >= g.n_v || vj >= g.n_v || !has_h_edge(g, vi, vj))
        throw input_error("the pinned pair must be a cycle edge");
    int n = g.n_v, m = g.n_u;
    auto map1 = [&](int x) { return x < n ? x : x + n; };
    auto map2 = [&](int x) { return x < n ? x + n : x + n + m; };

    DuplicateTransform t;
    t.vi = vi;
    t.vj = vj;
    t.doubled.n_v = 2 * n;
    t.doubled.n_u = 2 * m;
    Edge cut = norm_edge(vi, vj);
    for (const auto& e : g.h_edges) {
        if (norm_edge(e.first, e.second) == cut) continue;
        t.doubled.h_edges.push_back(norm_edge(map1(e.first), map1(e.second)));
        t.doubled.h_edges.push_back(norm_edge(map2(e.first), map2(e.second)));
    }
    t.doubled.h_edges.push_back(norm_edge(vi, map2(vi)));
    t.doubled.h_edges.push_back(norm_edge(vj, map2(vj)));
    for (const auto& e : g.e_edges) {
        t.doubled.e_edges.push_back(norm_edge(map1(e.first), map1(e.second)));
        t.doubled.e_edges.push_back(norm_edge(map2(e.first), map2(e.second)));
    }
    t.doubled.e_edges.push_back(norm_edge(vj, map2(vi)));
    std::sort(t.doubled.h_edges.begin(), t.doubled.h_edges.end());
    std::sort(t.doubled.e_edges.begin(), t.doubled.e_edges.end());
    validate_structure(t.doubled);
    return t;
}

CycleWitness duplicate_backmap(const StructureGraph& g, const DuplicateTransform& t,
                               const CycleWitness& w) {
    validate_witness(t.doubled, w);
    int n = g.n_v, m = g.n_u;
    auto side = [&](int x) {
        if (x < n) return 1;
        if (x < 2 * n) return 2;
        return x < 2 * n + m ? 1 : 2;
    };
    auto unmap1 = [&](int x) { return x < n ? x : x - n; };
    auto unmap2 = [&](int x) { return x < 2 * n ? x - n : x - n - m; };

    std::vector<Edge> side1, side2, crossing;
    for (std::size_t i = 0; i < w.nodes.size(); ++i) {
        int a = w.nodes[i], b = w.nodes[(i + 1) % w.nodes.size()];
        if (side(a) == 1 && side(b) == 1)
            side1.push_back(norm_edge(a, b));
        else if (side(a) == 2 && side(b) == 2)
            side2.push_back(norm_edge(a, b));
        else
            crossing.push_back(norm_edge(a, b));
    }
    std::sort(crossing.begin(), crossing.end());
    std::vector<Edge> bridges = sorted_edges({{t.vi, t.vi + n}, {t.vj, t.vj + n}});
    if (crossing != bridges) throw contract_error("witness crossed outside the bridges");

    auto hset = sorted_edges(g.h_edges);

    auto seq1 = walk_path(side1, t.vi, t.vj);
    for (auto& x : seq1) x = unmap1(x);
    if (cycle_edge_set(seq1) != hset) {
        CycleWitness out{canonical_cycle(seq1)};
        validate_witness(g, out);
        return out;
    }

    auto seq2 = walk_path(side2, t.vi + n, t.vj + n);
    for (auto& x : seq2) x = unmap2(x);
    if (cycle_edge_set(seq2) == hset)
        throw contract_error("witness collapsed to the fixed cycle on both sides");
    CycleWitness out{canonical_cycle(seq2)};
    validate_witness(g, out);
    return out;
}

SplitTransform split_high_degree(const StructureGraph& g, int vi, int vj) {
    validate_structure(g);
    if (vi < 0 || vj < 0 || vi >= g.n_v || vj >= g.n_v || !has_h_edge(g, vi, vj))
        throw input_error("the pinned pair must be a cycle edge");
    std::vector<std::set<int>> en(g.total());
    for (const auto& e : g.e_edges) {
        en[e.first].insert(e.second);
        en[e.second].insert(e.first);
    }
    std::set<int> del;
    for (int u : en[vi])
        if (u >= g.n_v) del.insert(u);
    for (int u : en[vj])
        if (u >= g.n_v) {
            if (del.count(u)) throw input_error("the pinned nodes share an attachment");
            del.insert(u);
        }
    for (int u : del)
        for (int w : en[u])
            if (del.count(w)) throw input_error("attachments near the pinned edge touch each other");
    for (int u = g.n_v; u < g.total(); ++u)
        if (!del.count(u) && en[u].size() >= 4)
            throw input_error("an attachment away from the pinned edge has degree four");

    SplitTransform t;
    t.vi = vi;
    t.vj = vj;
    std::vector<int> old_to_new(g.total(), -1);
    for (int u = g.n_v; u < g.total(); ++u) {
        if (del.count(u)) continue;
        old_to_new[u] = g.n_v + static_cast<int>(t.u_origin.size());
        t.u_origin.push_back({u, -1, -1});
    }
    std::vector<Edge> relay_edges;
    for (int anchor : {vi, vj}) {
        std::vector<int> mine;
        for (int u : en[anchor])
            if (u >= g.n_v) mine.push_back(u);
        std::sort(mine.begin(), mine.end());
        for (int u : mine)
            for (int w : en[u]) {
                if (w == anchor) continue;
                int rid = g.n_v + static_cast<int>(t.u_origin.size());
                t.u_origin.push_back({-1, u, w});
                relay_edges.push_back(norm_edge(anchor, rid));
                int wid = w < g.n_v ? w : old_to_new[w];
                relay_edges.push_back(norm_edge(rid, wid));
            }
    }
    t.reduced.n_v = g.n_v;
    t.reduced.n_u = static_cast<int>(t.u_origin.size());
    t.reduced.h_edges = g.h_edges;
    for (const auto& e : g.e_edges) {
        auto alive = [&](int x) { return x < g.n_v || old_to_new[x] >= 0; };
        if (!alive(e.first) || !alive(e.second)) continue;
        auto mp = [&](int x) { return x < g.n_v ? x : old_to_new[x]; };
        t.reduced.e_edges.push_back(norm_edge(mp(e.first), mp(e.second)));
    }
    t.reduced.e_edges.insert(t.reduced.e_edges.end(), relay_edges.begin(), relay_edges.end());
    std::sort(t.reduced.e_edges.begin(), t.reduced.e_edges.end());
    validate_structure(t.reduced);
    return t;
}

CycleWitness split_backmap(const StructureGraph& g, const SplitTransform& t, const CycleWitness& w) {
    validate_witness(t.reduced, w);
    auto edges = cycle_edge_set(w.nodes);
    if (!std::binary_search(edges.begin(), edges.end(), norm_edge(t.vi, t.vj)))
        throw input_error("witness skips the pinned edge");

    std::set<int> vi_side;
    for (const auto& e : g.e_edges) {
        if (e.first == t.vi && e.second >= g.n_v) vi_side.insert(e.second);
        if (e.second == t.vi && e.first >= g.n_v) vi_side.insert(e.first);
    }
    int used_i = 0, used_j = 0;
    std::vector<int> seq;
    for (int x : w.nodes) {
        if (x < g.n_v) {
            seq.push_back(x);
            continue;
        }
        const auto& o = t.u_origin.at(x - g.n_v);
        if (o.orig_u >= 0) {
            seq.push_back(o.orig_u);
        } else {
            seq.push_back(o.relay_from);
            (vi_side.count(o.relay_from) ? used_i : used_j)++;
        }
    }
    if (used_i > 1 || used_j > 1) throw contract_error("two relays used on one side");
    CycleWitness out{canonical_cycle(seq)};
    validate_witness(g, out);
    return out;
}

LeafTransform leaf_transform(const StructureGraph& g, int vi) {
    validate_structure(g);
    if (vi < 0 || vi >= g.n_v) throw input_error("cycle node out of range");
    std::vector<std::set<int>> en(g.total());
    for (const auto& e : g.e_edges) {
        en[e.first].insert(e.second);
        en[e.second].insert(e.first);
    }
    if (en[vi].size() != 1 || *en[vi].begin() < g.n_v)
        throw input_error("needs exactly one attachment at the node");
    int u = *en[vi].begin();
    for (int w : en[u])
        if (w >= g.n_v) throw input_error("attachment touching attachments");

    int prev = -1, next = -1;
    for (const auto& e : g.h_edges) {
        int other = -1;
        if (e.first == vi) other = e.second;
        if (e.second == vi) other = e.first;
        if (other < 0) continue;
        if (prev < 0)
            prev = other;
        else
            next = other;
    }
    if (prev > next) std::swap(prev, next);

    LeafTransform t;
    t.vi = vi;
    t.u = u;
    t.vl = g.n_v;
    t.vr = g.n_v + 1;
    t.widened.n_v = g.n_v + 2;

    std::vector<int> old_to_new(g.total(), -1);  // original cycle ids survive unchanged
    for (int x = g.n_v; x < g.total(); ++x) {
        if (x == u) continue;
        old_to_new[x] = t.widened.n_v + static_cast<int>(t.u_origin.size());
        t.u_origin.push_back(x);
    }
    t.uprime = t.widened.n_v + static_cast<int>(t.u_origin.size());
    t.u_origin.push_back(-1);
    for (int vj : en[u]) {
        if (vj == vi) continue;
        int rid = t.widened.n_v + static_cast<int>(t.u_origin.size());
        t.u_origin.push_back(-1);
        t.relays.emplace_back(rid, vj);
    }
    t.widened.n_u = static_cast<int>(t.u_origin.size());

    for (const auto& e : g.h_edges) {
        Edge ne = norm_edge(e.first, e.second);
        if (ne == norm_edge(prev, vi) || ne == norm_edge(vi, next)) continue;
        t.widened.h_edges.push_back(ne);
    }
    t.widened.h_edges.push_back(norm_edge(prev, t.vl));
    t.widened.h_edges.push_back(norm_edge(t.vl, vi));
    t.widened.h_edges.push_back(norm_edge(vi, t.vr));
    t.widened.h_edges.push_back(norm_edge(t.vr, next));
    std::sort(t.widened.h_edges.begin(), t.widened.h_edges.end());

    for (const auto& e : g.e_edges) {
        if (e.first == u || e.second == u) continue;
        auto mp = [&](int x) { return x < g.n_v ? x : old_to_new[x]; };
        t.widened.e_edges.push_back(norm_edge(mp(e.first), mp(e.second)));
    }
    t.widened.e_edges.push_back(norm_edge(t.vl, t.uprime));
    t.widened.e_edges.push_back(norm_edge(t.vr, t.uprime));
    for (const auto& [rid, vj] : t.relays) {
        t.widened.e_edges.push_back(norm_edge(vi, rid));
        t.widened.e_edges.push_back(norm_edge(rid, vj));
    }
    std::sort(t.widened.e_edges.begin(), t.widened.e_edges.end());
    validate_structure(t.widened);
    return t;
}

CycleWitness leaf_backmap(const StructureGraph& g, const LeafTransform& t, const CycleWitness& w) {
    validate_witness(t.widened, w);
    auto cm = CycleMap::of(w.nodes);
    const int kTempU = -2;
    bool up_on = cm.contains(t.uprime);
    bool has_lv = cm.adjacent(t.vl, t.vi);
    bool has_ir = cm.adjacent(t.vi, t.vr);
    std::set<int> relay_ids;
    for (const auto& [rid, vj] : t.relays) relay_ids.insert(rid);
    auto other_at_vi = [&](int not_this) {
        auto [a, b] = cm.nb.at(t.vi);
        int x = (a == not_this) ? b : a;
        if (!relay_ids.count(x)) throw contract_error("unexpected neighbour at the widened node");
        return x;
    };

    if (!up_on) {
        if (!has_lv || !has_ir) throw contract_error("impossible witness shape");
        cm.splice_out(t.vl);
        cm.splice_out(t.vr);
    } else if (has_lv && has_ir) {
        throw contract_error("impossible witness shape");
    } else if (has_ir) {
        int x = other_at_vi(t.vr);
        cm.splice_out(t.vl);
        cm.splice_out(t.uprime);
        cm.splice_out(t.vr);
        cm.rename(x, kTempU);
    } else if (has_lv) {
        int x = other_at_vi(t.vl);
        cm.splice_out(t.vr);
        cm.splice_out(t.uprime);
        cm.splice_out(t.vl);
        cm.rename(x, kTempU);
    } else {
        auto [x, y] = cm.nb.at(t.vi);
        if (!relay_ids.count(x) || !relay_ids.count(y))
            throw contract_error("unexpected neighbour at the widened node");
        cm.splice_out(x);
        cm.splice_out(y);
        cm.rename(t.vi, kTempU);
        cm.splice_out(t.uprime);
        cm.splice_out(t.vl);
        cm.rename(t.vr, t.vi);
    }

    auto seq = cm.sequence();
    for (auto& nid : seq) {
        if (nid == kTempU) {
            nid = t.u;
        } else if (nid >= g.n_v) {
            if (nid < t.widened.n_v) throw contract_error("widening node survived the rewrite");
            int orig = t.u_origin.at(nid - t.widened.n_v);
            if (orig < 0) throw contract_error("auxiliary attachment survived the rewrite");
            nid = orig;
        }
    }
    CycleWitness out{canonical_cycle(seq)};
    validate_witness(g, out);
    return out;
}

BipartizeResult bipartize(const StructureGraph& g) {
    validate_structure(g);
    for (const auto& e : g.e_edges)
        if (e.first < g.n_v && e.second < g.n_v)
            throw input_error("cycle side must stay independent");
    std::vector<std::set<int>> en(g.total());
    for (const auto& e : g.e_edges) {
        en[e.first].insert(e.second);
        en[e.second].insert(e.first);
    }
    std::set<int> dead;
    BipartizeResult t;
    for (;;) {
        Edge uu{-1, -1};
        for (int u = g.n_v; u < g.total() && uu.first < 0; ++u) {
            if (dead.count(u)) continue;
            for (int w : en[u])
                if (w > u && w >= g.n_v) {
                    uu = {u, w};
                    break;
                }
        }
        if (uu.first < 0) break;
        auto v_adjacent = [&](int u) {
            return !en[u].empty() && *en[u].begin() < g.n_v;
        };
        int ui = uu.first, uj = uu.second;
        if (!v_adjacent(ui) && v_adjacent(uj)) std::swap(ui, uj);
        BipartizeResult::Fold f;
        f.ui = ui;
        f.uj = uj;
        for (int w : en[ui]) {
            if (w == uj) continue;
            if (en[uj].insert(w).second) {
                en[w].insert(uj);
                f.added.push_back(norm_edge(uj, w));
            }
        }
        for (int w : en[ui]) en[w].erase(ui);
        en[ui].clear();
        dead.insert(ui);
        t.steps.push_back(std::move(f));
    }

    t.folded_of.assign(g.total(), -1);
    for (int v = 0; v < g.n_v; ++v) {
        t.folded_of[v] = v;
        t.original_of.push_back(v);
    }
    for (int u = g.n_v; u < g.total(); ++u) {
        if (dead.count(u)) continue;
        t.folded_of[u] = static_cast<int>(t.original_of.size());
        t.original_of.push_back(u);
    }
    t.folded.n_v = g.n_v;
    t.folded.n_u = static_cast<int>(t.original_of.size()) - g.n_v;
    t.folded.h_edges = sorted_edges(g.h_edges);
    for (int a = 0; a < g.total(); ++a) {
        if (t.folded_of[a] < 0) continue;
        for (int b : en[a])
            if (b > a && t.folded_of[b] >= 0)
                t.folded.e_edges.push_back(norm_edge(t.folded_of[a], t.folded_of[b]));
    }
    std::sort(t.folded.e_edges.begin(), t.folded.e_edges.end());
    validate_structure(t.folded);
    return t;
}

CycleWitness bipartize_lift(const StructureGraph& g, const BipartizeResult& t,
                            const CycleWitness& w) {
    validate_witness(t.folded, w);
    std::vector<int> seq;
    for (int x : w.nodes) seq.push_back(t.original_of.at(x));
    auto cm = CycleMap::of(seq);
    for (auto it = t.steps.rbegin(); it != t.steps.rend(); ++it) {
        const auto& f = *it;
        if (!cm.contains(f.uj)) continue;
        auto [a, b] = cm.nb.at(f.uj);
        auto in_added = [&](int w2) {
            Edge e = norm_edge(f.uj, w2);
            return std::find(f.added.begin(), f.added.end(), e) != f.added.end();
        };
        bool ia = in_added(a), ib = in_added(b);
        if (ia && ib)
            cm.rename(f.uj, f.ui);
        else if (ia)
            cm.insert_between(f.uj, a, f.ui);
        else if (ib)
            cm.insert_between(f.uj, b, f.ui);
    }
    CycleWitness out{canonical_cycle(cm.sequence())};
    validate_witness(g, out);
    return out;
}

std::vector<int> lollipop_second_cycle(int n, const std::vector<Edge>& edges,
                                       const std::vector<int>& ham) {
    if (n < 4) throw input_error("need at least four nodes");
    std::vector<std::vector<int>> adj(n);
    std::set<Edge> have;
    for (const auto& e : edges) {
        if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
            throw input_error("edge endpoint out of range");
        if (e.first == e.second) throw input_error("self loop");
        if (!have.insert(norm_edge(e.first, e.second)).second) throw input_error("duplicate edge");
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    for (const auto& a : adj)
        if (a.size() % 2 == 0) throw input_error("every degree must be odd");
    if (static_cast<int>(ham.size()) != n) throw input_error("cycle must visit every node");
    {
        std::set<int> d(ham.begin(), ham.end());
        if (static_cast<int>(d.size()) != n || *d.begin() != 0 || *d.rbegin() != n - 1)
            throw input_error("cycle must visit every node");
        for (int i = 0; i < n; ++i)
            if (!have.count(norm_edge(ham[i], ham[(i + 1) % n])))
                throw input_error("not a cycle of the graph");
    }

    std::vector<int> path = ham;
    std::rotate(path.begin(), std::find(path.begin(), path.end(), 0), path.end());
    if (path[1] > path[n - 1]) std::reverse(path.begin() + 1, path.end());
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[path[i]] = i;
    auto hset = cycle_edge_set(ham);

    int arrival = 0;  // the pending move is the edge {head, arrival}
    std::set<std::vector<int>> seen;
    auto key = [&]() {
        auto k = path;
        k.push_back(arrival);
        return k;
    };
    seen.insert(key());

    for (long steps = 0;; ++steps) {
        if (steps > 1'000'000) throw contract_error("pivot walk ran too long");
        int y = path[n - 1], pred = path[n - 2];
        int idx = -1;
        std::vector<int> cand;
        for (int z : adj[y])
            if (z != pred) {
                if (z == arrival) idx = static_cast<int>(cand.size());
                cand.push_back(z);
            }
        if (idx < 0) throw contract_error("lost the pending move");
        int exit_z = cand[idx ^ 1];
        if (exit_z == 0) {
            if (cycle_edge_set(path) == hset)
                throw contract_error("pivot walk closed on the starting cycle");
            return canonical_cycle(path);
        }
        int i = pos[exit_z];
        std::reverse(path.begin() + i + 1, path.end());
        for (int p2 = i + 1; p2 < n; ++p2) pos[path[p2]] = p2;
        arrival = exit_z;
        if (!seen.insert(key()).second) throw contract_error("pivot walk revisited a state");
    }
}

namespace {

// Families of vertex groups on the n-cycle: grown one group at a time, each
// new group reusing exactly one covered vertex.
struct FamilyEnum {
    int n;
    int max_u;
    const std::vector<std::uint32_t>& cands;
    std::set<std::vector<std::uint32_t>>& raw;
    std::vector<std::uint32_t> fam;

    void grow(std::uint32_t covered, int budget) {
        if (budget == 0) {
            auto sorted = fam;
            std::sort(sorted.begin(), sorted.end());
            raw.insert(sorted);
            return;
        }
        if (static_cast<int>(fam.size()) == max_u) return;
        for (std::uint32_t c : cands) {
            if (std::popcount(c & covered) != 1) continue;
            int fresh = std::popcount(c) - 1;
            if (fresh > budget) continue;
            fam.push_back(c);
            grow(covered | c, budget - fresh);
            fam.pop_back();
        }
    }
};

}  // namespace

std::vector<StructureGraph> conjecture_instances(int n_v, int max_u) {
    if (n_v < 3 || n_v > 20) throw input_error("cycle size out of range");
    if (max_u < 0) throw input_error("negative attachment cap");
    int n = n_v;
    std::vector<std::uint32_t> cands;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        if (std::popcount(s) < 2) continue;
        bool touch = false;
        for (int i = 0; i < n && !touch; ++i)
            if ((s >> i & 1) && (s >> ((i + 1) % n) & 1)) touch = true;
        if (!touch) cands.push_back(s);
    }
    std::set<std::vector<std::uint32_t>> raw;
    FamilyEnum fe{n, max_u, cands, raw, {}};
    if (max_u > 0)
        for (std::uint32_t c : cands) {
            fe.fam = {c};
            fe.grow(c, n - std::popcount(c));
        }

    std::vector<std::vector<int>> perms;
    for (int r = 0; r < n; ++r) {
        std::vector<int> rot(n), ref(n);
        for (int i = 0; i < n; ++i) {
            rot[i] = (i + r) % n;
            ref[i] = ((r - i) % n + n) % n;
        }
        perms.push_back(rot);
        perms.push_back(ref);
    }
    auto remap = [&](std::uint32_t s, const std::vector<int>& p) {
        std::uint32_t out = 0;
        for (int i = 0; i < n; ++i)
            if (s >> i & 1) out |= 1u << p[i];
        return out;
    };
    std::set<std::vector<std::uint32_t>> canon;
    for (const auto& fam : raw) {
        std::vector<std::uint32_t> best;
        for (const auto& p : perms) {
            std::vector<std::uint32_t> mapped;
            for (std::uint32_t s : fam) mapped.push_back(remap(s, p));
            std::sort(mapped.begin(), mapped.end());
            if (best.empty() || mapped < best) best = mapped;
        }
        canon.insert(best);
    }

    std::vector<StructureGraph> out;
    for (const auto& fam : canon) {
        StructureGraph g;
        g.n_v = n;
        g.n_u = static_cast<int>(fam.size());
        for (int i = 0; i < n; ++i) g.h_edges.push_back(norm_edge(i, (i + 1) % n));
        std::sort(g.h_edges.begin(), g.h_edges.end());
        for (std::size_t idx = 0; idx < fam.size(); ++idx)
            for (int v = 0; v < n; ++v)
                if (fam[idx] >> v & 1) g.e_edges.push_back({v, n + static_cast<int>(idx)});
        std::sort(g.e_edges.begin(), g.e_edges.end());
        validate_structure(g);
        out.push_back(std::move(g));
    }
    return out;
}

SweepOutcome verify_conjecture_sweep(int max_v, int max_u, std::int64_t budget_ms) {
    SweepOutcome out;
    for (int n = 3; n <= max_v; ++n) {
        for (const auto& inst : conjecture_instances(n, max_u)) {
            auto t0 = std::chrono::steady_clock::now();
            auto wit = find_sec_ham(inst, {}, budget_ms);
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            nlohmann::json line;
            line["n_v"] = inst.n_v;
            line["n_u"] = inst.n_u;
            auto groups = nlohmann::json::array();
            for (int u = 0; u < inst.n_u; ++u) {
                auto grp = nlohmann::json::array();
                for (const auto& e : inst.e_edges)
                    if (e.second == inst.n_v + u) grp.push_back(e.first);
                groups.push_back(grp);
            }
            line["groups"] = groups;
            if (wit)
                line["witness"] = wit->nodes;
            else
                line["witness"] = nullptr;
            line["millis"] = ms;
            out.report_lines.push_back(line.dump());
            ++out.instances;
            if (!wit) ++out.counterexamples;
        }
    }
    return out;
}

namespace {

// Smallest adjacency encoding over all relabelings; equal keys mean
// isomorphic graphs, so this is an exact canonical form.  The prefix is
// re-compared against the current best at every step: best only ever
// shrinks, so a greater prefix can never recover.
struct CanonSearch {
    int n = 0;
    std::vector<std::vector<char>> a;
    std::vector<int> perm;
    std::vector<char> used;
    std::vector<unsigned char> bits, best;
    bool have_best = false;

    void rec(int depth) {
        if (depth == n) {
            if (!have_best || bits < best) {
                best = bits;
                have_best = true;
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            std::size_t mark = bits.size();
            for (int j = 0; j < depth; ++j) bits.push_back(a[v][perm[j]]);
            bool dead = false;
            if (have_best) {
                for (std::size_t k = 0; k < bits.size(); ++k) {
                    if (bits[k] != best[k]) {
                        dead = bits[k] > best[k];
                        break;
                    }
                }
            }
            if (!dead) {
                used[v] = 1;
                perm[depth] = v;
                rec(depth + 1);
                used[v] = 0;
            }
            bits.resize(mark);
        }
    }
};

std::vector<unsigned char> graph_key(int n, const std::vector<Edge>& edges) {
    CanonSearch cs;
    cs.n = n;
    cs.a.assign(n, std::vector<char>(n, 0));
    cs.perm.assign(n, 0);
    cs.used.assign(n, 0);
    for (const auto& e : edges) cs.a[e.first][e.second] = cs.a[e.second][e.first] = 1;
    cs.rec(0);
    return cs.best;
}

}  // namespace

std::vector<std::vector<Edge>> cubic_ham_graphs(int n) {
    if (n < 4 || n % 2 != 0) throw input_error("cubic graphs need an even node count, at least four");
    std::vector<Edge> cycle;
    for (int i = 0; i < n; ++i) cycle.push_back(norm_edge(i, (i + 1) % n));
    std::sort(cycle.begin(), cycle.end());

    std::map<std::vector<unsigned char>, std::vector<Edge>> classes;
    std::vector<int> mate(n, -1);
    std::vector<Edge> chords;
    auto is_cycle_edge = [&](int i, int j) { return j - i == 1 || (i == 0 && j == n - 1); };
    auto rec = [&](auto&& self) -> void {
        int i = 0;
        while (i < n && mate[i] >= 0) ++i;
        if (i == n) {
            auto edges = cycle;
            edges.insert(edges.end(), chords.begin(), chords.end());
            std::sort(edges.begin(), edges.end());
            classes.emplace(graph_key(n, edges), edges);
            return;
        }
        for (int j = i + 1; j < n; ++j) {
            if (mate[j] >= 0 || is_cycle_edge(i, j)) continue;
            mate[i] = j;
            mate[j] = i;
            chords.push_back({i, j});
            self(self);
            chords.pop_back();
            mate[i] = mate[j] = -1;
        }
    };
    rec(rec);

    std::vector<std::vector<Edge>> out;
    for (auto& [key, edges] : classes) out.push_back(std::move(edges));
    return out;
}

}  // namespace topo
