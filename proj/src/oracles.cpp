#include "topo/oracles.hpp"

#include <algorithm>

#include "topo/deadline.hpp"
#include "topo/errors.hpp"

namespace topo {

namespace {

bool strongly_connected_with(const Instance& inst, const PowerAssignment& r) {
    return is_strongly_connected(induce_graph(inst, r));
}

}  // namespace

PowerAssignment min_addition(const Instance& inst, const PowerAssignment& base,
                             std::int64_t budget_ms) {
    Deadline deadline = Deadline::after_ms(budget_ms);
    int n = inst.size();
    for (int v : base.high)
        if (v < 0 || v >= n) throw input_error("base assignment mentions an unknown node");

    if (strongly_connected_with(inst, base)) return base;

    std::vector<int> candidates;
    for (int v = 0; v < n; ++v)
        if (!base.contains(v)) candidates.push_back(v);

    int m = static_cast<int>(candidates.size());
    for (int c = 1; c <= m; ++c) {
        std::vector<int> combo(c);
        for (int t = 0; t < c; ++t) combo[t] = t;
        while (true) {
            deadline.check("optimal assignment search ran out of time");
            PowerAssignment r = base;
            for (int t : combo) r.add(candidates[t]);
            if (strongly_connected_with(inst, r)) return r;
            int t = c - 1;
            while (t >= 0 && combo[t] == m - c + t) --t;
            if (t < 0) break;
            ++combo[t];
            for (int q = t + 1; q < c; ++q) combo[q] = combo[q - 1] + 1;
        }
    }
    throw input_error("no assignment connects the instance; it should not have validated");
}

PowerAssignment dpa_opt(const Instance& inst, std::int64_t budget_ms) {
    return min_addition(inst, PowerAssignment{}, budget_ms);
}

namespace {

struct ArcSearch {
    const DiGraph& g;
    std::vector<std::pair<int, int>> arcs;
    int n, m, target = 0;
    // suffix_out[pos][v]: arcs at index >= pos leaving v (suffix_in: entering)
    std::vector<std::vector<int>> suffix_out, suffix_in;
    std::vector<int> cnt_out, cnt_in;
    int zero_out, zero_in;
    std::vector<int> chosen;
    Deadline deadline;
    long calls = 0;

    ArcSearch(const DiGraph& graph, Deadline dl)
        : g(graph), arcs(graph.arcs()), n(graph.n), m(static_cast<int>(arcs.size())),
          suffix_out(m + 1, std::vector<int>(n, 0)), suffix_in(m + 1, std::vector<int>(n, 0)),
          cnt_out(n, 0), cnt_in(n, 0), zero_out(n), zero_in(n), deadline(dl) {
        for (int pos = m - 1; pos >= 0; --pos) {
            suffix_out[pos] = suffix_out[pos + 1];
            suffix_in[pos] = suffix_in[pos + 1];
            ++suffix_out[pos][arcs[pos].first];
            ++suffix_in[pos][arcs[pos].second];
        }
    }

    bool chosen_is_strong() const {
        DiGraph h(n);
        for (int i : chosen) h.add_arc(arcs[i].first, arcs[i].second);
        return is_strongly_connected(h);
    }

    bool closure_is_strong(int pos) const {
        DiGraph h(n);
        for (int i : chosen) h.add_arc(arcs[i].first, arcs[i].second);
        for (int i = pos; i < m; ++i) h.add_arc(arcs[i].first, arcs[i].second);
        return is_strongly_connected(h);
    }

    bool dfs(int pos) {
        if ((++calls & 1023) == 0) deadline.check("minimum arc set search ran out of time");
        int picked = static_cast<int>(chosen.size());
        if (picked == target) return chosen_is_strong();
        if (pos == m || m - pos < target - picked) return false;
        if (std::max(zero_out, zero_in) > target - picked) return false;
        for (int v = 0; v < n; ++v) {
            if (cnt_out[v] == 0 && suffix_out[pos][v] == 0) return false;
            if (cnt_in[v] == 0 && suffix_in[pos][v] == 0) return false;
        }
        if (!closure_is_strong(pos)) return false;

        auto [u, v] = arcs[pos];
        chosen.push_back(pos);
        if (cnt_out[u]++ == 0) --zero_out;
        if (cnt_in[v]++ == 0) --zero_in;
        if (dfs(pos + 1)) return true;
        if (--cnt_out[u] == 0) ++zero_out;
        if (--cnt_in[v] == 0) ++zero_in;
        chosen.pop_back();
        return dfs(pos + 1);
    }
};

}  // namespace

std::vector<std::pair<int, int>> scss_opt(const DiGraph& g, std::int64_t budget_ms) {
    if (g.n == 0) throw input_error("empty graph");
    if (g.n == 1) return {};
    if (!is_strongly_connected(g)) throw input_error("arc minimization needs a strongly connected graph");

    ArcSearch search(g, Deadline::after_ms(budget_ms));
    for (int c = g.n; c <= search.m; ++c) {
        search.target = c;
        search.chosen.clear();
        if (search.dfs(0)) {
            std::vector<std::pair<int, int>> out;
            for (int i : search.chosen) out.push_back(search.arcs[i]);
            return out;
        }
    }
    throw input_error("no strongly connected arc subset found; input was inconsistent");
}

namespace {

struct CycleEnum {
    int n;
    std::vector<std::vector<int>> nb;
    std::vector<std::vector<char>> has;
    std::vector<std::pair<int, int>> required;
    std::vector<std::vector<int>> out;
    std::vector<char> onpath;
    std::vector<int> path;
    int anchor = 0;
    bool ham_only = false;

    void record() {
        if (ham_only && static_cast<int>(path.size()) != n) return;
        for (auto [a, b] : required) {
            bool found = false;
            for (std::size_t i = 0; i < path.size() && !found; ++i) {
                int u = path[i], v = path[(i + 1) % path.size()];
                found = (u == a && v == b) || (u == b && v == a);
            }
            if (!found) return;
        }
        out.push_back(path);
    }

    void dfs(int v) {
        for (int w : nb[v]) {
            if (w == anchor && path.size() >= 3 && path[1] < path.back()) record();
            if (w <= anchor || onpath[w]) continue;
            onpath[w] = 1;
            path.push_back(w);
            dfs(w);
            path.pop_back();
            onpath[w] = 0;
        }
    }
};

std::vector<std::vector<int>> run_cycle_enum(int n, const std::vector<std::pair<int, int>>& edges,
                                             const std::vector<std::pair<int, int>>& required,
                                             bool ham_only) {
    CycleEnum ce;
    ce.n = n;
    ce.nb.assign(n, {});
    ce.has.assign(n, std::vector<char>(n, 0));
    ce.ham_only = ham_only;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw input_error("bad edge");
        if (ce.has[u][v]) continue;
        ce.has[u][v] = ce.has[v][u] = 1;
        ce.nb[u].push_back(v);
        ce.nb[v].push_back(u);
    }
    for (auto& list : ce.nb) std::sort(list.begin(), list.end());
    for (auto [u, v] : required)
        if (u < 0 || v < 0 || u >= n || v >= n || !ce.has[u][v])
            throw input_error("required edge is not in the graph");
    ce.required = required;

    int max_anchor = n - 1;
    for (auto [u, v] : required) max_anchor = std::min({max_anchor, u, v});
    if (ham_only) max_anchor = std::min(max_anchor, 0);

    ce.onpath.assign(n, 0);
    for (ce.anchor = 0; ce.anchor <= max_anchor; ++ce.anchor) {
        ce.path = {ce.anchor};
        ce.onpath[ce.anchor] = 1;
        ce.dfs(ce.anchor);
        ce.onpath[ce.anchor] = 0;
    }
    std::sort(ce.out.begin(), ce.out.end());
    return ce.out;
}

}  // namespace

std::vector<std::vector<int>> enumerate_cycles(int n,
                                               const std::vector<std::pair<int, int>>& edges,
                                               const std::vector<std::pair<int, int>>& required) {
    return run_cycle_enum(n, edges, required, false);
}

std::vector<std::vector<int>> enumerate_ham_cycles(int n,
                                                   const std::vector<std::pair<int, int>>& edges,
                                                   const std::vector<std::pair<int, int>>& required) {
    return run_cycle_enum(n, edges, required, true);
}

}  // namespace topo
