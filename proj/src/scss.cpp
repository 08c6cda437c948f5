#include "topo/scss.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "topo/errors.hpp"

namespace topo {

namespace {

using Arc = std::pair<int, int>;

void check_sym(const DiGraph& g) {
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u])
            if (!g.has_arc(v, u)) throw input_error("arcs must come in opposite pairs");
    if (!is_strongly_connected(g)) throw input_error("graph must be strongly connected");
}

}  // namespace

Rational scss_bounded_ratio(int k) {
    if (k < 4) throw input_error("cycle threshold must be at least four");
    return Rational(3 * k - 2, 2 * k);
}

SymDigraph make_sym(const DiGraph& g) {
    check_sym(g);
    return SymDigraph{g};
}

SymDigraph sym_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    DiGraph g(n);
    for (const auto& e : edges) {
        g.add_arc(e.first, e.second);
        g.add_arc(e.second, e.first);
    }
    return make_sym(g);
}

namespace {

struct CycleSearch {
    const DiGraph& g;
    int cap;  // 0: unbounded
    int anchor = 0;
    std::vector<char> onpath;
    std::vector<int> path;
    std::vector<int> best;
    bool done = false;

    void dfs(int x) {
        if (done) return;
        for (int y : g.adj[x]) {
            if (y == anchor) {
                if (path.size() >= 2 && path.size() > best.size()) {
                    best = path;
                    if (cap > 0 && static_cast<int>(best.size()) >= cap) {
                        done = true;
                        return;
                    }
                }
                continue;
            }
            if (y < anchor || onpath[y]) continue;
            if (cap > 0 && static_cast<int>(path.size()) >= cap) continue;
            onpath[y] = 1;
            path.push_back(y);
            dfs(y);
            path.pop_back();
            onpath[y] = 0;
            if (done) return;
        }
    }
};

}  // namespace

std::vector<int> longest_cycle(const DiGraph& g, int cap) {
    if (g.n == 0) throw input_error("empty graph");
    CycleSearch cs{g, cap, 0, std::vector<char>(g.n, 0), {}, {}, false};
    for (int a = 0; a < g.n && !cs.done; ++a) {
        // every node usable from this anchor upward
        if (g.n - a <= static_cast<int>(cs.best.size())) break;
        cs.anchor = a;
        cs.path = {a};
        cs.onpath.assign(g.n, 0);
        cs.onpath[a] = 1;
        cs.dfs(a);
    }
    return cs.best;
}

std::vector<std::pair<int, int>> base_case_solve(int n, const std::vector<Arc>& arcs) {
    if (n <= 0) throw input_error("empty graph");
    std::set<Arc> seen;
    for (const auto& a : arcs) {
        if (a.first < 0 || a.second < 0 || a.first >= n || a.second >= n)
            throw input_error("arc endpoint out of range");
        if (a.first == a.second) throw input_error("self loop");
        if (!seen.insert(a).second) throw input_error("duplicate arc");
    }
    if (n == 1) return {};
    DiGraph g = digraph_from_arcs(n, arcs);
    auto lc = longest_cycle(g, 0);
    if (lc.size() > 3) {
        std::string msg = "the residue still has a long cycle:";
        for (int x : lc) msg += " " + std::to_string(x);
        throw input_error(msg);
    }
    if (!is_strongly_connected(g)) throw input_error("residue cannot be strongly connected");

    std::vector<Arc> pool(arcs);
    std::sort(pool.begin(), pool.end());
    int m = static_cast<int>(pool.size());
    std::vector<int> cnt_in(n, 0), cnt_out(n, 0);
    std::vector<int> chosen;
    std::vector<Arc> result;

    // plain combination scan, smallest count first, lexicographic within
    auto strong = [&]() {
        DiGraph h(n);
        for (int idx : chosen) h.add_arc(pool[idx].first, pool[idx].second);
        return is_strongly_connected(h);
    };
    auto pick = [&](auto&& self, int from, int left) -> bool {
        if (left == 0) return strong();
        int zi = 0, zo = 0;
        for (int v = 0; v < n; ++v) {
            if (cnt_in[v] == 0) ++zi;
            if (cnt_out[v] == 0) ++zo;
        }
        if (std::max(zi, zo) > left) return false;
        for (int idx = from; idx <= m - left; ++idx) {
            chosen.push_back(idx);
            ++cnt_out[pool[idx].first];
            ++cnt_in[pool[idx].second];
            if (self(self, idx + 1, left - 1)) return true;
            --cnt_out[pool[idx].first];
            --cnt_in[pool[idx].second];
            chosen.pop_back();
        }
        return false;
    };
    for (int c = n; c <= m; ++c) {
        if (pick(pick, 0, c)) {
            for (int idx : chosen) result.push_back(pool[idx]);
            return result;
        }
    }
    throw contract_error("no arc subset strongly connects the residue");
}

ScssResult scss_approx(const SymDigraph& sg, int k) {
    if (k < 4) throw input_error("cycle threshold must be at least four");
    const DiGraph& g0 = sg.g;
    check_sym(g0);

    std::vector<std::vector<int>> groups;
    for (int v = 0; v < g0.n; ++v) groups.push_back({v});
    std::vector<int> group_of(g0.n);

    ScssResult res;
    std::set<Arc> kept;

    for (;;) {
        int gc_n = static_cast<int>(groups.size());
        for (int gi = 0; gi < gc_n; ++gi)
            for (int v : groups[gi]) group_of[v] = gi;
        // group-level view plus the smallest witness arc for every hop
        std::map<Arc, Arc> prov;
        DiGraph gc(gc_n);
        for (const auto& a : g0.arcs()) {
            int gi = group_of[a.first], gj = group_of[a.second];
            if (gi == gj) continue;
            gc.add_arc(gi, gj);
            prov.emplace(Arc{gi, gj}, a);
        }
        auto lc = longest_cycle(gc, gc_n);
        if (lc.size() < 4) {
            if (gc_n > 1) {
                std::vector<Arc> residue;
                for (const auto& [hop, orig] : prov) residue.push_back(hop);
                auto picked = base_case_solve(gc_n, residue);
                for (const auto& hop : picked) {
                    res.base_arcs.push_back(prov.at(hop));
                    kept.insert(prov.at(hop));
                }
            }
            break;
        }
        ScssStep step;
        for (std::size_t i = 0; i < lc.size(); ++i) {
            step.cycle_nodes.push_back(groups[lc[i]].front());
            Arc hop{lc[i], lc[(i + 1) % lc.size()]};
            step.arcs.push_back(prov.at(hop));
            kept.insert(prov.at(hop));
        }
        res.steps.push_back(step);

        std::vector<std::vector<int>> next;
        std::vector<int> merged;
        std::set<int> in_cycle(lc.begin(), lc.end());
        for (int gi = 0; gi < gc_n; ++gi) {
            if (in_cycle.count(gi))
                merged.insert(merged.end(), groups[gi].begin(), groups[gi].end());
            else
                next.push_back(std::move(groups[gi]));
        }
        std::sort(merged.begin(), merged.end());
        next.push_back(std::move(merged));
        std::sort(next.begin(), next.end());
        groups = std::move(next);
    }

    res.kept.assign(kept.begin(), kept.end());
    DiGraph check(g0.n);
    for (const auto& a : res.kept) {
        if (!g0.has_arc(a.first, a.second)) throw contract_error("kept an arc the input lacks");
        check.add_arc(a.first, a.second);
    }
    if (!is_strongly_connected(check))
        throw contract_error("kept arcs do not strongly connect the graph");
    return res;
}

std::string scss_result_to_json(const ScssResult& r) {
    nlohmann::json j;
    auto arcs_json = [](const std::vector<Arc>& as) {
        auto arr = nlohmann::json::array();
        for (const auto& a : as) arr.push_back({a.first, a.second});
        return arr;
    };
    j["kept"] = arcs_json(r.kept);
    auto steps = nlohmann::json::array();
    for (const auto& s : r.steps) {
        nlohmann::json js;
        js["cycle"] = s.cycle_nodes;
        js["arcs"] = arcs_json(s.arcs);
        steps.push_back(js);
    }
    j["steps"] = steps;
    j["base_arcs"] = arcs_json(r.base_arcs);
    return j.dump(2) + "\n";
}

}  // namespace topo
