#include "topo/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "topo/errors.hpp"

namespace topo {

void DiGraph::add_arc(int u, int v) {
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw input_error("arc (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v) throw input_error("self-loop at node " + std::to_string(u));
    auto& out = adj[u];
    auto it = std::lower_bound(out.begin(), out.end(), v);
    if (it == out.end() || *it != v) out.insert(it, v);
}

bool DiGraph::has_arc(int u, int v) const {
    if (u < 0 || u >= n) return false;
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

std::vector<std::pair<int, int>> DiGraph::arcs() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u)
        for (int v : adj[u]) out.emplace_back(u, v);
    return out;
}

int DiGraph::arc_count() const {
    int c = 0;
    for (const auto& out : adj) c += static_cast<int>(out.size());
    return c;
}

DiGraph digraph_from_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
    if (n < 0) throw input_error("negative node count");
    DiGraph g(n);
    for (auto [u, v] : arcs) g.add_arc(u, v);
    return g;
}

namespace {

// Iterative Tarjan.  Raw component ids come out in discovery order; the
// caller below renumbers them by smallest contained node.
struct TarjanState {
    const DiGraph& g;
    std::vector<int> index, low, raw_comp;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int next_index = 0;
    int comp_count = 0;

    explicit TarjanState(const DiGraph& g)
        : g(g), index(g.n, -1), low(g.n, 0), raw_comp(g.n, -1), on_stack(g.n, false) {}

    void run(int root) {
        struct Frame {
            int v;
            std::size_t child;
        };
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& f = frames.back();
            if (f.child < g.adj[f.v].size()) {
                int w = g.adj[f.v][f.child++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        raw_comp[w] = comp_count;
                        if (w == v) break;
                    }
                    ++comp_count;
                }
            }
        }
    }
};

}  // namespace

SccPartition scc(const DiGraph& g) {
    TarjanState t(g);
    for (int v = 0; v < g.n; ++v)
        if (t.index[v] < 0) t.run(v);

    // Renumber components by their smallest node id.
    std::vector<int> min_node(t.comp_count, g.n);
    for (int v = 0; v < g.n; ++v) min_node[t.raw_comp[v]] = std::min(min_node[t.raw_comp[v]], v);
    std::vector<int> order(t.comp_count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return min_node[a] < min_node[b]; });
    std::vector<int> renum(t.comp_count);
    for (int i = 0; i < t.comp_count; ++i) renum[order[i]] = i;

    SccPartition p;
    p.comp_of.resize(g.n);
    p.comps.assign(t.comp_count, {});
    for (int v = 0; v < g.n; ++v) {
        int c = renum[t.raw_comp[v]];
        p.comp_of[v] = c;
        p.comps[c].push_back(v);  // ascending because v ascends
    }
    return p;
}

bool is_strongly_connected(const DiGraph& g) {
    if (g.n == 0) throw input_error("empty graph has no connectivity");
    return scc(g).count() == 1;
}

DiGraph condensation(const DiGraph& g, const SccPartition& p) {
    DiGraph c(p.count());
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u])
            if (p.comp_of[u] != p.comp_of[v]) c.add_arc(p.comp_of[u], p.comp_of[v]);
    return c;
}

std::string to_dot(const DiGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (int v = 0; v < g.n; ++v) os << "  n" << v << ";\n";
    for (int u = 0; u < g.n; ++u)
        for (int v : g.adj[u]) os << "  n" << u << " -> n" << v << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace topo
