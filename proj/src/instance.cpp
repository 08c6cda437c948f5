#include "topo/instance.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "topo/errors.hpp"

namespace topo {

using nlohmann::json;

void validate_instance(const Instance& inst) {
    if (inst.points.empty()) throw input_error("instance has no points");
    if (inst.rl_sq <= 0) throw input_error("rl_sq must be positive");
    if (inst.rl_sq > inst.rh_sq) throw input_error("rl_sq exceeds rh_sq");
    for (std::size_t i = 0; i < inst.points.size(); ++i)
        for (std::size_t j = i + 1; j < inst.points.size(); ++j)
            if (inst.points[i] == inst.points[j])
                throw input_error("points " + std::to_string(i) + " and " + std::to_string(j) +
                                  " coincide");
    PowerAssignment all;
    for (int v = 0; v < inst.size(); ++v) all.high.push_back(v);
    if (!is_strongly_connected(induce_graph(inst, all)))
        throw input_error("instance infeasible: all-high graph is not strongly connected");
}

bool PowerAssignment::contains(int v) const {
    return std::binary_search(high.begin(), high.end(), v);
}

void PowerAssignment::add(int v) {
    auto it = std::lower_bound(high.begin(), high.end(), v);
    if (it == high.end() || *it != v) high.insert(it, v);
}

PowerAssignment make_assignment(std::vector<int> high) {
    std::sort(high.begin(), high.end());
    high.erase(std::unique(high.begin(), high.end()), high.end());
    PowerAssignment r;
    r.high = std::move(high);
    return r;
}

DiGraph induce_graph(const Instance& inst, const PowerAssignment& r) {
    int n = inst.size();
    DiGraph g(n);
    for (int u = 0; u < n; ++u) {
        std::int64_t radius = r.contains(u) ? inst.rh_sq : inst.rl_sq;
        for (int v = 0; v < n; ++v)
            if (u != v && dist_sq(inst.points[u], inst.points[v]) <= radius) g.add_arc(u, v);
    }
    return g;
}

bool ComponentGraph::adjacent(int a, int b) const {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

ComponentGraph component_graph(const Instance& inst, const PowerAssignment& r) {
    ComponentGraph cg;
    cg.part = scc(induce_graph(inst, r));
    int m = cg.part.count();
    cg.adj.assign(m, {});
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            bool close = false;
            for (int u : cg.part.comps[a]) {
                for (int v : cg.part.comps[b])
                    if (dist_sq(inst.points[u], inst.points[v]) <= inst.rh_sq) {
                        close = true;
                        break;
                    }
                if (close) break;
            }
            if (close) {
                cg.adj[a].push_back(b);
                cg.adj[b].push_back(a);
                cg.edges.emplace_back(a, b);
            }
        }
    }
    for (auto& nb : cg.adj) std::sort(nb.begin(), nb.end());
    return cg;
}

std::string component_graph_to_dot(const ComponentGraph& cg, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (int c = 0; c < cg.count(); ++c) {
        os << "  c" << c << " [label=\"{";
        for (std::size_t i = 0; i < cg.part.comps[c].size(); ++i) {
            if (i) os << ",";
            os << cg.part.comps[c][i];
        }
        os << "}\"];\n";
    }
    for (auto [a, b] : cg.edges) os << "  c" << a << " -- c" << b << ";\n";
    os << "}\n";
    return os.str();
}

namespace {

// Unbiased draw in [0, bound] from a fixed-sequence engine, so generation is
// reproducible across platforms.
std::int64_t uniform_below(std::mt19937_64& rng, std::int64_t bound) {
    std::uint64_t range = static_cast<std::uint64_t>(bound) + 1;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % range);
}

}  // namespace

Instance generate_instance(int n, std::int64_t extent, std::int64_t rl_sq, std::int64_t rh_sq,
                           std::uint64_t seed, int max_attempts) {
    if (n <= 0) throw input_error("node count must be positive");
    if (extent < 0) throw input_error("extent must be nonnegative");
    if (rl_sq <= 0 || rl_sq > rh_sq) throw input_error("invalid radii");
    if (static_cast<std::int64_t>(n) > (extent + 1) * (extent + 1))
        throw input_error("grid too small for " + std::to_string(n) + " distinct points");

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Instance inst;
        inst.rl_sq = rl_sq;
        inst.rh_sq = rh_sq;
        std::set<std::pair<std::int64_t, std::int64_t>> seen;
        while (static_cast<int>(inst.points.size()) < n) {
            Point p{uniform_below(rng, extent), uniform_below(rng, extent)};
            if (seen.insert({p.x, p.y}).second) inst.points.push_back(p);
        }
        PowerAssignment all;
        for (int v = 0; v < n; ++v) all.high.push_back(v);
        if (is_strongly_connected(induce_graph(inst, all))) return inst;
    }
    throw generation_error("no feasible point set after " + std::to_string(max_attempts) +
                           " attempts (retry budget exhausted)");
}

namespace {

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("bad JSON: ") + e.what());
    }
}

const json& need(const json& j, const char* field) {
    if (!j.contains(field)) throw parse_error(std::string("missing field \"") + field + "\"");
    return j.at(field);
}

std::int64_t int_field(const json& j, const char* field) {
    const json& v = need(j, field);
    if (!v.is_number_integer()) throw parse_error(std::string("field \"") + field + "\" must be an integer");
    return v.get<std::int64_t>();
}

}  // namespace

Instance instance_from_json(const std::string& text) {
    json j = parse_text(text);
    Instance inst;
    const json& pts = need(j, "points");
    if (!pts.is_array()) throw parse_error("field \"points\" must be an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const json& p = pts[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw parse_error("field \"points[" + std::to_string(i) + "]\" must be [x,y] integers");
        inst.points.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
    }
    inst.rl_sq = int_field(j, "rl_sq");
    inst.rh_sq = int_field(j, "rh_sq");
    validate_instance(inst);
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    json pts = json::array();
    for (const Point& p : inst.points) pts.push_back({p.x, p.y});
    json j{{"points", pts}, {"rl_sq", inst.rl_sq}, {"rh_sq", inst.rh_sq}};
    return j.dump() + "\n";
}

PowerAssignment assignment_from_json(const std::string& text, int n) {
    json j = parse_text(text);
    const json& hi = need(j, "high");
    if (!hi.is_array()) throw parse_error("field \"high\" must be an array");
    std::vector<int> ids;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        if (!hi[i].is_number_integer())
            throw parse_error("field \"high[" + std::to_string(i) + "]\" must be an integer");
        int v = hi[i].get<int>();
        if (v < 0 || v >= n)
            throw parse_error("field \"high[" + std::to_string(i) + "]\" out of range");
        ids.push_back(v);
    }
    return make_assignment(std::move(ids));
}

std::string assignment_to_json(const PowerAssignment& r) {
    json j{{"high", r.high}};
    return j.dump() + "\n";
}

DiGraph digraph_from_json(const std::string& text) {
    json j = parse_text(text);
    std::int64_t n = int_field(j, "n");
    if (n < 0) throw parse_error("field \"n\" must be nonnegative");
    const json& arcs = need(j, "arcs");
    if (!arcs.is_array()) throw parse_error("field \"arcs\" must be an array");
    DiGraph g(static_cast<int>(n));
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const json& a = arcs[i];
        if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer())
            throw parse_error("field \"arcs[" + std::to_string(i) + "]\" must be [u,v] integers");
        int u = a[0].get<int>(), v = a[1].get<int>();
        if (u < 0 || u >= n || v < 0 || v >= n || u == v)
            throw parse_error("field \"arcs[" + std::to_string(i) + "]\" is not a valid arc");
        g.add_arc(u, v);
    }
    return g;
}

std::string digraph_to_json(const DiGraph& g) {
    json arcs = json::array();
    for (auto [u, v] : g.arcs()) arcs.push_back({u, v});
    json j{{"n", g.n}, {"arcs", arcs}};
    return j.dump() + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write " + path);
    out << content;
}

}  // namespace topo
