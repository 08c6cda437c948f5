#include "topo/dpa.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include <json.hpp>

#include "topo/errors.hpp"
#include "topo/geom.hpp"

namespace topo {

Rational ratio_bound(int k) {
    if (k < 2) throw input_error("ratio is defined for thresholds of at least two");
    return Rational(3 * k - 2, 2 * k - 2);
}

namespace {

int ceil_half(int k) { return (k + 1) / 2; }

bool covers_comp(const Instance& inst, int v, const std::vector<int>& comp_nodes) {
    for (int w : comp_nodes)
        if (dist_sq(inst.points[v], inst.points[w]) <= inst.rh_sq) return true;
    return false;
}

bool has_directed_triangle(const ContractibleStructure& cs) {
    if (cs.base.size() != 3) return false;
    auto has = [&](int x, int y) {
        return std::binary_search(cs.arcs.begin(), cs.arcs.end(),
                                  std::make_pair(cs.base.comps[x], cs.base.comps[y]));
    };
    return (has(0, 1) && has(1, 2) && has(2, 0)) || (has(0, 2) && has(2, 1) && has(1, 0));
}

// First (by component triple, then representative tuple) three-component
// contracted set whose reach arcs run all the way around in one direction.
std::optional<FoundSet> find_triangle_set(const Instance& inst, const PowerAssignment& r) {
    SccPartition part = scc(induce_graph(inst, r));
    int m = part.count();
    if (m < 3) return std::nullopt;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                std::vector<int> comps{a, b, c};
                std::vector<int> pick(3, 0);
                while (true) {
                    std::vector<int> reps{part.comps[a][pick[0]], part.comps[b][pick[1]],
                                          part.comps[c][pick[2]]};
                    if (is_contracted_set(inst, r, part, comps, reps)) {
                        ContractibleStructure cs =
                            induced_structure(inst, r, ContractedSet{comps, reps});
                        if (has_directed_triangle(cs)) {
                            FoundSet f;
                            f.set = ContractedSet{comps, reps};
                            f.structure = cs;
                            f.leaf_count = static_cast<int>(leaves(inst, r, cs).size());
                            f.cls = classify(cs, f.leaf_count);
                            return f;
                        }
                    }
                    int t = 2;
                    while (t >= 0 &&
                           pick[t] + 1 >= static_cast<int>(part.comps[comps[t]].size())) {
                        pick[t] = 0;
                        --t;
                    }
                    if (t < 0) break;
                    ++pick[t];
                }
            }
    return std::nullopt;
}

int live_comp_count(const Instance& inst, const PowerAssignment& r) {
    return scc(induce_graph(inst, r)).count();
}

// Endgame shared between the full solver and the standalone entry point:
// triangle merges, then the exact per-component tree completion.
struct Endgame {
    const Instance& inst;
    PowerAssignment& r;
    RunTrace* trace;
    std::vector<int> new_high;
    std::vector<int> cover_nodes;

    void assert_no_big_sets() {
        int m = live_comp_count(inst, r);
        for (int s = 4; s <= m; ++s)
            if (find_contracted_set(inst, r, SetQuery::exact(s)))
                throw contract_error("a mergeable family of " + std::to_string(s) +
                                     " components remains before the endgame");
    }

    void triangles() {
        while (auto f = find_triangle_set(inst, r)) {
            int before = live_comp_count(inst, r);
            for (int v : f->set.reps) {
                if (!r.contains(v)) new_high.push_back(v);
                r.add(v);
            }
            int after = live_comp_count(inst, r);
            if (trace) {
                ContractionRecord rec;
                rec.stage = 3;
                rec.size = 3;
                rec.cls = f->cls;
                rec.leaf_count = f->leaf_count;
                rec.comps = f->set.comps;
                rec.reps = f->set.reps;
                rec.comps_before = before;
                rec.comps_after = after;
                trace->contractions.push_back(std::move(rec));
            }
        }
    }

    void tree_cover() {
        ComponentGraph cg = component_graph(inst, r);
        int m = cg.count();
        if (m == 1) return;
        if (static_cast<int>(cg.edges.size()) != m - 1)
            throw contract_error("component graph still has a cycle after the merges");
        std::vector<char> seen(m, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int nb : cg.adj[c])
                if (!seen[nb]) {
                    seen[nb] = 1;
                    stack.push_back(nb);
                }
        }
        if (std::count(seen.begin(), seen.end(), 1) != m)
            throw contract_error("component graph fell apart; the instance cannot be completed");

        const SccPartition& part = cg.part;
        std::vector<int> added;
        for (int c = 0; c < m; ++c) {
            std::vector<int> elems;
            for (int nb : cg.adj[c]) {
                bool crossed = false;
                for (int u : part.comps[c])
                    if (r.contains(u) && covers_comp(inst, u, part.comps[nb])) {
                        crossed = true;
                        break;
                    }
                if (!crossed) elems.push_back(nb);
            }
            if (elems.empty()) continue;
            std::vector<std::pair<int, std::vector<int>>> cands;
            for (int u : part.comps[c]) {
                if (r.contains(u)) continue;
                std::vector<int> cov;
                for (std::size_t idx = 0; idx < elems.size(); ++idx)
                    if (covers_comp(inst, u, part.comps[elems[idx]]))
                        cov.push_back(static_cast<int>(idx));
                if (!cov.empty()) cands.emplace_back(u, std::move(cov));
            }
            std::vector<int> chosen =
                two_set_cover_solve(static_cast<int>(elems.size()), cands);
            added.insert(added.end(), chosen.begin(), chosen.end());
        }
        std::sort(added.begin(), added.end());
        cover_nodes = added;
        for (int v : added) {
            r.add(v);
            new_high.push_back(v);
        }
        if (!is_strongly_connected(induce_graph(inst, r)))
            throw contract_error("completion did not strongly connect the graph");
    }

    void run() {
        assert_no_big_sets();
        triangles();
        tree_cover();
    }
};

struct Solver {
    const Instance& inst;
    int k;
    PowerAssignment r;
    RunTrace trace;

    void snapshot(int stage) {
        trace.stages.push_back({stage, live_comp_count(inst, r), r.high});
    }

    void contract(int stage, const FoundSet& f) {
        ContractionRecord rec;
        rec.stage = stage;
        rec.size = f.set.size();
        rec.cls = f.cls;
        rec.leaf_count = f.leaf_count;
        rec.comps = f.set.comps;
        rec.reps = f.set.reps;
        rec.comps_before = live_comp_count(inst, r);
        for (int v : f.set.reps) r.add(v);
        rec.comps_after = live_comp_count(inst, r);
        trace.contractions.push_back(std::move(rec));
    }

    void phase1() {
        snapshot(k);
        while (auto f = find_contracted_set(inst, r, SetQuery::at_least(k))) contract(k, *f);
    }

    void phase2() {
        for (int i = k - 1; i >= 4; --i) {
            snapshot(i);
            while (find_contracted_set(inst, r, SetQuery::exact(i))) {
                std::optional<FoundSet> f;
                for (int j = i; j >= 4 && !f; --j)
                    f = find_contracted_set(inst, r,
                                            SetQuery::with_class(StructureClass::TwoPlusLeaves, j));
                if (!f) {
                    int jmin = i > ceil_half(k) ? ceil_half(k) : i;
                    for (int j = i; j >= jmin && !f; --j)
                        f = find_contracted_set(inst, r,
                                                SetQuery::with_class(StructureClass::OneLeaf, j));
                }
                if (!f)
                    f = find_contracted_set(inst, r,
                                            SetQuery::with_class(StructureClass::SimpleCycle, i));
                if (!f)
                    f = find_contracted_set(
                        inst, r, SetQuery::with_class(StructureClass::CombinedCycles, i));
                if (!f)
                    throw contract_error("a mergeable family exists but no search shape matched");
                contract(i, *f);
            }
        }
    }
};

}  // namespace

std::vector<int> two_set_cover_solve(
    int element_count, const std::vector<std::pair<int, std::vector<int>>>& candidates) {
    if (element_count < 0 || element_count > 24)
        throw input_error("unreasonable element count for the cover");
    int e = element_count;
    if (e == 0) return {};

    std::vector<int> single(e, -1);
    std::vector<std::vector<int>> pairnode(e, std::vector<int>(e, -1));
    for (const auto& [node, raw] : candidates) {
        std::vector<int> cov = raw;
        std::sort(cov.begin(), cov.end());
        cov.erase(std::unique(cov.begin(), cov.end()), cov.end());
        for (int a : cov)
            if (a < 0 || a >= e) throw input_error("candidate covers an unknown element");
        if (cov.size() > 2)
            throw contract_error("a candidate covers three elements; the shape bound is broken");
        for (int a : cov)
            if (single[a] == -1 || node < single[a]) single[a] = node;
        if (cov.size() == 2) {
            int a = cov[0], b = cov[1];
            if (pairnode[a][b] == -1 || node < pairnode[a][b])
                pairnode[a][b] = pairnode[b][a] = node;
        }
    }
    for (int a = 0; a < e; ++a)
        if (single[a] == -1)
            throw contract_error("element " + std::to_string(a) + " has no covering candidate");

    // Most pairs that can be served together, over subsets of elements.
    int full = 1 << e;
    std::vector<int> best(full, 0);
    for (int mask = 1; mask < full; ++mask) {
        int a = std::countr_zero(static_cast<unsigned>(mask));
        int rest = mask & ~(1 << a);
        int v = best[rest];
        for (int b = a + 1; b < e; ++b)
            if ((mask >> b & 1) && pairnode[a][b] != -1)
                v = std::max(v, 1 + best[rest & ~(1 << b)]);
        best[mask] = v;
    }

    std::vector<int> out;
    int mask = full - 1;
    while (mask) {
        int a = std::countr_zero(static_cast<unsigned>(mask));
        int rest = mask & ~(1 << a);
        bool paired = false;
        for (int b = a + 1; b < e && !paired; ++b)
            if ((mask >> b & 1) && pairnode[a][b] != -1 &&
                1 + best[rest & ~(1 << b)] == best[mask]) {
                out.push_back(pairnode[a][b]);
                mask = rest & ~(1 << b);
                paired = true;
            }
        if (!paired) {
            out.push_back(single[a]);
            mask = rest;
        }
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw contract_error("cover reused a node; the candidate lists were inconsistent");
    if (static_cast<int>(out.size()) != e - best[full - 1])
        throw contract_error("cover size disagrees with the pairing count");
    return out;
}

std::vector<int> phase3_optimal(const Instance& inst, const PowerAssignment& start) {
    PowerAssignment r = start;
    Endgame eg{inst, r, nullptr, {}, {}};
    eg.run();
    std::sort(eg.new_high.begin(), eg.new_high.end());
    return eg.new_high;
}

DpaResult dpa_approx(const Instance& inst, int k) {
    if (k < 4) throw input_error("contraction threshold must be at least four");
    validate_instance(inst);
    Solver s{inst, k, {}, {}};
    s.trace.k = k;
    s.trace.n_nodes = inst.size();
    s.trace.comps_initial = live_comp_count(inst, s.r);
    s.phase1();
    s.phase2();
    s.snapshot(3);
    Endgame eg{inst, s.r, &s.trace, {}, {}};
    eg.run();
    s.trace.cover_nodes = eg.cover_nodes;
    s.trace.final_high = s.r.high;
    return {s.r, s.trace};
}

std::vector<std::string> audit_trace(const Instance& inst, const RunTrace& trace,
                                     const std::vector<int>& stage_opts) {
    std::vector<std::string> bad;
    auto complain = [&](std::string msg) { bad.push_back(std::move(msg)); };

    int k = trace.k;
    if (k < 4) {
        complain("trace threshold below four");
        return bad;
    }
    if (trace.n_nodes != inst.size()) complain("trace node count disagrees with the instance");

    std::vector<int> expect;
    for (int i = k; i >= 4; --i) expect.push_back(i);
    expect.push_back(3);
    if (trace.stages.size() != expect.size()) {
        complain("trace has " + std::to_string(trace.stages.size()) + " stage snapshots, expected " +
                 std::to_string(expect.size()));
        return bad;
    }
    for (std::size_t t = 0; t < expect.size(); ++t)
        if (trace.stages[t].stage != expect[t]) {
            complain("stage snapshots out of order");
            return bad;
        }

    PowerAssignment r;
    std::size_t ci = 0;
    for (std::size_t t = 0; t < expect.size(); ++t) {
        const StageStart& st = trace.stages[t];
        std::string stage_tag = "stage " + std::to_string(st.stage);
        if (live_comp_count(inst, r) != st.comps_at_start)
            complain(stage_tag + " snapshot has the wrong component count");
        if (r.high != st.high_at_start) complain(stage_tag + " snapshot has the wrong assignment");
        if (t == 0 && trace.comps_initial != st.comps_at_start)
            complain("initial component count disagrees with the first snapshot");

        int drop = 0;
        while (ci < trace.contractions.size() && trace.contractions[ci].stage == st.stage) {
            const ContractionRecord& rec = trace.contractions[ci];
            std::string tag = "step " + std::to_string(ci);
            SccPartition now = scc(induce_graph(inst, r));
            if (now.count() != rec.comps_before)
                complain(tag + " starts from the wrong component count");
            if (rec.size != static_cast<int>(rec.comps.size()))
                complain(tag + " size disagrees with its component list");
            bool usable = true;
            try {
                if (!is_contracted_set(inst, r, now, rec.comps, rec.reps)) {
                    complain(tag + " is not a contracted set at its point in the run");
                    usable = false;
                }
            } catch (const input_error& err) {
                complain(tag + ": " + err.what());
                usable = false;
            }
            if (usable) {
                ContractibleStructure cs =
                    induced_structure(inst, r, ContractedSet{rec.comps, rec.reps});
                int lc = static_cast<int>(leaves(inst, r, cs).size());
                StructureClass cls = classify(cs, lc);
                if (lc != rec.leaf_count) complain(tag + " records the wrong leaf count");
                if (cls != rec.cls) complain(tag + " records the wrong shape");
                if (st.stage == k) {
                    if (rec.size < k) complain(tag + " is too small for the opening sweep");
                } else if (st.stage >= 4) {
                    bool legal =
                        rec.size == st.stage ||
                        (cls == StructureClass::TwoPlusLeaves && rec.size >= 4 &&
                         rec.size < st.stage) ||
                        (cls == StructureClass::OneLeaf && rec.size >= ceil_half(k) &&
                         rec.size < st.stage);
                    if (!legal) complain(tag + " has a size/shape the stage does not allow");
                } else {
                    if (rec.size != 3)
                        complain(tag + " in the endgame is not a triple");
                    else if (!has_directed_triangle(cs))
                        complain(tag + " lacks a directed triangle");
                }
            }
            for (int v : rec.reps) r.add(v);
            int after = live_comp_count(inst, r);
            if (after != rec.comps_after) complain(tag + " records the wrong resulting count");
            if (after != rec.comps_before - (rec.size - 1))
                complain(tag + " merged a different number of components than its size");
            drop += rec.size - 1;
            ++ci;
        }
        if (t + 1 < expect.size() &&
            trace.stages[t + 1].comps_at_start != st.comps_at_start - drop)
            complain(stage_tag + " arithmetic does not reach the next snapshot");
    }
    if (ci != trace.contractions.size()) complain("contraction list is out of stage order");

    for (int v : trace.cover_nodes) {
        if (v < 0 || v >= inst.size()) {
            complain("cover mentions an unknown node");
            continue;
        }
        if (r.contains(v)) complain("cover node " + std::to_string(v) + " was already high");
        r.add(v);
    }
    if (r.high != trace.final_high) complain("final assignment does not match the replay");
    if (!is_strongly_connected(induce_graph(inst, r)))
        complain("final assignment does not strongly connect the graph");

    if (!stage_opts.empty()) {
        if (stage_opts.size() != trace.stages.size()) {
            complain("stage optimum list does not align with the snapshots");
            return bad;
        }
        int h = ceil_half(k);
        for (std::size_t t = 0; t < trace.stages.size(); ++t) {
            const StageStart& st = trace.stages[t];
            std::int64_t i = st.stage;
            std::int64_t n = st.comps_at_start;
            std::int64_t opt = stage_opts[t];
            std::string tag = "stage " + std::to_string(st.stage);
            if (opt < 0) {
                complain(tag + " optimum is negative");
                continue;
            }
            if (i >= k) continue;  // the window is only guaranteed below the threshold
            if (i * (n - 1) > (i - 1) * opt)
                complain(tag + " optimum falls below the amortized floor");
            if (opt > 2 * (n - 1)) complain(tag + " optimum exceeds two per tree edge");
        }
        for (std::size_t t = 0; t + 1 < trace.stages.size(); ++t) {
            int i = trace.stages[t].stage;
            if (i < 4 || i >= k) continue;  // no savings guarantee for the sweep
            std::int64_t save = 0, leaf_save = 0;
            for (const ContractionRecord& rec : trace.contractions) {
                if (rec.stage != i) continue;
                leaf_save += rec.leaf_count;
                int sz = rec.size;
                if (i <= h)
                    save += 2;  // every merge here saves two
                else
                    save += (sz == i || sz > h) ? 1 : 2;
            }
            std::int64_t opt_i = stage_opts[t];
            std::int64_t opt_prev = stage_opts[t + 1];
            std::string tag = "stage " + std::to_string(i);
            if (opt_prev > opt_i - save) complain(tag + " merges saved less than guaranteed");
            if (opt_prev > opt_i - leaf_save) complain(tag + " leaves saved less than counted");
        }
    }
    return bad;
}

namespace {

nlohmann::json parse_trace_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad JSON: ") + e.what());
    }
}

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    if (!j.contains(name)) throw parse_error(std::string("missing field: ") + name);
    return j.at(name);
}

int int_field(const nlohmann::json& j, const char* name) {
    const auto& v = field(j, name);
    if (!v.is_number_integer()) throw parse_error(std::string("field is not an integer: ") + name);
    return v.get<int>();
}

std::vector<int> ints_field(const nlohmann::json& j, const char* name) {
    const auto& v = field(j, name);
    if (!v.is_array()) throw parse_error(std::string("field is not an array: ") + name);
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer())
            throw parse_error(std::string("array holds a non-integer: ") + name);
        out.push_back(x.get<int>());
    }
    return out;
}

StructureClass class_from_name(const std::string& name) {
    if (name == "two-plus-leaves") return StructureClass::TwoPlusLeaves;
    if (name == "one-leaf") return StructureClass::OneLeaf;
    if (name == "simple-cycle") return StructureClass::SimpleCycle;
    if (name == "combined-cycles") return StructureClass::CombinedCycles;
    throw parse_error("unknown structure shape: " + name);
}

}  // namespace

// One record per stage snapshot: the stage number i, the component count n_i,
// the high set at that point, the contraction tallies b_i / b_ij / leaves, and
// the stage's contraction log.  The tallies are redundant with the log; the
// parser refuses a file where they disagree.
std::string trace_to_json(const RunTrace& trace) {
    nlohmann::json j;
    j["k"] = trace.k;
    j["n_nodes"] = trace.n_nodes;
    j["comps_initial"] = trace.comps_initial;
    j["iterations"] = nlohmann::json::array();
    for (const auto& st : trace.stages) {
        nlohmann::json it;
        it["i"] = st.stage;
        it["n_i"] = st.comps_at_start;
        it["high"] = st.high_at_start;
        int b_i = 0, leaves = 0;
        nlohmann::json b_ij = nlohmann::json::object();
        it["contractions"] = nlohmann::json::array();
        for (const auto& rec : trace.contractions) {
            if (rec.stage != st.stage) continue;
            std::string size_key = std::to_string(rec.size);
            if (rec.size == st.stage)
                ++b_i;
            else
                b_ij[size_key] = b_ij.value(size_key, 0) + 1;
            leaves += rec.leaf_count;
            it["contractions"].push_back({{"size", rec.size},
                                          {"class", structure_class_name(rec.cls)},
                                          {"leaves", rec.leaf_count},
                                          {"comps", rec.comps},
                                          {"reps", rec.reps},
                                          {"comps_before", rec.comps_before},
                                          {"comps_after", rec.comps_after}});
        }
        it["b_i"] = b_i;
        it["b_ij"] = b_ij;
        it["leaves"] = leaves;
        j["iterations"].push_back(std::move(it));
    }
    j["cover_nodes"] = trace.cover_nodes;
    j["final_high"] = trace.final_high;
    return j.dump(2) + "\n";
}

RunTrace trace_from_json(const std::string& text) {
    nlohmann::json j = parse_trace_text(text);
    RunTrace trace;
    trace.k = int_field(j, "k");
    trace.n_nodes = int_field(j, "n_nodes");
    trace.comps_initial = int_field(j, "comps_initial");
    const auto& iters = field(j, "iterations");
    if (!iters.is_array()) throw parse_error("field is not an array: iterations");
    for (const auto& it : iters) {
        StageStart st{int_field(it, "i"), int_field(it, "n_i"), ints_field(it, "high")};
        const auto& recs = field(it, "contractions");
        if (!recs.is_array()) throw parse_error("field is not an array: contractions");
        int b_i = 0, leaves = 0;
        std::map<int, int> by_size;
        for (const auto& c : recs) {
            ContractionRecord rec;
            rec.stage = st.stage;
            rec.size = int_field(c, "size");
            const auto& cls = field(c, "class");
            if (!cls.is_string()) throw parse_error("field is not a string: class");
            rec.cls = class_from_name(cls.get<std::string>());
            rec.leaf_count = int_field(c, "leaves");
            rec.comps = ints_field(c, "comps");
            rec.reps = ints_field(c, "reps");
            rec.comps_before = int_field(c, "comps_before");
            rec.comps_after = int_field(c, "comps_after");
            if (rec.size == st.stage)
                ++b_i;
            else
                ++by_size[rec.size];
            leaves += rec.leaf_count;
            trace.contractions.push_back(std::move(rec));
        }
        const auto& bj = field(it, "b_ij");
        if (!bj.is_object()) throw parse_error("field is not an object: b_ij");
        std::map<int, int> claimed;
        for (const auto& [key, val] : bj.items()) {
            if (!val.is_number_integer()) throw parse_error("b_ij holds a non-integer count");
            try {
                claimed[std::stoi(key)] = val.get<int>();
            } catch (const std::logic_error&) {
                throw parse_error("b_ij key is not a size: " + key);
            }
        }
        if (int_field(it, "b_i") != b_i || int_field(it, "leaves") != leaves ||
            claimed != by_size)
            throw parse_error("iteration tallies disagree with the contraction log");
        trace.stages.push_back(std::move(st));
    }
    trace.cover_nodes = ints_field(j, "cover_nodes");
    trace.final_high = ints_field(j, "final_high");
    return trace;
}

}  // namespace topo
