#include <doctest.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "topo/contraction.hpp"
#include "topo/errors.hpp"
#include "topo/instance.hpp"

using namespace topo;

namespace {

// Current components as plain node lists, recomputed the slow way.
std::vector<std::vector<int>> parts_oracle(const Instance& inst, const std::vector<int>& high) {
    return fixtures::scc_oracle(inst.size(), fixtures::arc_oracle(inst, high));
}

// Does raising the reps land every listed component in one mutual-reach
// class?  Straight recomputation, nothing shared with the library.
bool merges_oracle(const Instance& inst, const std::vector<int>& base_high,
                   const std::vector<std::vector<int>>& part, const std::vector<int>& comps,
                   const std::vector<int>& reps) {
    std::vector<int> high = base_high;
    high.insert(high.end(), reps.begin(), reps.end());
    auto classes = fixtures::scc_oracle(inst.size(), fixtures::arc_oracle(inst, high));
    std::vector<int> cls(inst.size(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (int v : classes[c]) cls[v] = static_cast<int>(c);
    int want = cls[part[comps[0]][0]];
    for (int c : comps)
        if (cls[part[c][0]] != want) return false;
    return true;
}

struct OracleHit {
    std::vector<int> comps, reps;
};

// First contracted set of exactly size s: component subsets in lexicographic
// order, representative tuples in lexicographic order within a subset.
std::optional<OracleHit> exact_oracle(const Instance& inst, const std::vector<int>& base_high,
                                      const std::vector<std::vector<int>>& part, int s) {
    int m = static_cast<int>(part.size());
    if (s > m) return std::nullopt;
    std::vector<int> comps;
    std::optional<OracleHit> hit;
    std::function<bool(std::vector<int>&)> tuples = [&](std::vector<int>& reps) -> bool {
        if (static_cast<int>(reps.size()) == s) {
            if (!merges_oracle(inst, base_high, part, comps, reps)) return false;
            hit = OracleHit{comps, reps};
            return true;
        }
        for (int v : part[comps[reps.size()]]) {
            reps.push_back(v);
            if (tuples(reps)) return true;
            reps.pop_back();
        }
        return false;
    };
    std::function<bool(int)> subsets = [&](int from) -> bool {
        if (static_cast<int>(comps.size()) == s) {
            std::vector<int> reps;
            return tuples(reps);
        }
        for (int c = from; c <= m - (s - static_cast<int>(comps.size())); ++c) {
            comps.push_back(c);
            if (subsets(c + 1)) return true;
            comps.pop_back();
        }
        return false;
    };
    subsets(0);
    return hit;
}

// The three leaf conditions, each recomputed from the definition.
std::vector<int> leaf_oracle(const Instance& inst, const std::vector<int>& base_high,
                             const std::vector<std::vector<int>>& part,
                             const std::vector<int>& comps, const std::vector<int>& reps) {
    int m = static_cast<int>(part.size());
    auto adjacent = [&](int a, int b) {
        for (int u : part[a])
            for (int v : part[b])
                if (dist_sq(inst.points[u], inst.points[v]) <= inst.rh_sq) return true;
        return false;
    };
    std::vector<char> member(m, 0);
    for (int c : comps) member[c] = 1;

    std::vector<int> out;
    for (std::size_t t = 0; t < comps.size(); ++t) {
        int ci = comps[t];

        std::vector<int> rest_comps, rest_reps;
        for (std::size_t s = 0; s < comps.size(); ++s)
            if (s != t) {
                rest_comps.push_back(comps[s]);
                rest_reps.push_back(reps[s]);
            }
        bool c1 = merges_oracle(inst, base_high, part, rest_comps, rest_reps);

        // walk outward from ci without stepping on the other members
        std::vector<char> seen(m, 0);
        seen[ci] = 1;
        std::vector<int> stack{ci};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y = 0; y < m; ++y) {
                if (seen[y] || (member[y] && y != ci)) continue;
                if (adjacent(x, y)) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
        bool c2 = true;
        for (int y = 0; y < m; ++y) {
            if (!seen[y] || member[y]) continue;
            for (int z : comps)
                if (z != ci && adjacent(y, z)) c2 = false;
        }

        bool c3 = true;
        for (int u : part[ci]) {
            bool hits_member = false, hits_out = false;
            for (int c = 0; c < m; ++c) {
                if (c == ci) continue;
                for (int w : part[c])
                    if (dist_sq(inst.points[u], inst.points[w]) <= inst.rh_sq) {
                        (member[c] ? hits_member : hits_out) = true;
                        break;
                    }
            }
            if (hits_member && hits_out) c3 = false;
        }

        if (c1 && c2 && c3) out.push_back(ci);
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("contraction");

TEST_CASE("contracted-set check agrees with direct recomputation") {
    std::mt19937 rng(2024);
    std::vector<std::pair<Instance, std::vector<int>>> cases;
    cases.emplace_back(fixtures::ring_square(), std::vector<int>{});
    for (const auto& cfg : fixtures::gen_configs()) {
        if (cfg.n > 8) continue;
        Instance inst = generate_instance(cfg.n, cfg.extent, cfg.rl_sq, cfg.rh_sq, rng());
        std::vector<int> high;
        for (int v = 0; v < inst.size(); ++v)
            if (rng() % 5 == 0) high.push_back(v);
        cases.emplace_back(inst, high);
    }

    for (const auto& [inst, high] : cases) {
        PowerAssignment r = make_assignment(high);
        auto part = parts_oracle(inst, high);
        int m = static_cast<int>(part.size());
        if (m < 2) continue;
        for (int s = 2; s <= std::min(4, m); ++s) {
            std::vector<int> comps;
            std::function<void(int)> walk = [&](int from) {
                if (static_cast<int>(comps.size()) == s) {
                    std::vector<int> reps(s);
                    std::function<void(int)> pick = [&](int t) {
                        if (t == s) {
                            bool lib = is_contracted_set(inst, r, comps, reps);
                            bool orc = merges_oracle(inst, high, part, comps, reps);
                            CHECK(lib == orc);
                            return;
                        }
                        for (int v : part[comps[t]]) {
                            reps[t] = v;
                            pick(t + 1);
                        }
                    };
                    pick(0);
                    return;
                }
                for (int c = from; c < m; ++c) {
                    comps.push_back(c);
                    walk(c + 1);
                    comps.pop_back();
                }
            };
            walk(0);
        }
    }
}

TEST_CASE("contracted-set check rejects malformed candidates") {
    Instance inst = fixtures::ring_square();
    PowerAssignment r;
    CHECK_THROWS_AS(is_contracted_set(inst, r, {0, 1}, {1}), input_error);
    CHECK_THROWS_AS(is_contracted_set(inst, r, {0, 1}, {1, 1}), input_error);  // rep not in comp 1
    CHECK_THROWS_AS(is_contracted_set(inst, r, {0, 9}, {1, 2}), input_error);
    CHECK_THROWS_AS(is_contracted_set(inst, r, {1, 0}, {2, 1}), input_error);  // not ascending
}

TEST_CASE("ring square: arm reps induce the directed 4-ring") {
    Instance inst = fixtures::ring_square();
    PowerAssignment r;
    ContractedSet arms{{0, 1, 2, 3}, {1, 3, 5, 7}};
    CHECK(is_contracted_set(inst, r, arms.comps, arms.reps));
    ContractibleStructure cs = induced_structure(inst, r, arms);
    CHECK(cs.arcs == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});

    ContractedSet centers{{0, 1, 2, 3}, {0, 2, 4, 6}};
    CHECK(is_contracted_set(inst, r, centers.comps, centers.reps));
    ContractibleStructure back = induced_structure(inst, r, centers);
    CHECK(back.arcs == std::vector<std::pair<int, int>>{{0, 3}, {1, 0}, {2, 1}, {3, 2}});

    // two detached 2-cycles do not merge everything
    ContractedSet halves{{0, 1, 2, 3}, {1, 2, 5, 6}};
    CHECK(!is_contracted_set(inst, r, halves.comps, halves.reps));
    CHECK_THROWS_AS(induced_structure(inst, r, halves), contract_error);
}

TEST_CASE("leaf conditions agree with the from-scratch checks") {
    std::mt19937 rng(31337);
    int compared = 0;
    for (const auto& cfg : fixtures::gen_configs()) {
        if (cfg.n > 9) continue;
        for (int round = 0; round < 6; ++round) {
            Instance inst = generate_instance(cfg.n, cfg.extent, cfg.rl_sq, cfg.rh_sq, rng());
            std::vector<int> high;
            for (int v = 0; v < inst.size(); ++v)
                if (rng() % 6 == 0) high.push_back(v);
            PowerAssignment r = make_assignment(high);
            auto part = parts_oracle(inst, high);
            for (int s = 2; s <= std::min<int>(4, part.size()); ++s) {
                auto hit = exact_oracle(inst, high, part, s);
                if (!hit) continue;
                ContractedSet cset{hit->comps, hit->reps};
                ContractibleStructure cs = induced_structure(inst, r, cset);
                CHECK(leaves(inst, r, cs) ==
                      leaf_oracle(inst, high, part, cset.comps, cset.reps));
                ++compared;
            }
        }
    }
    Instance ring = fixtures::ring_square();
    ContractibleStructure arms =
        induced_structure(ring, {}, ContractedSet{{0, 1, 2, 3}, {1, 3, 5, 7}});
    CHECK(leaves(ring, {}, arms) == leaf_oracle(ring, {}, parts_oracle(ring, {}), {0, 1, 2, 3},
                                                {1, 3, 5, 7}));
    CHECK(compared > 10);  // the sweep above must actually exercise sets
}

TEST_CASE("classification covers the four shapes") {
    auto structure = [](std::vector<int> comps, std::vector<std::pair<int, int>> arcs) {
        ContractibleStructure cs;
        cs.base.comps = std::move(comps);
        for (int c : cs.base.comps) cs.base.reps.push_back(c);  // reps unused by classify
        cs.arcs = std::move(arcs);
        return cs;
    };
    ContractibleStructure ring4 = structure({0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(classify(ring4, 0) == StructureClass::SimpleCycle);
    CHECK(classify(ring4, 1) == StructureClass::OneLeaf);
    CHECK(classify(ring4, 2) == StructureClass::TwoPlusLeaves);
    CHECK(classify(ring4, 3) == StructureClass::TwoPlusLeaves);

    // sparse ids still count as one full directed cycle
    ContractibleStructure sparse = structure({2, 5, 7}, {{2, 5}, {5, 7}, {7, 2}});
    CHECK(classify(sparse, 0) == StructureClass::SimpleCycle);

    // chord on the ring, reversed ring, or two 2-cycles: no longer simple
    ContractibleStructure chord =
        structure({0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(classify(chord, 0) == StructureClass::CombinedCycles);
    ContractibleStructure pairs = structure({0, 1, 2, 3}, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
    CHECK(classify(pairs, 0) == StructureClass::CombinedCycles);

    CHECK(structure_class_name(StructureClass::SimpleCycle) != nullptr);
}

TEST_CASE("exact-size search returns the lexicographically first hit") {
    std::mt19937 rng(424242);
    Instance ring = fixtures::ring_square();
    std::vector<std::pair<Instance, std::vector<int>>> cases;
    cases.emplace_back(ring, std::vector<int>{});
    for (const auto& cfg : fixtures::gen_configs()) {
        if (cfg.n > 9) continue;
        for (int round = 0; round < 4; ++round) {
            Instance inst = generate_instance(cfg.n, cfg.extent, cfg.rl_sq, cfg.rh_sq, rng());
            std::vector<int> high;
            for (int v = 0; v < inst.size(); ++v)
                if (rng() % 6 == 0) high.push_back(v);
            cases.emplace_back(inst, high);
        }
    }

    for (const auto& [inst, high] : cases) {
        PowerAssignment r = make_assignment(high);
        auto part = parts_oracle(inst, high);
        for (int s = 2; s <= std::min<int>(4, part.size()); ++s) {
            auto expect = exact_oracle(inst, high, part, s);
            auto got = find_contracted_set(inst, r, SetQuery::exact(s));
            REQUIRE(got.has_value() == expect.has_value());
            if (!got) continue;
            CHECK(got->set.comps == expect->comps);
            CHECK(got->set.reps == expect->reps);
            CHECK(merges_oracle(inst, high, part, got->set.comps, got->set.reps));
            CHECK(got->leaf_count ==
                  static_cast<int>(leaves(inst, r, got->structure).size()));
            CHECK(got->cls == classify(got->structure, got->leaf_count));
        }
    }
}

TEST_CASE("ring square answers the shape queries") {
    Instance inst = fixtures::ring_square();
    PowerAssignment r;
    auto simple = find_contracted_set(inst, r, SetQuery::with_class(StructureClass::SimpleCycle, 4));
    REQUIRE(simple);
    CHECK(simple->set.comps == std::vector<int>{0, 1, 2, 3});
    CHECK(simple->cls == StructureClass::SimpleCycle);
    CHECK(simple->leaf_count == 0);

    CHECK(!find_contracted_set(inst, r, SetQuery::with_class(StructureClass::TwoPlusLeaves, 4)));
    CHECK(!find_contracted_set(inst, r, SetQuery::exact(5)));
}

TEST_CASE("chain search finds big sets and respects its floor") {
    Instance inst = fixtures::ring_square();
    PowerAssignment r;
    auto big = find_contracted_set(inst, r, SetQuery::at_least(4));
    REQUIRE(big);
    CHECK(big->set.size() == 4);
    CHECK(merges_oracle(inst, {}, parts_oracle(inst, {}), big->set.comps, big->set.reps));
    CHECK(!find_contracted_set(inst, r, SetQuery::at_least(5)));
    CHECK_THROWS_AS(find_contracted_set(inst, r, SetQuery::at_least(1)), input_error);

    std::mt19937 rng(11);
    for (const auto& cfg : fixtures::gen_configs()) {
        if (cfg.n > 9) continue;
        Instance rand_inst = generate_instance(cfg.n, cfg.extent, cfg.rl_sq, cfg.rh_sq, rng());
        for (int s = 2; s <= 4; ++s) {
            auto got = find_contracted_set(rand_inst, {}, SetQuery::at_least(s));
            if (!got) continue;
            CHECK(got->set.size() >= s);
            CHECK(merges_oracle(rand_inst, {}, parts_oracle(rand_inst, {}), got->set.comps,
                                got->set.reps));
        }
    }
}

TEST_CASE("search results are deterministic") {
    Instance inst = fixtures::ring_square();
    auto a = find_contracted_set(inst, {}, SetQuery::exact(4));
    auto b = find_contracted_set(inst, {}, SetQuery::exact(4));
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->set.comps == b->set.comps);
    CHECK(a->set.reps == b->set.reps);
}

TEST_SUITE_END();
