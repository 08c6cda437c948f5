#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "topo/digraph.hpp"
#include "topo/errors.hpp"
#include "topo/oracles.hpp"
#include "topo/scss.hpp"

using namespace topo;

namespace {

using Arc = std::pair<int, int>;

std::vector<Arc> bowtie_arcs() {
    return {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 0}, {1, 2},
            {2, 0}, {2, 1}, {3, 0}, {3, 4}, {4, 0}, {4, 3}};
}

DiGraph from_arcs(int n, const std::vector<Arc>& arcs) { return digraph_from_arcs(n, arcs); }

}  // namespace

TEST_SUITE_BEGIN("scss");

TEST_CASE("contraction guarantees shrink towards three halves") {
    CHECK(scss_bounded_ratio(4) == Rational(10, 8));
    CHECK(scss_bounded_ratio(8) == Rational(22, 16));
    CHECK(scss_bounded_ratio(8).num == 11);
    CHECK(scss_bounded_ratio(8).den == 8);
    CHECK(scss_bounded_ratio(100) == Rational(298, 200));
    for (int k = 4; k <= 64; ++k) {
        Rational r = scss_bounded_ratio(k);
        CHECK(r.num * 2 < 3 * r.den);
        if (k > 4) {
            Rational prev = scss_bounded_ratio(k - 1);
            CHECK(prev.num * r.den < r.num * prev.den);  // climbs with k, still capped
        }
    }
    CHECK_THROWS_AS(scss_bounded_ratio(3), input_error);
    CHECK_THROWS_AS(scss_bounded_ratio(0), input_error);
}

TEST_CASE("symmetric views reject lopsided or broken graphs") {
    CHECK_NOTHROW(make_sym(from_arcs(2, {{0, 1}, {1, 0}})));
    CHECK_NOTHROW(sym_from_edges(3, {{0, 1}, {1, 2}}));
    CHECK_THROWS_AS(make_sym(from_arcs(3, {{0, 1}, {1, 0}, {0, 2}})), input_error);
    CHECK_THROWS_AS(make_sym(from_arcs(3, {{0, 1}, {1, 0}})), input_error);  // 2 unreachable
    CHECK_THROWS_AS(sym_from_edges(3, {{0, 1}}), input_error);
    CHECK_THROWS_AS(sym_from_edges(2, {{0, 0}}), input_error);
}

TEST_CASE("longest cycle search matches brute enumeration") {
    CHECK(longest_cycle(from_arcs(3, {{0, 1}, {1, 2}})).empty());
    CHECK(longest_cycle(DiGraph(1)).empty());
    CHECK_THROWS_AS(longest_cycle(DiGraph(0)), input_error);

    std::vector<Arc> ring{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    CHECK(longest_cycle(from_arcs(5, ring)) == std::vector<int>{0, 1, 2, 3, 4});

    std::vector<Arc> k4;
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (u != v) k4.push_back({u, v});
    CHECK(longest_cycle(from_arcs(4, k4)) == std::vector<int>{0, 1, 2, 3});
    CHECK(longest_cycle(from_arcs(4, k4), 2) == std::vector<int>{0, 1});
    CHECK(longest_cycle(from_arcs(4, k4), 3) == std::vector<int>{0, 1, 2});

    std::mt19937 rng(993311);
    for (int round = 0; round < 30; ++round) {
        int n = 3 + static_cast<int>(rng() % 5);
        auto arcs = fixtures::random_arcs(rng, n, 35, 100);
        auto got = longest_cycle(from_arcs(n, arcs));
        auto all = fixtures::directed_cycle_oracle(n, arcs);
        if (all.empty()) {
            CHECK(got.empty());
            continue;
        }
        std::size_t top = 0;
        for (const auto& c : all) top = std::max(top, c.size());
        std::vector<int> want;
        for (const auto& c : all)
            if (c.size() == top && (want.empty() || c < want)) want = c;
        CHECK(got == want);
        CHECK(longest_cycle(from_arcs(n, arcs)) == got);
    }
}

TEST_CASE("the residue solver is exact on short-cycle graphs") {
    CHECK(base_case_solve(1, {}).empty());
    CHECK(base_case_solve(2, {{0, 1}, {1, 0}}) == std::vector<Arc>{{0, 1}, {1, 0}});

    auto picked = base_case_solve(5, bowtie_arcs());
    CHECK(picked == std::vector<Arc>{{0, 1}, {0, 3}, {1, 2}, {2, 0}, {3, 4}, {4, 0}});
    auto sorted = bowtie_arcs();
    std::sort(sorted.begin(), sorted.end());
    CHECK(picked == fixtures::brute_min_sc_arcs(5, sorted));

    std::mt19937 rng(114477);
    for (int round = 0; round < 15; ++round) {
        int n = 2 + static_cast<int>(rng() % 4);
        auto arcs = fixtures::random_sym_sc_arcs(rng, n, 1);
        auto lc = longest_cycle(from_arcs(n, arcs));
        if (lc.size() > 3) continue;
        auto got = base_case_solve(n, arcs);
        CHECK(got == fixtures::brute_min_sc_arcs(n, arcs));
        CHECK(fixtures::sc_oracle(n, got));
    }

    CHECK_THROWS_WITH_AS(base_case_solve(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
                         "the residue still has a long cycle: 0 1 2 3", input_error);
    CHECK_THROWS_AS(base_case_solve(2, {{0, 1}}), input_error);  // nothing leads back
    CHECK_THROWS_AS(base_case_solve(0, {}), input_error);
    CHECK_THROWS_AS(base_case_solve(2, {{0, 2}}), input_error);
    CHECK_THROWS_AS(base_case_solve(2, {{0, 0}}), input_error);
    CHECK_THROWS_AS(base_case_solve(2, {{0, 1}, {0, 1}}), input_error);
}

TEST_CASE("contraction solves rings by one merge") {
    SymDigraph sg = sym_from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    ScssResult r = scss_approx(sg);
    CHECK(r.kept == std::vector<Arc>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].cycle_nodes == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(r.steps[0].arcs == r.kept);
    CHECK(r.base_arcs.empty());
    CHECK(scss_opt(sg.g).size() == 5);
}

TEST_CASE("contraction falls through to the residue solver on short-cycle graphs") {
    SymDigraph sg = make_sym(from_arcs(5, bowtie_arcs()));
    ScssResult r = scss_approx(sg);
    CHECK(r.steps.empty());
    CHECK(r.base_arcs == std::vector<Arc>{{0, 1}, {0, 3}, {1, 2}, {2, 0}, {3, 4}, {4, 0}});
    CHECK(r.kept == r.base_arcs);
    CHECK(scss_opt(sg.g).size() == 6);
}

TEST_CASE("two rings sharing a node contract twice") {
    std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                                           {0, 5}, {5, 6}, {6, 7}, {7, 8}, {0, 8}};
    ScssResult r = scss_approx(sym_from_edges(9, edges));
    REQUIRE(r.steps.size() == 2);
    CHECK(r.steps[0].cycle_nodes == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(r.steps[1].cycle_nodes == std::vector<int>{0, 5, 6, 7, 8});
    CHECK(r.steps[1].arcs == std::vector<Arc>{{0, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 0}});
    CHECK(r.base_arcs.empty());
    CHECK(r.kept.size() == 10);
    CHECK(fixtures::sc_oracle(9, r.kept));
}

TEST_CASE("random symmetric graphs stay connected inside the bound") {
    std::mt19937 rng(42424242);
    int rounds = 0;
    for (int n = 4; n <= 7; ++n) {
        for (int round = 0; round < 8; ++round) {
            auto arcs = fixtures::random_sym_sc_arcs(rng, n, static_cast<int>(rng() % 5));
            SymDigraph sg = make_sym(from_arcs(n, arcs));
            ScssResult r = scss_approx(sg);

            std::sort(arcs.begin(), arcs.end());
            for (const auto& a : r.kept)
                CHECK(std::binary_search(arcs.begin(), arcs.end(), a));
            CHECK(fixtures::sc_oracle(n, r.kept));
            for (const auto& s : r.steps) {
                CHECK(s.arcs.size() >= 4);
                CHECK(s.arcs.size() == s.cycle_nodes.size());
                std::set<int> uniq(s.cycle_nodes.begin(), s.cycle_nodes.end());
                CHECK(uniq.size() == s.cycle_nodes.size());
            }

            auto opt = scss_opt(sg.g);
            CHECK(8 * r.kept.size() <= 11 * opt.size());

            ScssResult again = scss_approx(sg);
            CHECK(again.kept == r.kept);
            CHECK(scss_approx(sg, 4).kept == r.kept);   // the threshold only names the
            CHECK(scss_approx(sg, 24).kept == r.kept);  // guarantee, never the run
            ++rounds;
        }
    }
    CHECK(rounds == 32);

    auto arcs9 = fixtures::random_sym_sc_arcs(rng, 9, 4);
    ScssResult big = scss_approx(make_sym(from_arcs(9, arcs9)));
    CHECK(fixtures::sc_oracle(9, big.kept));

    CHECK_THROWS_AS(scss_approx(sym_from_edges(2, {{0, 1}}), 3), input_error);
}

TEST_CASE("solver results serialize with their steps") {
    ScssResult r = scss_approx(sym_from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}));
    std::string text = scss_result_to_json(r);
    CHECK(text.back() == '\n');
    auto j = nlohmann::json::parse(text);
    CHECK(j.at("kept").size() == 5);
    CHECK(j.at("kept")[0] == nlohmann::json::array({0, 1}));
    REQUIRE(j.at("steps").size() == 1);
    CHECK(j.at("steps")[0].at("cycle") == nlohmann::json::array({0, 1, 2, 3, 4}));
    CHECK(j.at("steps")[0].at("arcs").size() == 5);
    CHECK(j.at("base_arcs").empty());
}

TEST_SUITE_END();
