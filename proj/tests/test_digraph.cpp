#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "topo/digraph.hpp"
#include "topo/errors.hpp"

using namespace topo;

TEST_SUITE_BEGIN("digraph");

TEST_CASE("arc bookkeeping: sorted, deduplicated, loop-free") {
    DiGraph g(4);
    g.add_arc(2, 1);
    g.add_arc(0, 3);
    g.add_arc(0, 1);
    g.add_arc(0, 1);
    CHECK(g.adj[0] == std::vector<int>{1, 3});
    CHECK(g.arc_count() == 3);
    CHECK(g.has_arc(2, 1));
    CHECK(!g.has_arc(1, 2));
    CHECK(g.arcs() == std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {2, 1}});
    CHECK_THROWS_AS(g.add_arc(1, 1), input_error);
    CHECK_THROWS_AS(g.add_arc(0, 4), input_error);
    CHECK_THROWS_AS(g.add_arc(-1, 0), input_error);
    CHECK(digraph_from_arcs(3, {{2, 0}, {0, 2}}).arc_count() == 2);
    CHECK_THROWS_AS(digraph_from_arcs(2, {{0, 1}, {1, 2}}), input_error);
}

TEST_CASE("partition matches mutual reachability on random graphs") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        auto arcs = fixtures::random_arcs(rng, n, 1 + static_cast<int>(rng() % 3), 6);
        DiGraph g = digraph_from_arcs(n, arcs);
        SccPartition part = scc(g);
        auto expect = fixtures::scc_oracle(n, arcs);

        REQUIRE(part.count() == static_cast<int>(expect.size()));
        for (std::size_t c = 0; c < expect.size(); ++c) {
            CHECK(part.comps[c] == expect[c]);
            for (int v : expect[c]) CHECK(part.comp_of[v] == static_cast<int>(c));
        }
        // numbering rule: component c holds the c-th smallest minimum id
        for (int c = 1; c < part.count(); ++c)
            CHECK(part.comps[c - 1].front() < part.comps[c].front());

        CHECK(is_strongly_connected(g) == fixtures::sc_oracle(n, arcs));
        CHECK(is_strongly_connected(g) == (part.count() == 1));
    }
}

TEST_CASE("strong connectivity basics") {
    DiGraph ring(3);
    ring.add_arc(0, 1);
    ring.add_arc(1, 2);
    ring.add_arc(2, 0);
    CHECK(is_strongly_connected(ring));
    DiGraph path(3);
    path.add_arc(0, 1);
    path.add_arc(1, 2);
    CHECK(!is_strongly_connected(path));
    DiGraph one(1);
    CHECK(is_strongly_connected(one));
    CHECK_THROWS_AS(is_strongly_connected(DiGraph{}), input_error);
}

TEST_CASE("condensation is acyclic and keeps exactly the crossing arcs") {
    std::mt19937 rng(909);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        auto arcs = fixtures::random_arcs(rng, n, 1, 3);
        DiGraph g = digraph_from_arcs(n, arcs);
        SccPartition part = scc(g);
        DiGraph dag = condensation(g, part);
        CHECK(dag.n == part.count());

        for (const auto& [a, b] : dag.arcs()) {
            bool crossed = false;
            for (const auto& [u, v] : arcs)
                if (part.comp_of[u] == a && part.comp_of[v] == b) crossed = true;
            CHECK(crossed);
        }
        for (const auto& [u, v] : arcs) {
            int a = part.comp_of[u], b = part.comp_of[v];
            if (a != b) CHECK(dag.has_arc(a, b));
        }
        // a cycle in the condensation would merge its components
        for (const auto& comp : fixtures::scc_oracle(dag.n, dag.arcs()))
            CHECK(comp.size() == 1);
    }
}

TEST_CASE("dot export lists every node and arc once") {
    DiGraph g(3);
    g.add_arc(1, 0);
    g.add_arc(0, 2);
    std::string dot = to_dot(g, "demo");
    CHECK(dot.find("digraph demo") != std::string::npos);
    CHECK(dot.find("n0 -> n2") != std::string::npos);
    CHECK(dot.find("n1 -> n0") != std::string::npos);
    CHECK(dot.find("n2 -> n0") == std::string::npos);
    CHECK(to_dot(g, "demo") == dot);
}

TEST_SUITE_END();
