#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topo/digraph.hpp"
#include "topo/geom.hpp"

namespace topo {

/// A two-radius range assignment instance: points with a low squared radius
/// rl_sq and a high squared radius rh_sq.  Node ids are positions in `points`.
///
/// A valid instance has 0 < rl_sq <= rh_sq, pairwise distinct points, and is
/// feasible: with every node at high range the induced digraph is strongly
/// connected.  `validate` enforces all of that.
struct Instance {
    std::vector<Point> points;
    std::int64_t rl_sq = 0;
    std::int64_t rh_sq = 0;

    int size() const { return static_cast<int>(points.size()); }
};

void validate_instance(const Instance& inst);

/// The set of nodes assigned the high radius; everyone else transmits at the
/// low radius.  Kept sorted and duplicate-free.
struct PowerAssignment {
    std::vector<int> high;

    bool contains(int v) const;
    void add(int v);
};

PowerAssignment make_assignment(std::vector<int> high);

/// Digraph induced by an assignment: arc (u,v) iff v lies within u's radius.
/// Boundary equality counts as within range.
DiGraph induce_graph(const Instance& inst, const PowerAssignment& r);

/// Undirected graph over the strongly connected components of the induced
/// digraph; two components are adjacent when some cross pair of points is
/// within the high radius.
struct ComponentGraph {
    SccPartition part;
    std::vector<std::vector<int>> adj;           // component id -> sorted neighbor ids
    std::vector<std::pair<int, int>> edges;      // i < j, sorted

    int count() const { return part.count(); }
    bool adjacent(int a, int b) const;
};

ComponentGraph component_graph(const Instance& inst, const PowerAssignment& r);

std::string component_graph_to_dot(const ComponentGraph& cg, const std::string& name = "cg");

/// Draws n distinct integer points uniformly on [0,extent]^2, redrawing the
/// whole set until the all-high graph is strongly connected.  Deterministic
/// for a fixed seed; throws generation_error when the retry budget runs out.
Instance generate_instance(int n, std::int64_t extent, std::int64_t rl_sq, std::int64_t rh_sq,
                           std::uint64_t seed, int max_attempts = 1000);

// JSON round trips.  Files are newline-terminated UTF-8 single objects.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);
PowerAssignment assignment_from_json(const std::string& text, int n);
std::string assignment_to_json(const PowerAssignment& r);
DiGraph digraph_from_json(const std::string& text);
std::string digraph_to_json(const DiGraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace topo
