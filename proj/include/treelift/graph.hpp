#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treelift {

// Finite connected simple (q+1)-regular graph with both edge orientations
// materialized. Directed edges are stored as paired opposites: the
// undirected edge list is sorted by (min, max) endpoint and edge 2i runs
// low->high, edge 2i+1 is its reversal, so reverse(e) == e ^ 1.
struct RegularGraph {
    int vertex_count = 0;
    int q = 0; // branching number; vertex degree is q + 1
    std::vector<int> edge_from; // iota, indexed by directed edge
    std::vector<int> edge_to;   // tau
    std::vector<std::vector<int>> out_edges; // per vertex, ascending edge ids
    std::vector<std::vector<int>> successors; // per edge: follows-relation targets

    int directed_edge_count() const { return static_cast<int>(edge_from.size()); }
    int degree() const { return q + 1; }
    static int reverse(int e) { return e ^ 1; }

    // Directed edge id for (u -> v); -1 if u and v are not adjacent.
    int edge_between(int u, int v) const;
};

// Non-backtracking path. k = 0 paths carry only the base vertex.
struct NBPath {
    int base = 0;
    std::vector<int> edges;

    int length() const { return static_cast<int>(edges.size()); }
};

// Validates and indexes an undirected edge list (each edge listed once,
// vertices 0..V-1). Throws InvalidInput tagged not_regular / not_simple /
// not_connected / q_too_small, or degree mismatch against expected_q.
RegularGraph build_graph(const std::vector<std::pair<int, int>>& edges,
                         int expected_q = -1);

// Built-in graphs: k4, k5, cube, petersen, k33, dodecahedron.
RegularGraph named_graph(const std::string& name);

// Pairing-model random regular graph, resampled until simple and connected.
// Deterministic in (v, degree, seed). Throws InvalidInput on odd v*degree
// or degree < 3, NumericalError when the retry budget is exhausted.
RegularGraph random_regular(int v, int degree, std::uint64_t seed,
                            int retry_budget = 2000);

// All NB paths of length k from one base vertex, in the canonical order
// (first edge ascending, then successor-slot digits). k = 0 yields the
// single empty path.
std::vector<NBPath> nb_paths(const RegularGraph& g, int base, int k);

// Same, over every base vertex; order is by first-edge id (k >= 1) or by
// vertex (k = 0).
std::vector<NBPath> nb_paths_all(const RegularGraph& g, int k);

// Text fixtures: one "u v" pair per line, 0-based, '#' starts a comment.
RegularGraph parse_edge_list_text(const std::string& text, int expected_q = -1);
std::string serialize_edge_list_text(const RegularGraph& g);

// JSON form {"v": V, "q": q, "edges": [[u,v],...]}.
RegularGraph parse_graph_json(const std::string& text);
std::string serialize_graph_json(const RegularGraph& g);

// Dispatch on extension: .json -> JSON, anything else -> edge-list text.
RegularGraph load_graph_file(const std::string& path);

// BFS distances from a source vertex; also used for the diameter.
std::vector<int> bfs_distances(const RegularGraph& g, int source);
int graph_diameter(const RegularGraph& g);

} // namespace treelift
