#include "treelift/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "treelift/errors.hpp"
#include "treelift/rng.hpp"

namespace treelift {

int RegularGraph::edge_between(int u, int v) const {
    for (int e : out_edges[u]) {
        if (edge_to[e] == v) return e;
    }
    return -1;
}

namespace {

void index_graph(RegularGraph& g, std::vector<std::pair<int, int>> undirected) {
    for (auto& [u, v] : undirected) {
        if (u > v) std::swap(u, v);
    }
    std::sort(undirected.begin(), undirected.end());

    const int e_count = static_cast<int>(undirected.size());
    g.edge_from.resize(2 * e_count);
    g.edge_to.resize(2 * e_count);
    for (int i = 0; i < e_count; ++i) {
        g.edge_from[2 * i] = undirected[i].first;
        g.edge_to[2 * i] = undirected[i].second;
        g.edge_from[2 * i + 1] = undirected[i].second;
        g.edge_to[2 * i + 1] = undirected[i].first;
    }

    g.out_edges.assign(g.vertex_count, {});
    for (int e = 0; e < 2 * e_count; ++e) {
        g.out_edges[g.edge_from[e]].push_back(e);
    }

    g.successors.assign(2 * e_count, {});
    for (int e = 0; e < 2 * e_count; ++e) {
        for (int f : g.out_edges[g.edge_to[e]]) {
            if (f != RegularGraph::reverse(e)) g.successors[e].push_back(f);
        }
    }
}

bool is_connected(int v_count, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(v_count);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> seen(v_count, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        int x = frontier.front();
        frontier.pop();
        for (int y : adj[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                ++reached;
                frontier.push(y);
            }
        }
    }
    return reached == v_count;
}

} // namespace

RegularGraph build_graph(const std::vector<std::pair<int, int>>& edges,
                         int expected_q) {
    if (edges.empty()) throw InvalidInput("not_connected: empty edge list");

    int v_count = 0;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0) throw InvalidInput("not_simple: negative vertex id");
        v_count = std::max(v_count, std::max(u, v) + 1);
    }

    std::set<std::pair<int, int>> seen;
    std::vector<int> degree(v_count, 0);
    for (auto [u, v] : edges) {
        if (u == v) {
            throw InvalidInput("not_simple: loop at vertex " + std::to_string(u));
        }
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) {
            throw InvalidInput("not_simple: duplicate edge " + std::to_string(key.first) +
                               "-" + std::to_string(key.second));
        }
        ++degree[u];
        ++degree[v];
    }

    const int d = degree[0];
    for (int x = 0; x < v_count; ++x) {
        if (degree[x] != d) {
            throw InvalidInput("not_regular: vertex " + std::to_string(x) + " has degree " +
                               std::to_string(degree[x]) + ", expected " + std::to_string(d));
        }
    }
    if (d < 3) {
        throw InvalidInput("q_too_small: degree " + std::to_string(d) +
                           " gives q = " + std::to_string(d - 1) + ", need q >= 2");
    }
    if (expected_q >= 0 && d != expected_q + 1) {
        throw InvalidInput("not_regular: degree " + std::to_string(d) + " but expected q = " +
                           std::to_string(expected_q));
    }
    if (!is_connected(v_count, edges)) throw InvalidInput("not_connected: graph has >1 component");

    RegularGraph g;
    g.vertex_count = v_count;
    g.q = d - 1;
    index_graph(g, edges);
    return g;
}

RegularGraph named_graph(const std::string& name) {
    std::vector<std::pair<int, int>> edges;
    if (name == "k4") {
        edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    } else if (name == "k5") {
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v) edges.emplace_back(u, v);
    } else if (name == "cube") {
        // vertices = corners of {0,1}^3, edges between Hamming neighbors
        for (int u = 0; u < 8; ++u)
            for (int b = 0; b < 3; ++b)
                if (!(u & (1 << b))) edges.emplace_back(u, u | (1 << b));
    } else if (name == "petersen") {
        // outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5
        for (int i = 0; i < 5; ++i) {
            edges.emplace_back(i, (i + 1) % 5);
            edges.emplace_back(5 + i, 5 + (i + 2) % 5);
            edges.emplace_back(i, 5 + i);
        }
    } else if (name == "k33" || name == "complete_bipartite_k33") {
        for (int u = 0; u < 3; ++u)
            for (int v = 3; v < 6; ++v) edges.emplace_back(u, v);
    } else if (name == "dodecahedron") {
        edges = {{0, 1},   {0, 4},   {0, 5},   {1, 2},   {1, 6},   {2, 3},
                 {2, 7},   {3, 4},   {3, 8},   {4, 9},   {5, 10},  {5, 11},
                 {6, 11},  {6, 12},  {7, 12},  {7, 13},  {8, 13},  {8, 14},
                 {9, 10},  {9, 14},  {10, 15}, {11, 16}, {12, 17}, {13, 18},
                 {14, 19}, {15, 16}, {15, 19}, {16, 17}, {17, 18}, {18, 19}};
    } else {
        throw InvalidInput("unknown_name: no built-in graph called '" + name + "'");
    }
    return build_graph(edges);
}

RegularGraph random_regular(int v, int degree, std::uint64_t seed, int retry_budget) {
    if (degree < 3) {
        throw InvalidInput("q_too_small: degree " + std::to_string(degree) + " < 3");
    }
    if ((static_cast<long long>(v) * degree) % 2 != 0) {
        throw InvalidInput("parity_error: v * degree must be even, got " + std::to_string(v) +
                           " * " + std::to_string(degree));
    }
    if (v <= degree) {
        throw InvalidInput("not_simple: need more than degree+1 vertices for a simple graph");
    }

    Rng rng(seed);
    std::vector<int> stubs(static_cast<size_t>(v) * degree);
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        for (size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<int>(i) / degree;
        // Fisher-Yates over the stub multiset, then pair consecutive stubs.
        for (size_t i = stubs.size() - 1; i > 0; --i) {
            size_t j = static_cast<size_t>(rng.next_below(i + 1));
            std::swap(stubs[i], stubs[j]);
        }
        std::vector<std::pair<int, int>> edges;
        edges.reserve(stubs.size() / 2);
        bool ok = true;
        std::set<std::pair<int, int>> seen;
        for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int a = stubs[i], b = stubs[i + 1];
            if (a == b || !seen.insert(std::minmax(a, b)).second) {
                ok = false;
                break;
            }
            edges.emplace_back(a, b);
        }
        if (!ok || !is_connected(v, edges)) continue;
        return build_graph(edges, degree - 1);
    }
    throw NumericalError("retry_exhausted: no simple connected pairing after " +
                         std::to_string(retry_budget) + " attempts (v=" + std::to_string(v) +
                         ", degree=" + std::to_string(degree) + ")");
}

namespace {

void extend_paths(const RegularGraph& g, NBPath& partial, int remaining,
                  std::vector<NBPath>& out) {
    if (remaining == 0) {
        out.push_back(partial);
        return;
    }
    const int last = partial.edges.back();
    for (int nxt : g.successors[last]) {
        partial.edges.push_back(nxt);
        extend_paths(g, partial, remaining - 1, out);
        partial.edges.pop_back();
    }
}

} // namespace

std::vector<NBPath> nb_paths(const RegularGraph& g, int base, int k) {
    if (k < 0) throw InvalidInput("bad_depth: negative path length");
    std::vector<NBPath> out;
    if (k == 0) {
        out.push_back(NBPath{base, {}});
        return out;
    }
    for (int e : g.out_edges[base]) {
        NBPath p{base, {e}};
        extend_paths(g, p, k - 1, out);
    }
    return out;
}

std::vector<NBPath> nb_paths_all(const RegularGraph& g, int k) {
    std::vector<NBPath> out;
    if (k == 0) {
        for (int x = 0; x < g.vertex_count; ++x) out.push_back(NBPath{x, {}});
        return out;
    }
    for (int e = 0; e < g.directed_edge_count(); ++e) {
        NBPath p{g.edge_from[e], {e}};
        extend_paths(g, p, k - 1, out);
    }
    return out;
}

RegularGraph parse_edge_list_text(const std::string& text, int expected_q) {
    std::vector<std::pair<int, int>> edges;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        int u, v;
        if (ls >> u) {
            if (!(ls >> v)) {
                throw InvalidInput("parse_error: line " + std::to_string(line_no) +
                                   " has a lone vertex");
            }
            std::string extra;
            if (ls >> extra) {
                throw InvalidInput("parse_error: line " + std::to_string(line_no) +
                                   " has trailing tokens after the edge");
            }
            edges.emplace_back(u, v);
        } else {
            ls.clear();
            std::string word;
            if (ls >> word) {
                throw InvalidInput("parse_error: line " + std::to_string(line_no) +
                                   " is not an edge: '" + word + "'");
            }
        }
    }
    return build_graph(edges, expected_q);
}

std::string serialize_edge_list_text(const RegularGraph& g) {
    std::ostringstream out;
    out << "# " << g.vertex_count << " vertices, q = " << g.q << "\n";
    for (int e = 0; e < g.directed_edge_count(); e += 2) {
        out << g.edge_from[e] << " " << g.edge_to[e] << "\n";
    }
    return out.str();
}

RegularGraph parse_graph_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("parse_error: ") + e.what());
    }
    if (!j.contains("v") || !j.contains("edges")) {
        throw InvalidInput("parse_error: graph JSON needs \"v\" and \"edges\"");
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& pair : j["edges"]) {
        if (!pair.is_array() || pair.size() != 2) {
            throw InvalidInput("parse_error: edge entries must be [u, v]");
        }
        edges.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    int expected_q = j.contains("q") ? j["q"].get<int>() : -1;
    RegularGraph g = build_graph(edges, expected_q);
    if (g.vertex_count != j["v"].get<int>()) {
        throw InvalidInput("parse_error: vertex count field disagrees with edge list");
    }
    return g;
}

std::string serialize_graph_json(const RegularGraph& g) {
    nlohmann::json j;
    j["v"] = g.vertex_count;
    j["q"] = g.q;
    auto edges = nlohmann::json::array();
    for (int e = 0; e < g.directed_edge_count(); e += 2) {
        edges.push_back({g.edge_from[e], g.edge_to[e]});
    }
    j["edges"] = edges;
    return j.dump();
}

RegularGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("parse_error: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        return parse_graph_json(buf.str());
    }
    return parse_edge_list_text(buf.str());
}

std::vector<int> bfs_distances(const RegularGraph& g, int source) {
    std::vector<int> dist(g.vertex_count, -1);
    std::queue<int> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        int x = frontier.front();
        frontier.pop();
        for (int e : g.out_edges[x]) {
            int y = g.edge_to[e];
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                frontier.push(y);
            }
        }
    }
    return dist;
}

int graph_diameter(const RegularGraph& g) {
    int diam = 0;
    for (int x = 0; x < g.vertex_count; ++x) {
        for (int d : bfs_distances(g, x)) diam = std::max(diam, d);
    }
    return diam;
}

} // namespace treelift
