#include "treelift/symbols.hpp"

#include <sstream>

#include "treelift/errors.hpp"
#include "treelift/rng.hpp"

#include "json.hpp"

namespace treelift {

namespace {

size_t pow_q(int q, int e) {
    size_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<size_t>(q);
    return r;
}

int successor_rank(const RegularGraph& g, int e_prev, int e_next) {
    const auto& succ = g.successors[e_prev];
    for (size_t i = 0; i < succ.size(); ++i) {
        if (succ[i] == e_next) return static_cast<int>(i);
    }
    throw InvalidInput("bad_path: edge " + std::to_string(e_next) +
                       " does not extend edge " + std::to_string(e_prev));
}

void check_depth(const CylinderSymbol& a, const NBPath& p) {
    if (p.length() != a.depth) {
        throw InvalidInput("bad_path: path length " + std::to_string(p.length()) +
                           " != symbol depth " + std::to_string(a.depth));
    }
}

} // namespace

size_t symbol_size(const RegularGraph& g, int depth) {
    if (depth < 0) throw InvalidInput("bad_depth: negative symbol depth");
    if (depth == 0) return static_cast<size_t>(g.vertex_count);
    return static_cast<size_t>(g.directed_edge_count()) * pow_q(g.q, depth - 1);
}

size_t symbol_index(const RegularGraph& g, const NBPath& p) {
    const int k = p.length();
    if (k == 0) return static_cast<size_t>(p.base);
    size_t idx = static_cast<size_t>(p.edges[0]);
    for (int j = 1; j < k; ++j) {
        idx = idx * g.q + successor_rank(g, p.edges[j - 1], p.edges[j]);
    }
    return idx;
}

cx symbol_value(const RegularGraph& g, const CylinderSymbol& a, const NBPath& p) {
    check_depth(a, p);
    return a.values[symbol_index(g, p)];
}

CylinderSymbol symbol_constant(const RegularGraph& g, int depth, cx c) {
    CylinderSymbol a;
    a.depth = depth;
    a.values.assign(symbol_size(g, depth), c);
    return a;
}

CylinderSymbol symbol_random(const RegularGraph& g, int depth, uint64_t seed) {
    CylinderSymbol a;
    a.depth = depth;
    a.values.resize(symbol_size(g, depth));
    Rng rng(seed);
    for (cx& v : a.values) {
        const double re = rng.next_symmetric();
        const double im = rng.next_symmetric();
        v = cx(re, im);
    }
    return a;
}

CylinderSymbol refine(const RegularGraph& g, const CylinderSymbol& a) {
    CylinderSymbol out;
    out.depth = a.depth + 1;
    out.values.resize(symbol_size(g, out.depth));
    if (a.depth == 0) {
        // Depth-1 index is just the first edge id.
        for (int e = 0; e < g.directed_edge_count(); ++e) {
            out.values[e] = a.values[g.edge_from[e]];
        }
        return out;
    }
    // The last successor choice is the least significant digit.
    for (size_t i = 0; i < a.values.size(); ++i) {
        for (int c = 0; c < g.q; ++c) {
            out.values[i * g.q + c] = a.values[i];
        }
    }
    return out;
}

CylinderSymbol refine_to(const RegularGraph& g, const CylinderSymbol& a, int depth) {
    if (depth < a.depth) {
        throw InvalidInput("bad_depth: cannot refine depth " + std::to_string(a.depth) +
                           " down to " + std::to_string(depth));
    }
    CylinderSymbol out = a;
    while (out.depth < depth) out = refine(g, out);
    return out;
}

CylinderSymbol lin_comb(const RegularGraph& g, cx ca, const CylinderSymbol& a,
                        cx cb, const CylinderSymbol& b) {
    const int depth = std::max(a.depth, b.depth);
    CylinderSymbol ra = refine_to(g, a, depth);
    const CylinderSymbol rb = refine_to(g, b, depth);
    for (size_t i = 0; i < ra.values.size(); ++i) {
        ra.values[i] = ca * ra.values[i] + cb * rb.values[i];
    }
    return ra;
}

namespace {

CylinderSymbol transfer_once(const RegularGraph& g, const CylinderSymbol& a) {
    const int k = a.depth;
    const int out_depth = std::max(k - 1, 1);
    CylinderSymbol out;
    out.depth = out_depth;
    out.values.resize(symbol_size(g, out_depth));

    for (const NBPath& p : nb_paths_all(g, out_depth)) {
        const int x = p.base;
        cx acc(0.0, 0.0);
        // Edges into x are reverses of edges out of x; skip the one that
        // would backtrack against the path's first edge.
        for (int h : g.out_edges[x]) {
            if (h == p.edges[0]) continue;
            const int e0 = RegularGraph::reverse(h);
            if (k == 0) {
                acc += a.values[g.edge_from[e0]];
                continue;
            }
            NBPath pre;
            pre.base = g.edge_from[e0];
            pre.edges.push_back(e0);
            for (int j = 0; j + 1 < k; ++j) pre.edges.push_back(p.edges[j]);
            acc += symbol_value(g, a, pre);
        }
        out.values[symbol_index(g, p)] = acc;
    }
    return out;
}

} // namespace

CylinderSymbol transfer_pow(const RegularGraph& g, const CylinderSymbol& a, int n) {
    if (n < 0) throw InvalidInput("bad_depth: transfer power must be >= 0");
    CylinderSymbol out = a;
    for (int i = 0; i < n; ++i) out = transfer_once(g, out);
    return out;
}

namespace {

// Recursive backward extension for the branch sum: edges g_m, g_{m-1}, ...
// are chosen into the path start, each avoiding the reversal of the one
// chosen before it. `suffix` holds (g_j, .., g_m, f_{m+1}, .., f_K).
void branch_descend(const RegularGraph& g, const CylinderSymbol& a, int remaining,
                    std::vector<int>& suffix, cx& acc) {
    if (remaining == 0) {
        NBPath p;
        p.base = g.edge_from[suffix.front()];
        p.edges.assign(suffix.begin(), suffix.begin() + a.depth);
        if (a.depth == 0) {
            acc += a.values[p.base];
        } else {
            acc += symbol_value(g, a, p);
        }
        return;
    }
    const int first = suffix.front();
    const int x = g.edge_from[first];
    for (int h : g.out_edges[x]) {
        if (h == first) continue;
        suffix.insert(suffix.begin(), RegularGraph::reverse(h));
        branch_descend(g, a, remaining - 1, suffix, acc);
        suffix.erase(suffix.begin());
    }
}

} // namespace

CylinderSymbol branch_sum(const RegularGraph& g, const CylinderSymbol& a, int m) {
    if (m < 0) throw InvalidInput("bad_depth: branch order must be >= 0");
    if (m == 0) return a;

    const int k = a.depth;
    const int out_depth = std::max(m + 1, k);
    CylinderSymbol out;
    out.depth = out_depth;
    out.values.resize(symbol_size(g, out_depth));

    for (const NBPath& p : nb_paths_all(g, out_depth)) {
        // Vertex x_{m+1} sits after m edges; the rejoining edge g_m enters it
        // and must differ from f_m and from reverse(f_{m+1}).
        const int xm1 = g.edge_to[p.edges[m - 1]];
        const int fm = p.edges[m - 1];
        const int rev_fm1 = RegularGraph::reverse(p.edges[m]);
        cx acc(0.0, 0.0);
        for (int h : g.out_edges[xm1]) {
            const int gm = RegularGraph::reverse(h);
            if (gm == fm || gm == rev_fm1) continue;
            std::vector<int> suffix;
            suffix.push_back(gm);
            for (int j = m; j < out_depth; ++j) suffix.push_back(p.edges[j]);
            branch_descend(g, a, m - 1, suffix, acc);
        }
        out.values[symbol_index(g, p)] = acc;
    }
    return out;
}

std::string symbol_to_json(const RegularGraph& g, const CylinderSymbol& a) {
    nlohmann::ordered_json root;
    root["depth"] = a.depth;
    auto entries = nlohmann::ordered_json::array();
    if (a.depth == 0) {
        for (int x = 0; x < g.vertex_count; ++x) {
            nlohmann::ordered_json e;
            e["path"] = nlohmann::ordered_json::array({x});
            e["re"] = a.values[x].real();
            e["im"] = a.values[x].imag();
            entries.push_back(std::move(e));
        }
    } else {
        for (const NBPath& p : nb_paths_all(g, a.depth)) {
            nlohmann::ordered_json e;
            e["path"] = p.edges;
            e["re"] = symbol_value(g, a, p).real();
            e["im"] = symbol_value(g, a, p).imag();
            entries.push_back(std::move(e));
        }
    }
    root["entries"] = std::move(entries);
    return root.dump(2);
}

} // namespace treelift
