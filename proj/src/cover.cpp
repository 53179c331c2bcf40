#include "treelift/cover.hpp"

#include <algorithm>
#include <cmath>

#include "treelift/errors.hpp"

namespace treelift {

namespace {

cx ipow(cx z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cx r(1.0, 0.0);
    cx b = z;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

// The backward side always runs at the conjugate branch of the second
// parameter, matching the resonant-module convention.
cx backward_mu(const SpectralParameter& sp_prime) {
    return std::sqrt(static_cast<double>(sp_prime.q)) * std::conj(sp_prime.z);
}

} // namespace

int TruncatedCover::meet(int x, int y) const {
    while (depth[x] > depth[y]) x = parent[x];
    while (depth[y] > depth[x]) y = parent[y];
    while (x != y) {
        x = parent[x];
        y = parent[y];
    }
    return x;
}

int TruncatedCover::distance(int x, int y) const {
    return depth[x] + depth[y] - 2 * depth[meet(x, y)];
}

std::vector<int> TruncatedCover::path_toward(int x, int target, int count) const {
    const int c = meet(x, target);
    std::vector<int> rise;
    for (int v = target; v != c; v = parent[v]) rise.push_back(v);

    std::vector<int> out;
    out.reserve(count);
    int cur = x;
    while (static_cast<int>(out.size()) < count && cur != c) {
        cur = parent[cur];
        out.push_back(cur);
    }
    for (int i = static_cast<int>(rise.size()) - 1;
         i >= 0 && static_cast<int>(out.size()) < count; --i) {
        out.push_back(rise[i]);
    }
    if (static_cast<int>(out.size()) < count) {
        throw InvalidInput("support_too_wide: geodesic shorter than the requested prefix");
    }
    return out;
}

int TruncatedCover::project_step(int x, int next) const {
    if (parent[next] == x) return edge_down[next];
    if (parent[x] == next) return RegularGraph::reverse(edge_down[x]);
    throw InvalidInput("bad_path: vertices are not tree neighbors");
}

TruncatedCover build_cover(const RegularGraph& g, int root_vertex, int radius,
                           int vertex_budget) {
    if (radius < 1) throw InvalidInput("bad_depth: cover radius must be >= 1");
    if (root_vertex < 0 || root_vertex >= g.vertex_count) {
        throw InvalidInput("bad_vertex: cover root outside the graph");
    }
    double predicted = 1.0;
    double sphere = g.q + 1.0;
    for (int d = 1; d <= radius; ++d) {
        predicted += sphere;
        sphere *= g.q;
    }
    if (predicted > static_cast<double>(vertex_budget)) {
        throw InvalidInput("depth_too_large: truncation would need " +
                           std::to_string(static_cast<long long>(predicted)) +
                           " vertices against a budget of " + std::to_string(vertex_budget));
    }

    TruncatedCover cov;
    cov.base = g;
    cov.radius = radius;
    cov.parent.push_back(-1);
    cov.depth.push_back(0);
    cov.graph_vertex.push_back(root_vertex);
    cov.edge_down.push_back(-1);
    cov.children.emplace_back();

    auto add_child = [&](int v, int e) {
        cov.parent.push_back(v);
        cov.depth.push_back(cov.depth[v] + 1);
        cov.graph_vertex.push_back(g.edge_to[e]);
        cov.edge_down.push_back(e);
        cov.children.emplace_back();
        cov.children[v].push_back(static_cast<int>(cov.parent.size()) - 1);
    };

    // Ids come out in breadth-first order because the scan index only ever
    // appends deeper vertices.
    for (int v = 0; v < static_cast<int>(cov.parent.size()); ++v) {
        if (cov.depth[v] == radius) continue;
        if (v == 0) {
            for (int e : g.out_edges[root_vertex]) add_child(v, e);
        } else {
            for (int e : g.successors[cov.edge_down[v]]) add_child(v, e);
        }
    }

    cov.canonical.assign(cov.vertex_count(), 0);
    cov.canonical_lift.assign(g.vertex_count, -1);
    for (int v = 0; v < cov.vertex_count(); ++v) {
        const int gv = cov.graph_vertex[v];
        if (cov.canonical_lift[gv] == -1) {
            cov.canonical_lift[gv] = v;
            cov.canonical[v] = 1;
        }
    }
    return cov;
}

std::vector<char> canonical_reflag(const TruncatedCover& cov, int tree_start) {
    if (tree_start < 0 || tree_start >= cov.vertex_count()) {
        throw InvalidInput("bad_vertex: reflag start outside the cover");
    }
    std::vector<char> flags(cov.vertex_count(), 0);
    std::vector<char> seen(cov.base.vertex_count, 0);
    std::vector<char> visited(cov.vertex_count(), 0);
    std::vector<int> queue{tree_start};
    visited[tree_start] = 1;
    for (size_t i = 0; i < queue.size(); ++i) {
        const int v = queue[i];
        if (!seen[cov.graph_vertex[v]]) {
            seen[cov.graph_vertex[v]] = 1;
            flags[v] = 1;
        }
        auto push = [&](int w) {
            if (w >= 0 && !visited[w]) {
                visited[w] = 1;
                queue.push_back(w);
            }
        };
        push(cov.parent[v]);
        for (int c : cov.children[v]) push(c);
    }
    return flags;
}

int horocycle_bracket(const TruncatedCover& cov, int x, BoundaryCylinder c) {
    const int y = c.vertex;
    if (cov.depth[y] <= cov.depth[x] + 1) {
        throw InvalidInput("cylinder_too_shallow: bracket not constant on the cylinder");
    }
    return 2 * cov.depth[cov.meet(x, y)] - cov.depth[x];
}

std::vector<cx> lift_function(const TruncatedCover& cov, const std::vector<cx>& f) {
    if (static_cast<int>(f.size()) != cov.base.vertex_count) {
        throw InvalidInput("bad_shape: lift input length != base vertex count");
    }
    std::vector<cx> out(cov.vertex_count());
    for (int v = 0; v < cov.vertex_count(); ++v) out[v] = f[cov.graph_vertex[v]];
    return out;
}

cx boundary_measure(const TruncatedCover& cov, const std::vector<cx>& lift,
                    const SpectralParameter& sp, BoundaryCylinder c, int base_x) {
    if (sp.exceptional()) {
        throw InvalidInput("exceptional_parameter: no boundary value at lambda = " +
                           std::to_string(sp.lambda));
    }
    const int y = c.vertex;
    if (cov.meet(base_x, y) == y) {
        throw InvalidInput("cylinder_too_shallow: cylinder does not separate from the base point");
    }
    const cx mu = sp.mu;
    const int d = cov.distance(base_x, y);
    return ipow(mu, -(d - 1)) * (lift[y] - lift[cov.parent[y]] / mu) / (mu - 1.0 / mu);
}

std::vector<cx> boundary_measure_table(const TruncatedCover& cov,
                                       const std::vector<cx>& lift,
                                       const SpectralParameter& sp) {
    if (sp.exceptional()) {
        throw InvalidInput("exceptional_parameter: no boundary value at lambda = " +
                           std::to_string(sp.lambda));
    }
    const cx mu = sp.mu;
    const cx scale = ipow(mu, -(cov.radius - 1)) / (mu - 1.0 / mu);
    std::vector<cx> t(cov.vertex_count(), cx(0.0, 0.0));
    for (int v = 0; v < cov.vertex_count(); ++v) {
        if (cov.depth[v] == cov.radius) {
            t[v] = scale * (lift[v] - lift[cov.parent[v]] / mu);
        }
    }
    return t;
}

std::vector<cx> harmonic_measure_table(const TruncatedCover& cov) {
    double mass = 1.0 / (cov.base.q + 1);
    for (int d = 1; d < cov.radius; ++d) mass /= cov.base.q;
    std::vector<cx> t(cov.vertex_count(), cx(0.0, 0.0));
    for (int v = 0; v < cov.vertex_count(); ++v) {
        if (cov.depth[v] == cov.radius) t[v] = cx(mass, 0.0);
    }
    return t;
}

namespace {

// Per-directed-tree-edge mass sums: down[v] aggregates the depth-R masses in
// v's subtree seen from its parent, up[v] the complement seen from v, both
// carrying one factor of 1/mu per step walked. Everything poisson_forward
// and the cylinder pair sums need comes out of one O(V) build.
struct EdgeSums {
    std::vector<cx> down;
    std::vector<cx> up;
    std::vector<cx> child_sum;
};

EdgeSums edge_sums(const TruncatedCover& cov, const std::vector<cx>& table, cx mu) {
    const int n = cov.vertex_count();
    const cx inv = 1.0 / mu;
    EdgeSums s;
    s.down.assign(n, cx(0.0, 0.0));
    s.up.assign(n, cx(0.0, 0.0));
    s.child_sum.assign(n, cx(0.0, 0.0));
    for (int v = n - 1; v >= 1; --v) {
        const cx inner = (cov.depth[v] == cov.radius) ? table[v] : s.child_sum[v];
        s.down[v] = inv * inner;
        s.child_sum[cov.parent[v]] += s.down[v];
    }
    for (int v = 1; v < n; ++v) {
        const int p = cov.parent[v];
        const cx outside =
            s.child_sum[p] - s.down[v] + (p == 0 ? cx(0.0, 0.0) : s.up[p]);
        s.up[v] = inv * outside;
    }
    return s;
}

cx poisson_from_sums(const TruncatedCover& cov, const EdgeSums& s,
                     const std::vector<cx>& table, cx mu_pow_r, int v) {
    cx acc = s.child_sum[v] + (v == 0 ? cx(0.0, 0.0) : s.up[v]);
    if (cov.depth[v] == cov.radius) acc += table[v];
    return mu_pow_r * acc;
}

} // namespace

cx poisson_forward(const TruncatedCover& cov, const std::vector<cx>& table,
                   const SpectralParameter& sp, int x) {
    if (cov.depth[x] > cov.radius - 2) {
        throw InvalidInput("cylinder_too_shallow: point within one step of the truncation");
    }
    const EdgeSums s = edge_sums(cov, table, sp.mu);
    return poisson_from_sums(cov, s, table, ipow(sp.mu, cov.radius), x);
}

std::vector<cx> poisson_forward_all(const TruncatedCover& cov,
                                    const std::vector<cx>& table,
                                    const SpectralParameter& sp) {
    const EdgeSums s = edge_sums(cov, table, sp.mu);
    const cx mu_r = ipow(sp.mu, cov.radius);
    std::vector<cx> out(cov.vertex_count());
    for (int v = 0; v < cov.vertex_count(); ++v) {
        out[v] = poisson_from_sums(cov, s, table, mu_r, v);
    }
    return out;
}

TreePhaseFunction lcfd_symbol_function(const TruncatedCover& cov, const CylinderSymbol& a) {
    return lcfd_symbol_function(cov, a, cov.canonical);
}

TreePhaseFunction lcfd_symbol_function(const TruncatedCover& cov, const CylinderSymbol& a,
                                       const std::vector<char>& flags) {
    int maxd = 0;
    for (int v = 0; v < cov.vertex_count(); ++v) {
        if (flags[v]) maxd = std::max(maxd, cov.depth[v]);
    }
    TreePhaseFunction f;
    f.needs_forward = a.depth;
    f.max_support_depth = maxd;
    const TruncatedCover* pc = &cov;
    f.eval = [pc, a, flags](int x, int toward) -> cx {
        if (!flags[x]) return cx(0.0, 0.0);
        if (a.depth == 0) return a.values[pc->graph_vertex[x]];
        NBPath p;
        p.base = pc->graph_vertex[x];
        int cur = x;
        for (int v : pc->path_toward(x, toward, a.depth)) {
            p.edges.push_back(pc->project_step(cur, v));
            cur = v;
        }
        return symbol_value(pc->base, a, p);
    };
    return f;
}

namespace {

// All side points at distance steps_left from `cur` moving away from where
// we came from. Branches that would cross the truncation are dropped: such
// points lie deeper than any support the caller may use, so they carry 0.
void horocycle_collect(const TruncatedCover& cov, const TreePhaseFunction& f, int cur,
                       int prev, int steps_left, int toward, cx& acc) {
    if (steps_left == 0) {
        acc += f.eval(cur, toward);
        return;
    }
    const int par = cov.parent[cur];
    if (par >= 0 && par != prev) {
        horocycle_collect(cov, f, par, cur, steps_left - 1, toward, acc);
    }
    for (int c : cov.children[cur]) {
        if (c != prev) horocycle_collect(cov, f, c, cur, steps_left - 1, toward, acc);
    }
}

} // namespace

TreePhaseFunction intertwiner(const TruncatedCover& cov, const TreePhaseFunction& f,
                              const SpectralParameter& sp_prime, int n) {
    if (n < 0) throw InvalidInput("bad_depth: smoothing order must be >= 0");
    if (n == 0) return f;
    if (f.max_support_depth + 2 * n > cov.radius) {
        throw InvalidInput("support_too_wide: smoothing reaches the truncation boundary");
    }
    const TruncatedCover* pc = &cov;
    const cx mu_w = backward_mu(sp_prime);
    TreePhaseFunction out;
    out.needs_forward = n + std::max(f.needs_forward, 1);
    out.max_support_depth = f.max_support_depth + 2 * n;
    out.eval = [pc, f, mu_w, n](int x, int toward) -> cx {
        cx acc = f.eval(x, toward);
        const auto path = pc->path_toward(x, toward, n + 1);
        const cx w2 = 1.0 / (mu_w * mu_w);
        cx weight(1.0, 0.0);
        for (int m = 1; m <= n; ++m) {
            weight *= w2;
            const int vm = path[m - 1];
            const int before = (m >= 2) ? path[m - 2] : x;
            const int after = path[m];
            cx side(0.0, 0.0);
            const int par = pc->parent[vm];
            if (par >= 0 && par != before && par != after) {
                horocycle_collect(*pc, f, par, vm, m - 1, toward, side);
            }
            for (int c : pc->children[vm]) {
                if (c != before && c != after) {
                    horocycle_collect(*pc, f, c, vm, m - 1, toward, side);
                }
            }
            acc += weight * side;
        }
        return acc;
    };
    return out;
}

cx radon_transform(const TruncatedCover& cov, const TreePhaseFunction& f,
                   const SpectralParameter& sp, const SpectralParameter& sp_prime,
                   BoundaryCylinder c_plus, BoundaryCylinder c_minus) {
    const int y = c_plus.vertex;
    const int yp = c_minus.vertex;
    const int c = cov.meet(y, yp);
    if (c == y || c == yp) {
        throw InvalidInput("cylinders_overlap: geodesic between the cylinders is undefined");
    }

    std::vector<int> seg;
    for (int v = yp; v != c; v = cov.parent[v]) seg.push_back(v);
    seg.push_back(c);
    std::vector<int> rise;
    for (int v = y; v != c; v = cov.parent[v]) rise.push_back(v);
    for (int i = static_cast<int>(rise.size()) - 1; i >= 0; --i) seg.push_back(rise[i]);

    const cx mu_u = sp.mu;
    const cx mu_w = backward_mu(sp_prime);
    cx acc(0.0, 0.0);
    for (int x : seg) {
        if (cov.depth[x] > f.max_support_depth) continue;
        const cx val = f.eval(x, y);
        if (val == cx(0.0, 0.0)) continue;
        const int br_plus = cov.depth[y] - cov.distance(x, y);
        const int br_minus = cov.depth[yp] - cov.distance(x, yp);
        acc += val * ipow(mu_u, br_plus) * ipow(mu_w, br_minus);
    }
    return acc;
}

// The pair sum below never loops over pairs. Grouping the double sum by the
// support vertex x sitting on the connecting geodesic, the two cylinder
// choices decouple into independent mass sums over the subtrees hanging off
// x in the forward-prefix direction and in each remaining direction, and
// those are exactly the edge_sums tables. This is an identical finite sum,
// reordered; cylinder_pair_sum_direct keeps the literal order for tests.
cx cylinder_pair_sum(const TruncatedCover& cov, const TreePhaseFunction& f,
                     const SpectralParameter& sp, const SpectralParameter& sp_prime,
                     const std::vector<cx>& table_u, const std::vector<cx>& table_w) {
    if (f.max_support_depth >= cov.radius) {
        throw InvalidInput("depth_too_small: support reaches the truncation boundary");
    }
    const cx mu_u = sp.mu;
    const cx mu_w = backward_mu(sp_prime);
    const EdgeSums su = edge_sums(cov, table_u, mu_u);
    const EdgeSums sw = edge_sums(cov, table_w, mu_w);
    const int p_eff = std::max(f.needs_forward, 1);
    const cx pref = ipow(mu_u, cov.radius - p_eff) * ipow(mu_w, cov.radius);

    cx total(0.0, 0.0);
    std::vector<int> pathv;
    int x = 0;

    std::function<void(int, int)> extend = [&](int cur, int prev) {
        if (static_cast<int>(pathv.size()) == p_eff) {
            const cx val = f.eval(x, cur);
            if (val == cx(0.0, 0.0)) return;
            const int before_end = (p_eff >= 2) ? pathv[p_eff - 2] : x;
            cx gsum = su.child_sum[cur] + (cur == 0 ? cx(0.0, 0.0) : su.up[cur]);
            gsum -= (cov.parent[cur] == before_end) ? su.up[cur] : su.down[before_end];
            if (cov.depth[cur] == cov.radius) gsum += table_u[cur];

            const int first = pathv[0];
            cx wsum = sw.child_sum[x] + (x == 0 ? cx(0.0, 0.0) : sw.up[x]);
            wsum -= (cov.parent[first] == x) ? sw.down[first] : sw.up[x];

            total += val * pref * gsum * wsum;
            return;
        }
        const int par = cov.parent[cur];
        if (par >= 0 && par != prev) {
            pathv.push_back(par);
            extend(par, cur);
            pathv.pop_back();
        }
        for (int c : cov.children[cur]) {
            if (c != prev) {
                pathv.push_back(c);
                extend(c, cur);
                pathv.pop_back();
            }
        }
    };

    for (x = 0; x < cov.vertex_count(); ++x) {
        if (cov.depth[x] > f.max_support_depth) continue;
        pathv.clear();
        extend(x, -1);
    }
    return total;
}

cx cylinder_pair_sum_direct(const TruncatedCover& cov, const TreePhaseFunction& f,
                            const SpectralParameter& sp, const SpectralParameter& sp_prime,
                            const std::vector<cx>& table_u, const std::vector<cx>& table_w) {
    cx total(0.0, 0.0);
    for (int v = 0; v < cov.vertex_count(); ++v) {
        if (cov.depth[v] != cov.radius) continue;
        for (int w = 0; w < cov.vertex_count(); ++w) {
            if (w == v || cov.depth[w] != cov.radius) continue;
            total += table_u[v] * table_w[w] *
                     radon_transform(cov, f, sp, sp_prime, {v}, {w});
        }
    }
    return total;
}

cx classical_ps(const TruncatedCover& cov, const CylinderSymbol& a,
                const DistributionContext& ctx) {
    return classical_ps_with_flags(cov, a, ctx, cov.canonical);
}

cx classical_ps_with_flags(const TruncatedCover& cov, const CylinderSymbol& a,
                           const DistributionContext& ctx, const std::vector<char>& flags) {
    const TreePhaseFunction f = lcfd_symbol_function(cov, a, flags);
    if (cov.radius < f.max_support_depth + std::max(a.depth, 1) + 2) {
        throw InvalidInput("depth_too_small: truncation cannot hold the lifted symbol");
    }
    const auto table_u = boundary_measure_table(cov, lift_function(cov, ctx.phi), ctx.sp);
    std::vector<cx> psi(ctx.phi_prime.size());
    for (size_t i = 0; i < psi.size(); ++i) psi[i] = std::conj(ctx.phi_prime[i]);
    const SpectralParameter sp_b =
        parameter_from_z(std::conj(ctx.sp_prime.z), ctx.sp_prime.q);
    const auto table_w = boundary_measure_table(cov, lift_function(cov, psi), sp_b);
    return cylinder_pair_sum(cov, f, ctx.sp, ctx.sp_prime, table_u, table_w);
}

std::vector<cx> op_apply_cover(const TruncatedCover& cov, const CylinderSymbol& a,
                               const std::vector<cx>& phi, const SpectralParameter& sp) {
    const auto table = boundary_measure_table(cov, lift_function(cov, phi), sp);
    std::vector<cx> out(cov.base.vertex_count, cx(0.0, 0.0));
    for (int gx = 0; gx < cov.base.vertex_count; ++gx) {
        const int x = cov.canonical_lift[gx];
        if (x < 0 || cov.depth[x] + std::max(a.depth, 1) + 1 > cov.radius) {
            throw InvalidInput("depth_too_small: no usable lift for vertex " +
                               std::to_string(gx));
        }
        cx acc(0.0, 0.0);
        for (int y = 0; y < cov.vertex_count(); ++y) {
            if (cov.depth[y] != cov.radius) continue;
            cx aval;
            if (a.depth == 0) {
                aval = a.values[gx];
            } else {
                NBPath p;
                p.base = gx;
                int cur = x;
                for (int v : cov.path_toward(x, y, a.depth)) {
                    p.edges.push_back(cov.project_step(cur, v));
                    cur = v;
                }
                aval = symbol_value(cov.base, a, p);
            }
            if (aval == cx(0.0, 0.0)) continue;
            acc += table[y] * ipow(sp.mu, cov.radius - cov.distance(x, y)) * aval;
        }
        out[gx] = acc;
    }
    return out;
}

std::vector<int> descendants_at_depth(const TruncatedCover& cov, int v, int depth) {
    if (depth < cov.depth[v]) {
        throw InvalidInput("bad_depth: requested depth above the cylinder vertex");
    }
    std::vector<int> out;
    std::vector<int> stack{v};
    while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        if (cov.depth[c] == depth) {
            out.push_back(c);
            continue;
        }
        for (int ch : cov.children[c]) stack.push_back(ch);
    }
    return out;
}

cx measure_limit(const TruncatedCover& cov, const SpectralParameter& sp,
                 BoundaryCylinder u, int n, const std::vector<cx>& table) {
    if (std::abs(sp.z) < 1.0 + 1e-9) {
        throw InvalidInput("tempered_parameter: recovery needs |z| > 1");
    }
    if (n < cov.depth[u.vertex]) {
        throw InvalidInput("bad_depth: approximant order above the cylinder depth");
    }
    if (n > cov.radius - 2) {
        throw InvalidInput("cylinder_too_shallow: approximant order too close to the truncation");
    }
    const std::vector<cx> tab = table.empty() ? harmonic_measure_table(cov) : table;
    const std::vector<cx> phi = poisson_forward_all(cov, tab, sp);
    cx sum(0.0, 0.0);
    for (int x : descendants_at_depth(cov, u.vertex, n)) sum += phi[x];
    const cx z2 = sp.z * sp.z;
    // The convergent normalization is the reciprocal of the printed one;
    // kept visible in reports under the "prefactor" key.
    const cx prefactor = (z2 - 1.0) / (z2 - 1.0 / static_cast<double>(cov.base.q));
    return prefactor * ipow(sp.mu, -n) * sum;
}

} // namespace treelift
