#include "treelift/distributions.hpp"

#include <cmath>

#include "treelift/errors.hpp"
#include "treelift/linalg.hpp"

namespace treelift {

namespace {

std::vector<cx> complexify(const std::vector<double>& v) {
    std::vector<cx> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = cx(v[i], 0.0);
    return out;
}

std::vector<cx> conjugate(const std::vector<cx>& v) {
    std::vector<cx> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = std::conj(v[i]);
    return out;
}

} // namespace

DistributionContext make_context(const RegularGraph& g,
                                 const std::vector<cx>& phi, const SpectralParameter& sp,
                                 const std::vector<cx>& phi_prime,
                                 const SpectralParameter& sp_prime) {
    DistributionContext ctx;
    ctx.graph = &g;
    ctx.phi = phi;
    ctx.phi_prime = phi_prime;
    ctx.sp = sp;
    ctx.sp_prime = sp_prime;
    ctx.u = resonant_state(g, phi, sp);
    const SpectralParameter back = parameter_from_z(std::conj(sp_prime.z), sp_prime.q);
    ctx.w = coresonant_state(g, conjugate(phi_prime), back);
    return ctx;
}

DistributionContext diagonal_context(const RegularGraph& g,
                                     const std::vector<double>& phi,
                                     const SpectralParameter& sp) {
    const std::vector<cx> cphi = complexify(phi);
    return make_context(g, cphi, sp, cphi, conjugate_parameter(sp));
}

DistributionContext pair_context(const RegularGraph& g,
                                 const std::vector<double>& phi, const SpectralParameter& sp,
                                 const std::vector<double>& phi_prime,
                                 const SpectralParameter& sp_prime) {
    return make_context(g, complexify(phi), sp, complexify(phi_prime),
                        conjugate_parameter(sp_prime));
}

std::vector<cx> op_apply(const RegularGraph& g, const CylinderSymbol& a,
                         const std::vector<cx>& phi, const SpectralParameter& sp) {
    std::vector<cx> out(g.vertex_count, cx(0.0, 0.0));
    if (a.depth == 0) {
        for (int x = 0; x < g.vertex_count; ++x) out[x] = a.values[x] * phi[x];
        return out;
    }
    const ResonantState u = resonant_state(g, phi, sp);
    for (int x = 0; x < g.vertex_count; ++x) {
        cx acc(0.0, 0.0);
        for (const NBPath& p : nb_paths(g, x, a.depth)) {
            acc += symbol_value(g, a, p) * cylinder_value(u, p);
        }
        out[x] = acc;
    }
    return out;
}

cx wigner(const CylinderSymbol& a, const DistributionContext& ctx) {
    const std::vector<cx> op = op_apply(*ctx.graph, a, ctx.phi, ctx.sp);
    cx acc(0.0, 0.0);
    for (int x = 0; x < ctx.graph->vertex_count; ++x) {
        acc += op[x] * std::conj(ctx.phi_prime[x]);
    }
    return acc;
}

cx ps_tensor(const RegularGraph& g, const ResonantState& u, const ResonantState& w,
             const CylinderSymbol& a) {
    if (u.orientation != Orientation::forward || w.orientation != Orientation::backward) {
        throw InvalidInput("bad_orientation: ps_tensor takes (forward, backward)");
    }
    // Backward pushforward at each vertex; each path start subtracts the one
    // edge that would backtrack into it.
    std::vector<cx> wsum(g.vertex_count, cx(0.0, 0.0));
    for (int x = 0; x < g.vertex_count; ++x) {
        for (int h : g.out_edges[x]) wsum[x] += w.v[RegularGraph::reverse(h)];
    }

    cx acc(0.0, 0.0);
    if (a.depth == 0) {
        for (int x = 0; x < g.vertex_count; ++x) {
            cx usum(0.0, 0.0), diag(0.0, 0.0);
            for (int h : g.out_edges[x]) {
                usum += u.v[h];
                diag += u.v[h] * w.v[RegularGraph::reverse(h)];
            }
            acc += a.values[x] * (usum * wsum[x] - diag);
        }
        return acc;
    }
    for (int x = 0; x < g.vertex_count; ++x) {
        for (const NBPath& p : nb_paths(g, x, a.depth)) {
            const cx t = wsum[x] - w.v[RegularGraph::reverse(p.edges[0])];
            acc += symbol_value(g, a, p) * cylinder_value(u, p) * t;
        }
    }
    return acc;
}

cx patterson_sullivan(const CylinderSymbol& a, const DistributionContext& ctx) {
    return ps_tensor(*ctx.graph, ctx.u, ctx.w, a);
}

cx ps_tensor_shifted(const RegularGraph& g, const ResonantState& u, const ResonantState& w,
                     const CylinderSymbol& a) {
    if (u.orientation != Orientation::forward || w.orientation != Orientation::backward) {
        throw InvalidInput("bad_orientation: ps_tensor_shifted takes (forward, backward)");
    }
    std::vector<cx> wsum(g.vertex_count, cx(0.0, 0.0));
    for (int x = 0; x < g.vertex_count; ++x) {
        for (int h : g.out_edges[x]) wsum[x] += w.v[RegularGraph::reverse(h)];
    }
    // ext(e) is the literal one-step extension sum. Nothing here assumes the
    // eigen-relation; when it holds, ext(e) = mu * u(e) edge by edge.
    std::vector<cx> ext(g.directed_edge_count(), cx(0.0, 0.0));
    for (int e = 0; e < g.directed_edge_count(); ++e) {
        for (int h : g.successors[e]) ext[e] += u.v[h];
    }

    cx acc(0.0, 0.0);
    if (a.depth == 0) {
        for (int x = 0; x < g.vertex_count; ++x) {
            cx esum(0.0, 0.0), diag(0.0, 0.0);
            for (int h : g.out_edges[x]) {
                esum += ext[h];
                diag += ext[h] * w.v[RegularGraph::reverse(h)];
            }
            acc += a.values[x] * (esum * wsum[x] - diag);
        }
        return acc;
    }
    // Same mu^{-(depth-1)} normalization as cylinder_value, so the advanced
    // mass of a path carries exactly one uncancelled transfer factor.
    cx scale(1.0, 0.0);
    for (int k = 1; k < a.depth; ++k) scale /= u.mu;
    for (int x = 0; x < g.vertex_count; ++x) {
        for (const NBPath& p : nb_paths(g, x, a.depth)) {
            const cx t = wsum[x] - w.v[RegularGraph::reverse(p.edges[0])];
            acc += symbol_value(g, a, p) * (scale * ext[p.edges.back()]) * t;
        }
    }
    return acc;
}

namespace {

// Inverse through Gaussian elimination; the pivot threshold decides
// "singular_gram" rather than silently amplifying noise.
CMat invert_or_throw(CMat g, double rank_tol) {
    const int n = g.rows;
    CMat inv(n, n);
    for (int i = 0; i < n; ++i) inv.at(i, i) = cx(1.0, 0.0);
    double scale = 0.0;
    for (const cx& v : g.a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw NumericalError("singular_gram: zero pairing matrix");

    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(g.at(r, col)) > std::abs(g.at(best, col))) best = r;
        }
        if (std::abs(g.at(best, col)) <= rank_tol * scale) {
            throw NumericalError("singular_gram: pairing matrix rank-deficient");
        }
        if (best != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(g.at(best, c), g.at(col, c));
                std::swap(inv.at(best, c), inv.at(col, c));
            }
        }
        const cx p = g.at(col, col);
        for (int c = 0; c < n; ++c) {
            g.at(col, c) /= p;
            inv.at(col, c) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const cx f = g.at(r, col);
            if (f == cx(0.0, 0.0)) continue;
            for (int c = 0; c < n; ++c) {
                g.at(r, c) -= f * g.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

// Kernel bases on both sides at mu(lambda), with the backward side
// recombined so the geodesic pairing Gram is the identity. Both trace
// variants below sum tensors of these pairs.
struct ResonancePairs {
    std::vector<ResonantState> us;
    std::vector<ResonantState> wts;
};

ResonancePairs resonance_projector(const RegularGraph& g, double lambda) {
    const SpectralParameter sp = spectral_parameter(lambda, g.q);
    if (sp.classification == SpectralClass::exceptional ||
        sp.classification == SpectralClass::band_edge) {
        throw InvalidInput("exceptional_parameter: no isolated resonance at lambda = " +
                           std::to_string(lambda));
    }
    const cx mu = sp.mu;
    const auto fwd = resonance_kernel(g, mu, false);
    const auto bwd = resonance_kernel(g, mu, true);
    const int m = static_cast<int>(fwd.size());
    if (m == 0 || static_cast<int>(bwd.size()) != m) {
        throw NumericalError("singular_gram: kernel dimensions disagree at mu");
    }

    // Jordan probe: the squared kernel must not grow, or the resonance is
    // not semisimple and the rank-m projector below does not exist.
    {
        const int ne = g.directed_edge_count();
        CMat b(ne, ne);
        for (int e = 0; e < ne; ++e) {
            for (int s : g.successors[e]) b.at(e, s) += 1.0;
            b.at(e, e) -= mu;
        }
        const CMat b2 = matmul(b, b);
        const auto k2 = kernel_basis(b2, 1e-8);
        if (static_cast<int>(k2.size()) != m) {
            throw NumericalError("jordan_block: squared kernel outgrows the kernel at mu");
        }
    }

    std::vector<ResonantState> us(m), ws(m);
    for (int i = 0; i < m; ++i) {
        us[i].orientation = Orientation::forward;
        us[i].mu = mu;
        us[i].q = g.q;
        us[i].v = fwd[i];
        ws[i].orientation = Orientation::backward;
        ws[i].mu = mu;
        ws[i].q = g.q;
        ws[i].v = bwd[i];
    }

    CMat gram(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) gram.at(i, j) = geodesic_pairing(g, us[i], ws[j]);
    }
    const CMat ginv = invert_or_throw(gram, 1e-8);

    ResonancePairs out;
    out.us = std::move(us);
    out.wts.assign(m, ResonantState{});
    for (int i = 0; i < m; ++i) {
        ResonantState& wt = out.wts[i];
        wt.orientation = Orientation::backward;
        wt.mu = mu;
        wt.q = g.q;
        wt.v.assign(g.directed_edge_count(), cx(0.0, 0.0));
        for (int k = 0; k < m; ++k) {
            const cx c = ginv.at(k, i);
            for (size_t e = 0; e < wt.v.size(); ++e) wt.v[e] += c * ws[k].v[e];
        }
    }
    return out;
}

} // namespace

cx ruelle_distribution(const CylinderSymbol& f, const RegularGraph& g, double lambda) {
    const ResonancePairs pr = resonance_projector(g, lambda);
    cx acc(0.0, 0.0);
    for (size_t i = 0; i < pr.us.size(); ++i) acc += ps_tensor(g, pr.us[i], pr.wts[i], f);
    return acc;
}

cx ruelle_shifted(const CylinderSymbol& f, const RegularGraph& g, double lambda) {
    const ResonancePairs pr = resonance_projector(g, lambda);
    cx acc(0.0, 0.0);
    for (size_t i = 0; i < pr.us.size(); ++i) {
        acc += ps_tensor_shifted(g, pr.us[i], pr.wts[i], f);
    }
    return acc;
}

cx c_function(const SpectralParameter& sp, int q) {
    if (std::abs(sp.z - 1.0) < 1e-12 || std::abs(sp.z + 1.0) < 1e-12) {
        throw InvalidInput("band_edge: c-function pole at z = +-1");
    }
    return (std::sqrt(static_cast<double>(q)) / (q + 1)) * (sp.mu - 1.0 / sp.mu) /
           (sp.z - 1.0 / sp.z);
}

} // namespace treelift
