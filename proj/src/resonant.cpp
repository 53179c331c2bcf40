#include "treelift/resonant.hpp"

#include <cmath>

#include "treelift/errors.hpp"
#include "treelift/linalg.hpp"

namespace treelift {

namespace {

void check_eigenfunction(const RegularGraph& g, const std::vector<cx>& phi,
                         double lambda, double tol) {
    if (static_cast<int>(phi.size()) != g.vertex_count) {
        throw InvalidInput("bad_shape: eigenfunction length != vertex count");
    }
    double scale = 0.0;
    for (const cx& x : phi) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) {
        throw InvalidInput("not_an_eigenfunction: zero vector");
    }
    for (int x = 0; x < g.vertex_count; ++x) {
        cx acc(0.0, 0.0);
        for (int e : g.out_edges[x]) acc += phi[g.edge_to[e]];
        acc /= static_cast<double>(g.q + 1);
        if (std::abs(acc - lambda * phi[x]) > tol * scale) {
            throw InvalidInput("not_an_eigenfunction: residual at vertex " +
                               std::to_string(x));
        }
    }
}

cx denominator_or_throw(const SpectralParameter& sp) {
    const cx den = sp.mu - 1.0 / sp.mu;
    if (std::abs(den) < 1e-12 || sp.exceptional()) {
        throw InvalidInput("exceptional_parameter: mu - 1/mu degenerate for lambda = " +
                           std::to_string(sp.lambda));
    }
    return den;
}

} // namespace

ResonantState resonant_state(const RegularGraph& g, const std::vector<cx>& phi,
                             const SpectralParameter& sp, double check_tol) {
    check_eigenfunction(g, phi, sp.lambda, check_tol);
    const cx den = denominator_or_throw(sp);
    ResonantState st;
    st.orientation = Orientation::forward;
    st.mu = sp.mu;
    st.q = sp.q;
    st.v.resize(g.directed_edge_count());
    const cx inv_mu = 1.0 / sp.mu;
    for (int e = 0; e < g.directed_edge_count(); ++e) {
        st.v[e] = (phi[g.edge_to[e]] - inv_mu * phi[g.edge_from[e]]) / den;
    }
    return st;
}

ResonantState coresonant_state(const RegularGraph& g, const std::vector<cx>& psi,
                               const SpectralParameter& sp, double check_tol) {
    check_eigenfunction(g, psi, sp.lambda, check_tol);
    const cx den = denominator_or_throw(sp);
    ResonantState st;
    st.orientation = Orientation::backward;
    st.mu = sp.mu;
    st.q = sp.q;
    st.v.resize(g.directed_edge_count());
    const cx inv_mu = 1.0 / sp.mu;
    for (int e = 0; e < g.directed_edge_count(); ++e) {
        st.v[e] = (psi[g.edge_from[e]] - inv_mu * psi[g.edge_to[e]]) / den;
    }
    return st;
}

cx cylinder_value(const ResonantState& state, const NBPath& p) {
    if (p.edges.empty()) {
        throw InvalidInput("bad_path: cylinder_value needs at least one edge");
    }
    const int k = p.length();
    const int e = (state.orientation == Orientation::forward) ? p.edges.back()
                                                              : p.edges.front();
    return std::pow(state.mu, -(k - 1)) * state.v[e];
}

std::vector<std::vector<double>> hashimoto_matrix(const RegularGraph& g) {
    const int m = g.directed_edge_count();
    std::vector<std::vector<double>> b(m, std::vector<double>(m, 0.0));
    for (int e = 0; e < m; ++e) {
        for (int f : g.successors[e]) b[e][f] = 1.0;
    }
    return b;
}

std::vector<std::vector<cx>> resonance_kernel(const RegularGraph& g, cx mu,
                                              bool transpose, double rank_tol) {
    const int m = g.directed_edge_count();
    CMat a(m, m);
    for (int e = 0; e < m; ++e) {
        for (int f : g.successors[e]) {
            if (transpose) {
                a.at(f, e) += 1.0;
            } else {
                a.at(e, f) += 1.0;
            }
        }
        a.at(e, e) -= mu;
    }
    return kernel_basis(std::move(a), rank_tol);
}

cx geodesic_pairing(const RegularGraph& g, const ResonantState& u, const ResonantState& w) {
    if (u.orientation != Orientation::forward || w.orientation != Orientation::backward) {
        throw InvalidInput("bad_orientation: pairing takes (forward, backward)");
    }
    cx total(0.0, 0.0);
    for (int x = 0; x < g.vertex_count; ++x) {
        // Sum over ordered pairs e != e' of edges out of x. Computing the
        // full product sum minus the diagonal keeps it linear in degree.
        cx su(0.0, 0.0), sw(0.0, 0.0), diag(0.0, 0.0);
        for (int e : g.out_edges[x]) {
            const cx a = u.v[e];
            const cx b = w.v[RegularGraph::reverse(e)];
            su += a;
            sw += b;
            diag += a * b;
        }
        total += su * sw - diag;
    }
    return total;
}

} // namespace treelift
