#pragma once

#include <vector>

#include "treelift/graph.hpp"
#include "treelift/spectral.hpp"

namespace treelift {

enum class Orientation { forward, backward };

// Edge function v on directed edges with Bv = mu v (forward) or
// B^T v = mu v (backward), where B is the non-backtracking edge adjacency.
struct ResonantState {
    Orientation orientation = Orientation::forward;
    cx mu;
    int q = 0;
    std::vector<cx> v;
};

// Lifts a Laplace eigenfunction phi (lambda = sp.lambda) to the forward
// resonant state v(e) = (phi(head) - phi(tail)/mu) / (mu - 1/mu).
// Throws ExceptionalParameter when mu - 1/mu collapses, NotAnEigenfunction
// when phi fails the eigen equation beyond check_tol.
ResonantState resonant_state(const RegularGraph& g, const std::vector<cx>& phi,
                             const SpectralParameter& sp, double check_tol = 1e-8);

// Backward variant: v(e) = (psi(tail) - psi(head)/mu) / (mu - 1/mu) with
// B^T v = mu v. psi plays the role of conj(phi') in pairings.
ResonantState coresonant_state(const RegularGraph& g, const std::vector<cx>& psi,
                               const SpectralParameter& sp, double check_tol = 1e-8);

// Value of the state on the depth-k cylinder named by a non-backtracking
// path: mu^{-(k-1)} v(last edge) forward, mu^{-(k-1)} v(first edge) backward.
cx cylinder_value(const ResonantState& state, const NBPath& p);

// Non-backtracking edge adjacency: B[e][e'] = 1 iff head(e) = tail(e') and
// e' != reverse(e). Indexed by the graph's directed edge ids.
std::vector<std::vector<double>> hashimoto_matrix(const RegularGraph& g);

// Kernel of (B - mu I), or (B^T - mu I) when transpose, as column vectors
// over directed edges.
std::vector<std::vector<cx>> resonance_kernel(const RegularGraph& g, cx mu,
                                              bool transpose, double rank_tol = 1e-8);

// Sum over vertices x and ordered pairs of distinct edges leaving x of
// u.v(e) * w.v(reverse(e')). u forward, w backward.
cx geodesic_pairing(const RegularGraph& g, const ResonantState& u, const ResonantState& w);

} // namespace treelift
