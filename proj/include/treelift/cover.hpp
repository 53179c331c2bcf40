#pragma once

#include <functional>
#include <vector>

#include "treelift/distributions.hpp"
#include "treelift/graph.hpp"
#include "treelift/spectral.hpp"
#include "treelift/symbols.hpp"

namespace treelift {

// Radius-R truncation of the universal covering tree, unfolded from a root
// vertex of the base graph by non-backtracking walks. Vertex ids are BFS
// order, so parents precede children. graph_vertex is the covering map;
// edge_down[v] is the directed base-graph edge along parent(v) -> v.
// canonical flags one lift per base vertex (breadth-first first visit),
// which realizes the fundamental-domain cutoff used by the quotient sums.
struct TruncatedCover {
    RegularGraph base;
    int radius = 0;
    std::vector<int> parent;
    std::vector<int> depth;
    std::vector<int> graph_vertex;
    std::vector<int> edge_down;
    std::vector<std::vector<int>> children;
    std::vector<char> canonical;
    std::vector<int> canonical_lift;  // per base vertex, -1 if out of reach

    int vertex_count() const { return static_cast<int>(parent.size()); }
    int meet(int x, int y) const;
    int distance(int x, int y) const;
    // The next `count` vertices on the geodesic from x toward target.
    std::vector<int> path_toward(int x, int target, int count) const;
    // Directed base-graph edge along the tree step from x to a neighbor.
    int project_step(int x, int next) const;
};

TruncatedCover build_cover(const RegularGraph& g, int root_vertex, int radius,
                           int vertex_budget = 1000000);

// Alternative fundamental-domain flags: first visit per base vertex of a
// breadth-first walk of the tree from tree_start.
std::vector<char> canonical_reflag(const TruncatedCover& cov, int tree_start);

// The set of rays through tree vertex y, as seen from the root.
struct BoundaryCylinder {
    int vertex = 0;
};

// d(o,y) - d(x,y); constant over the cylinder only when the cylinder is
// deeper than x by at least 2, checked.
int horocycle_bracket(const TruncatedCover& cov, int x, BoundaryCylinder c);

std::vector<cx> lift_function(const TruncatedCover& cov, const std::vector<cx>& f);

// Boundary mass of the cylinder for the eigenfunction lift, measured from
// base_x (root by default): mu^{-(d-1)} (lift(y) - lift(parent(y))/mu) /
// (mu - 1/mu) with d the distance from base_x to y.
cx boundary_measure(const TruncatedCover& cov, const std::vector<cx>& lift,
                    const SpectralParameter& sp, BoundaryCylinder c, int base_x = 0);

// Masses of all depth-R cylinders, indexed by defining vertex id (entries
// at other ids are zero).
std::vector<cx> boundary_measure_table(const TruncatedCover& cov,
                                       const std::vector<cx>& lift,
                                       const SpectralParameter& sp);

// Equal mass 1/((q+1) q^(R-1)) on every depth-R cylinder.
std::vector<cx> harmonic_measure_table(const TruncatedCover& cov);

// Integral of the kernel mu^<x, .> against a depth-R measure table. Exact
// finite sum; x must keep distance at least 2 from the truncation boundary.
cx poisson_forward(const TruncatedCover& cov, const std::vector<cx>& table,
                   const SpectralParameter& sp, int x);

// Same value at every tree vertex in one pass (subtree/complement sums).
// Entries at depth > R-2 are extrapolations of the same formula and carry
// no Poisson meaning.
std::vector<cx> poisson_forward_all(const TruncatedCover& cov,
                                    const std::vector<cx>& table,
                                    const SpectralParameter& sp);

// Function on tree phase space (vertex, boundary direction). eval reads the
// direction from a later vertex on the geodesic toward the boundary point
// and consumes at most needs_forward edges of it. Zero wherever
// depth > max_support_depth.
struct TreePhaseFunction {
    int needs_forward = 0;
    int max_support_depth = 0;
    std::function<cx(int x, int toward)> eval;
};

// Xi * (a o pi): the symbol read through the covering map, cut off to one
// fundamental-domain lift per base vertex.
TreePhaseFunction lcfd_symbol_function(const TruncatedCover& cov, const CylinderSymbol& a);
TreePhaseFunction lcfd_symbol_function(const TruncatedCover& cov, const CylinderSymbol& a,
                                       const std::vector<char>& flags);

// Horocycle smoothing toward the backward parameter: sums f over the points
// h on x's horocycle (relative to the forward direction) with d(h,x) = 2m,
// weighted mu_w^(-2m), for m = 0..n. n = 0 is the identity.
TreePhaseFunction intertwiner(const TruncatedCover& cov, const TreePhaseFunction& f,
                              const SpectralParameter& sp_prime, int n);

// Weighted sum of f along the geodesic between two disjoint cylinders:
// sum_x f(x, toward C+) mu_u^<x,C+> mu_w^<x,C->, with mu_u from sp and
// mu_w = sqrt(q) conj(sp_prime.z).
cx radon_transform(const TruncatedCover& cov, const TreePhaseFunction& f,
                   const SpectralParameter& sp, const SpectralParameter& sp_prime,
                   BoundaryCylinder c_plus, BoundaryCylinder c_minus);

// Sum over ordered pairs of distinct depth-R cylinders of
// table_u(C+) table_w(C-) radon(f, C+, C-). Evaluated by an exact
// rearrangement over support vertices; cylinder_pair_sum_direct is the
// literal double loop for cross-checks at small radius.
cx cylinder_pair_sum(const TruncatedCover& cov, const TreePhaseFunction& f,
                     const SpectralParameter& sp, const SpectralParameter& sp_prime,
                     const std::vector<cx>& table_u, const std::vector<cx>& table_w);
cx cylinder_pair_sum_direct(const TruncatedCover& cov, const TreePhaseFunction& f,
                            const SpectralParameter& sp, const SpectralParameter& sp_prime,
                            const std::vector<cx>& table_u, const std::vector<cx>& table_w);

// Boundary-value route to the Patterson-Sullivan pairing: both eigenfunction
// measures against the Radon transform of the cut-off symbol.
cx classical_ps(const TruncatedCover& cov, const CylinderSymbol& a,
                const DistributionContext& ctx);
cx classical_ps_with_flags(const TruncatedCover& cov, const CylinderSymbol& a,
                           const DistributionContext& ctx, const std::vector<char>& flags);

// Cover-side pseudo-differential action: integrates the symbol against the
// root-based boundary measure with the kernel mu^<lift(x), .>. Base-point
// independence means this matches op_apply.
std::vector<cx> op_apply_cover(const TruncatedCover& cov, const CylinderSymbol& a,
                               const std::vector<cx>& phi, const SpectralParameter& sp);

// Vertices at the given depth below v (depth measured from the root).
std::vector<int> descendants_at_depth(const TruncatedCover& cov, int v, int depth);

// n-th approximant of the boundary mass of cylinder U recovered from vertex
// sums of the Poisson transform of `table` (harmonic measure when empty).
// Needs |z| > 1; the prefactor (z^2-1)/(z^2-1/q) makes the approximants
// converge to the true mass.
cx measure_limit(const TruncatedCover& cov, const SpectralParameter& sp,
                 BoundaryCylinder u, int n, const std::vector<cx>& table = {});

} // namespace treelift
