#pragma once

#include <vector>

#include "treelift/graph.hpp"
#include "treelift/resonant.hpp"
#include "treelift/spectral.hpp"
#include "treelift/symbols.hpp"

namespace treelift {

// Everything needed to pair two eigenfunctions: the forward resonant state
// of phi at sp, and the backward state of conj(phi') at the conjugate of
// sp_prime's branch. alpha/beta are the branch values entering the
// transfer-weight identities: alpha = z, beta = conj(z').
struct DistributionContext {
    const RegularGraph* graph = nullptr;
    std::vector<cx> phi;
    std::vector<cx> phi_prime;
    SpectralParameter sp;
    SpectralParameter sp_prime;
    ResonantState u;
    ResonantState w;

    cx alpha() const { return sp.z; }
    cx beta() const { return std::conj(sp_prime.z); }
};

DistributionContext make_context(const RegularGraph& g,
                                 const std::vector<cx>& phi, const SpectralParameter& sp,
                                 const std::vector<cx>& phi_prime,
                                 const SpectralParameter& sp_prime);

// phi' = phi with the conjugate branch, so that the backward state sits at
// the same transfer eigenvalue as the forward one.
DistributionContext diagonal_context(const RegularGraph& g,
                                     const std::vector<double>& phi,
                                     const SpectralParameter& sp);

DistributionContext pair_context(const RegularGraph& g,
                                 const std::vector<double>& phi, const SpectralParameter& sp,
                                 const std::vector<double>& phi_prime,
                                 const SpectralParameter& sp_prime);

// Op(a)phi(x) = sum over length-k paths p from x of a(x,p) * cylinder mass
// of the forward state on p. Depth-0 symbols act by multiplication.
std::vector<cx> op_apply(const RegularGraph& g, const CylinderSymbol& a,
                         const std::vector<cx>& phi, const SpectralParameter& sp);

// <Op(a) phi, phi'> in l2.
cx wigner(const CylinderSymbol& a, const DistributionContext& ctx);

// Tensor of a forward and a backward state against a symbol: the dynamical
// form of the Patterson-Sullivan pairing.
cx ps_tensor(const RegularGraph& g, const ResonantState& u, const ResonantState& w,
             const CylinderSymbol& a);

cx patterson_sullivan(const CylinderSymbol& a, const DistributionContext& ctx);

// Same pairing, but the forward half of each cylinder is advanced one step:
// the mass of the final edge is replaced by the sum over its non-backtracking
// extensions, keeping the depth-k normalization and the base anchor. For an
// exact forward eigenvector this multiplies ps_tensor by u.mu; computing it
// from the raw extension sums instead makes that identity a checkable one.
cx ps_tensor_shifted(const RegularGraph& g, const ResonantState& u, const ResonantState& w,
                     const CylinderSymbol& a);

// Trace of the symbol against the rank-m spectral projector of the
// non-backtracking operator at mu(lambda): kernel bases on both sides,
// biorthogonalized through the geodesic pairing Gram matrix. Independent of
// any Laplace eigenbasis.
cx ruelle_distribution(const CylinderSymbol& f, const RegularGraph& g, double lambda);

// ruelle_distribution with every tensor paired through ps_tensor_shifted:
// one transfer step applied to the outgoing half of the chain, the incoming
// anchor left alone. Equals mu(lambda) * ruelle_distribution(f, g, lambda)
// whenever the resonance is semisimple, on any graph. Note the step acts on
// the projector side, not on the symbol: rewriting it as a based symbol
// transform holds no scalar identity except on arc-transitive graphs.
cx ruelle_shifted(const CylinderSymbol& f, const RegularGraph& g, double lambda);

// (sqrt(q)/(q+1)) (mu - 1/mu)/(z - 1/z); the normalization constant of the
// constant-symbol Wigner/PS identity.
cx c_function(const SpectralParameter& sp, int q);

} // namespace treelift
