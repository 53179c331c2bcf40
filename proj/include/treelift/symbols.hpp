#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treelift/graph.hpp"
#include "treelift/spectral.hpp"

namespace treelift {

// Locally constant phase-space observable: a function of a base vertex and
// its first k outgoing non-backtracking edges. Depth 0 tables are plain
// vertex functions.
//
// Index layout for depth k >= 1: first edge id is the major digit, then one
// base-q digit per successor choice, most significant first. Total size
// 2E * q^(k-1). symbol_index computes it from an explicit path.
struct CylinderSymbol {
    int depth = 0;
    std::vector<cx> values;
};

size_t symbol_size(const RegularGraph& g, int depth);
size_t symbol_index(const RegularGraph& g, const NBPath& p);
cx symbol_value(const RegularGraph& g, const CylinderSymbol& a, const NBPath& p);

CylinderSymbol symbol_constant(const RegularGraph& g, int depth, cx c);

// Entries with real and imaginary parts uniform in [-1, 1], reproducible
// from the seed.
CylinderSymbol symbol_random(const RegularGraph& g, int depth, uint64_t seed);

// Depth k+1 symbol taking on each path the value of its depth-k prefix.
CylinderSymbol refine(const RegularGraph& g, const CylinderSymbol& a);
CylinderSymbol refine_to(const RegularGraph& g, const CylinderSymbol& a, int depth);

// ca*a + cb*b after refining both to the larger depth.
CylinderSymbol lin_comb(const RegularGraph& g, cx ca, const CylinderSymbol& a,
                        cx cb, const CylinderSymbol& b);

// n-fold transfer step. One step sums a over the q backward non-backtracking
// extensions of the path: (La)(x, p) = sum over edges e0 into x with
// e0 != reverse(p1) of a(tail(e0), (e0, p1, ..)). Output depth max(k-1, 1)
// per step; n = 0 returns a unchanged.
CylinderSymbol transfer_pow(const RegularGraph& g, const CylinderSymbol& a, int n);

// Branch operator H_m: resums a over side branches that rejoin the path
// after m steps. For an output path with vertices x1, x2, ... the sum runs
// over non-backtracking (y1, .., ym, x_{m+1}, x_{m+2}, ..) with ym != xm,
// and a is read at base y1 along the first k edges of that sequence.
// q^(m-1)(q-1) summands for m >= 1; H_0 is the identity. Output depth
// max(m+1, k) for m >= 1.
CylinderSymbol branch_sum(const RegularGraph& g, const CylinderSymbol& a, int m);

// Fixture dump: {"depth": k, "entries": [{"path": [...], "re":, "im":}]}.
std::string symbol_to_json(const RegularGraph& g, const CylinderSymbol& a);

} // namespace treelift
