#pragma once

#include <complex>
#include <string>
#include <vector>

#include "treelift/graph.hpp"

namespace treelift {

using cx = std::complex<double>;

enum class SpectralClass { tempered, untempered, band_edge, exceptional };

std::string to_string(SpectralClass c);

// Everything derived from one adjacency eigenvalue lambda of a (q+1)-regular
// graph. z solves z^2 - ((q+1)lambda/sqrt(q)) z + 1 = 0 (branch: Im z > 0,
// else |z| >= 1), mu = sqrt(q) z is the transfer eigenvalue, and
// chi = (sqrt(q)/(q+1))(z + 1/z) recovers lambda.
struct SpectralParameter {
    double lambda = 0.0;
    int q = 0;
    cx z;
    cx mu;
    SpectralClass classification = SpectralClass::untempered;

    bool exceptional() const { return classification == SpectralClass::exceptional; }
};

SpectralParameter spectral_parameter(double lambda, int q);

// chi(z) = (sqrt(q)/(q+1)) (z + 1/z), the eigenvalue recovered from z.
cx chi_of(cx z, int q);

// Same lambda, conjugate z branch. For real lambda this is the parameter of
// the complex-conjugate eigenfunction data, used to pair phi with
// conj(phi') in the sesquilinear constructions.
SpectralParameter conjugate_parameter(const SpectralParameter& sp);

// Swaps z -> 1/z (the other root of the quadratic), keeping lambda.
SpectralParameter other_branch(const SpectralParameter& sp);

// The z' with z' = 1 / conj(z): pairs to zero against sp on the tempered
// circle, useful as a negative control.
SpectralParameter mismatched_parameter(const SpectralParameter& sp);

// Builds SpectralParameter directly from a chosen z (bypasses the branch
// rule). lambda is recomputed from chi_of.
SpectralParameter parameter_from_z(cx z, int q);

struct EigenSpace {
    double lambda = 0.0;
    int multiplicity = 0;
    // basis[k][x]: orthonormal vectors over vertices, unit l2 norm.
    std::vector<std::vector<double>> basis;
};

// (1/(q+1)) * adjacency matrix, so the spectrum lies in [-1, 1].
std::vector<std::vector<double>> laplace_matrix(const RegularGraph& g);

// Full eigendecomposition of laplace_matrix, eigenvalues grouped when they
// agree within group_tol. Groups are sorted descending (lambda = 1 first).
std::vector<EigenSpace> eigh_decompose(const RegularGraph& g, double group_tol = 1e-8);

} // namespace treelift
