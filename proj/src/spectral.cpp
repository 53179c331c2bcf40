#include "treelift/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "treelift/errors.hpp"
#include "treelift/linalg.hpp"

namespace treelift {

std::string to_string(SpectralClass c) {
    switch (c) {
        case SpectralClass::tempered: return "tempered";
        case SpectralClass::untempered: return "untempered";
        case SpectralClass::band_edge: return "band_edge";
        case SpectralClass::exceptional: return "exceptional";
    }
    return "unknown";
}

cx chi_of(cx z, int q) {
    return (std::sqrt(static_cast<double>(q)) / (q + 1)) * (z + 1.0 / z);
}

namespace {

SpectralClass classify(cx z, cx mu, int q) {
    const double eps = 1e-12;
    const cx qd(static_cast<double>(q), 0.0);
    // mu in {1, -1, q, -q} makes the resonant-state denominator or the
    // pairing normalization collapse.
    if (std::abs(mu - 1.0) < eps || std::abs(mu + 1.0) < eps ||
        std::abs(mu - qd) < eps || std::abs(mu + qd) < eps) {
        return SpectralClass::exceptional;
    }
    // Detect the double root through the trace z + 1/z. Testing z itself
    // would need |z -+ 1| < eps, which a double lambda one ulp off the edge
    // value already misses: the root moves like the square root of the
    // perturbation, the trace only linearly.
    const cx trace = z + 1.0 / z;
    if (std::abs(trace - 2.0) < eps || std::abs(trace + 2.0) < eps) {
        return SpectralClass::band_edge;
    }
    if (std::abs(std::abs(z) - 1.0) < eps) {
        return SpectralClass::tempered;
    }
    return SpectralClass::untempered;
}

SpectralParameter assemble(double lambda, int q, cx z) {
    SpectralParameter sp;
    sp.lambda = lambda;
    sp.q = q;
    sp.z = z;
    sp.mu = std::sqrt(static_cast<double>(q)) * z;
    sp.classification = classify(z, sp.mu, q);
    return sp;
}

} // namespace

SpectralParameter spectral_parameter(double lambda, int q) {
    if (q < 2) throw InvalidInput("q_too_small: spectral_parameter needs q >= 2");
    const double rq = std::sqrt(static_cast<double>(q));
    const cx b = cx((q + 1) * lambda / rq, 0.0);
    // Roots of z^2 - b z + 1 = 0. They multiply to 1, so either both sit on
    // the unit circle (tempered window) or one lies strictly outside.
    const cx disc = std::sqrt(b * b - 4.0);
    cx z1 = (b + disc) / 2.0;
    cx z2 = (b - disc) / 2.0;

    cx z;
    if (z1.imag() > 1e-14 || z2.imag() > 1e-14) {
        z = (z1.imag() > z2.imag()) ? z1 : z2;
    } else {
        z = (std::abs(z1) >= std::abs(z2)) ? z1 : z2;
    }
    return assemble(lambda, q, z);
}

SpectralParameter parameter_from_z(cx z, int q) {
    if (q < 2) throw InvalidInput("q_too_small: parameter_from_z needs q >= 2");
    if (std::abs(z) < 1e-300) throw InvalidInput("bad_parameter: z must be nonzero");
    const double lambda = chi_of(z, q).real();
    return assemble(lambda, q, z);
}

SpectralParameter conjugate_parameter(const SpectralParameter& sp) {
    return assemble(sp.lambda, sp.q, std::conj(sp.z));
}

SpectralParameter other_branch(const SpectralParameter& sp) {
    return assemble(sp.lambda, sp.q, 1.0 / sp.z);
}

SpectralParameter mismatched_parameter(const SpectralParameter& sp) {
    return assemble(sp.lambda, sp.q, 1.0 / std::conj(sp.z));
}

std::vector<std::vector<double>> laplace_matrix(const RegularGraph& g) {
    const int n = g.vertex_count;
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    const double w = 1.0 / (g.q + 1);
    for (int e = 0; e < g.directed_edge_count(); ++e) {
        m[g.edge_from[e]][g.edge_to[e]] += w;
    }
    return m;
}

std::vector<EigenSpace> eigh_decompose(const RegularGraph& g, double group_tol) {
    SymmetricEigen eig;
    try {
        eig = jacobi_eigh(laplace_matrix(g));
    } catch (const NumericalError&) {
        throw NumericalError("convergence_failure: eigendecomposition did not settle");
    }

    const int n = g.vertex_count;
    std::vector<EigenSpace> spaces;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && std::abs(eig.eigenvalues[j + 1] - eig.eigenvalues[i]) < group_tol) {
            ++j;
        }
        EigenSpace es;
        es.multiplicity = j - i + 1;
        double sum = 0.0;
        for (int k = i; k <= j; ++k) sum += eig.eigenvalues[k];
        es.lambda = sum / es.multiplicity;
        for (int k = i; k <= j; ++k) es.basis.push_back(eig.vectors[k]);

        // Jacobi already returns orthonormal vectors, but re-orthonormalize
        // within the group so clustered eigenvalues give a clean basis.
        for (size_t a = 0; a < es.basis.size(); ++a) {
            for (size_t b = 0; b < a; ++b) {
                double dot = 0.0;
                for (int x = 0; x < n; ++x) dot += es.basis[a][x] * es.basis[b][x];
                for (int x = 0; x < n; ++x) es.basis[a][x] -= dot * es.basis[b][x];
            }
            double norm = 0.0;
            for (int x = 0; x < n; ++x) norm += es.basis[a][x] * es.basis[a][x];
            norm = std::sqrt(norm);
            if (norm < 1e-12) {
                throw NumericalError("convergence_failure: degenerate eigenbasis");
            }
            for (int x = 0; x < n; ++x) es.basis[a][x] /= norm;
            double peak = 0.0;
            for (int x = 0; x < n; ++x) {
                if (std::abs(es.basis[a][x]) > std::abs(peak)) peak = es.basis[a][x];
            }
            if (peak < 0.0) {
                for (int x = 0; x < n; ++x) es.basis[a][x] = -es.basis[a][x];
            }
        }
        spaces.push_back(std::move(es));
        i = j + 1;
    }

    std::sort(spaces.begin(), spaces.end(),
              [](const EigenSpace& a, const EigenSpace& b) { return a.lambda > b.lambda; });
    return spaces;
}

} // namespace treelift
