#include "doctest.h"

#include <cmath>
#include <complex>

#include "treelift/errors.hpp"
#include "treelift/graph.hpp"
#include "treelift/resonant.hpp"
#include "treelift/spectral.hpp"

#include "test_util.hpp"

using namespace treelift;

namespace {

std::vector<cx> to_cx(const std::vector<double>& v) {
    std::vector<cx> out(v.begin(), v.end());
    return out;
}

// max |(B v)(e) - mu v(e)| through the successor lists (transposed for
// backward states), independent of the hashimoto_matrix routine.
double transfer_residual(const RegularGraph& g, const ResonantState& s) {
    double worst = 0.0;
    for (int e = 0; e < g.directed_edge_count(); ++e) {
        cx acc(0.0, 0.0);
        if (s.orientation == Orientation::forward) {
            for (int h : g.successors[e]) acc += s.v[h];
        } else {
            for (int h : g.out_edges[g.edge_from[e]]) {
                if (h != e) acc += s.v[RegularGraph::reverse(h)];
            }
        }
        worst = std::max(worst, std::abs(acc - s.mu * s.v[e]));
    }
    return worst;
}

} // namespace

TEST_CASE("resonant states satisfy the transfer eigen-equation") {
    const RegularGraph g = named_graph("petersen");
    const auto spaces = eigh_decompose(g);
    REQUIRE(spaces.size() == 3);

    for (size_t k = 1; k < spaces.size(); ++k) { // skip the constant eigenfunction
        const SpectralParameter sp = spectral_parameter(spaces[k].lambda, g.q);
        for (const auto& basis_vec : spaces[k].basis) {
            const std::vector<cx> phi = to_cx(basis_vec);
            const ResonantState u = resonant_state(g, phi, sp);
            const ResonantState w = coresonant_state(g, phi, sp);
            CHECK(u.orientation == Orientation::forward);
            CHECK(w.orientation == Orientation::backward);
            CHECK(transfer_residual(g, u) < 1e-12);
            CHECK(transfer_residual(g, w) < 1e-12);

            // Pushing the state down to vertices recovers the eigenfunction.
            for (int x = 0; x < g.vertex_count; ++x) {
                cx down(0.0, 0.0);
                for (int h : g.out_edges[x]) down += u.v[h];
                CHECK(std::abs(down - phi[x]) < 1e-12);
            }
        }
    }
}

TEST_CASE("hashimoto matrix mirrors the successor lists") {
    const RegularGraph g = named_graph("k4");
    const auto b = hashimoto_matrix(g);
    const int ne = g.directed_edge_count();
    REQUIRE(static_cast<int>(b.size()) == ne);
    int total = 0;
    for (int e = 0; e < ne; ++e) {
        for (int h = 0; h < ne; ++h) {
            const bool succ =
                g.edge_to[e] == g.edge_from[h] && h != RegularGraph::reverse(e);
            CHECK(b[e][h] == (succ ? 1.0 : 0.0));
            total += (b[e][h] != 0.0);
        }
    }
    CHECK(total == ne * g.q);
}

TEST_CASE("resonance kernels have the Laplace multiplicities") {
    const RegularGraph g = named_graph("petersen");
    const auto spaces = eigh_decompose(g);

    const cx mu1 = spectral_parameter(spaces[1].lambda, 2).mu; // lambda = 1/3
    const cx mu2 = spectral_parameter(spaces[2].lambda, 2).mu; // lambda = -2/3
    CHECK(resonance_kernel(g, mu1, false).size() == 5);
    CHECK(resonance_kernel(g, mu1, true).size() == 5);
    CHECK(resonance_kernel(g, mu2, false).size() == 4);
    CHECK(resonance_kernel(g, mu2, true).size() == 4);

    // A generic non-resonant point has no kernel at all.
    CHECK(resonance_kernel(g, cx(0.123, 0.456), false).empty());

    for (const auto& vec : resonance_kernel(g, mu1, false)) {
        ResonantState s;
        s.orientation = Orientation::forward;
        s.mu = mu1;
        s.q = 2;
        s.v = vec;
        CHECK(transfer_residual(g, s) < 1e-10);
    }
}

TEST_CASE("cylinder values scale by the transfer eigenvalue") {
    const RegularGraph g = named_graph("cube");
    const SpectralParameter sp = spectral_parameter(eigh_decompose(g)[1].lambda, g.q);
    const ResonantState u = resonant_state(g, to_cx(eigh_decompose(g)[1].basis[0]), sp);
    const ResonantState w = coresonant_state(g, to_cx(eigh_decompose(g)[1].basis[0]), sp);

    for (const NBPath& p : nb_paths(g, 0, 3)) {
        // Forward reads the last edge, backward the first; both carry
        // mu^{-(k-1)}.
        const cx scale = 1.0 / (sp.mu * sp.mu);
        CHECK(std::abs(cylinder_value(u, p) - scale * u.v[p.edges[2]]) < 1e-14);
        CHECK(std::abs(cylinder_value(w, p) - scale * w.v[p.edges[0]]) < 1e-14);
    }

    // Finite additivity: a cylinder's value is the sum over its one-step
    // refinements.
    for (const NBPath& p : nb_paths(g, 0, 2)) {
        cx sum(0.0, 0.0);
        for (int h : g.successors[p.edges.back()]) {
            NBPath child = p;
            child.edges.push_back(h);
            sum += cylinder_value(u, child);
        }
        CHECK(std::abs(sum - cylinder_value(u, p)) < 1e-13);
    }

    NBPath empty;
    empty.base = 0;
    CHECK(thrown_tag<InvalidInput>([&] { cylinder_value(u, empty); }) == "bad_path");
}

TEST_CASE("geodesic pairing closed form") {
    const RegularGraph g = named_graph("petersen");
    const auto spaces = eigh_decompose(g);

    // Diagonally, (mu^2 - 1) P = (mu^2 - q) sum phi^2 = mu^2 - q for a unit
    // real eigenvector.
    for (size_t k = 1; k < spaces.size(); ++k) {
        const SpectralParameter sp = spectral_parameter(spaces[k].lambda, g.q);
        const std::vector<cx> phi = to_cx(spaces[k].basis[0]);
        const ResonantState u = resonant_state(g, phi, sp);
        const ResonantState w = coresonant_state(g, phi, sp);
        const cx mu2 = sp.mu * sp.mu;
        const cx p = geodesic_pairing(g, u, w);
        CHECK(std::abs((mu2 - 1.0) * p - (mu2 - 2.0)) < 1e-12);
    }

    // Distinct eigenvalues pair to zero (the eigenvectors are orthogonal).
    {
        const SpectralParameter spa = spectral_parameter(spaces[1].lambda, g.q);
        const SpectralParameter spb = spectral_parameter(spaces[2].lambda, g.q);
        const ResonantState u = resonant_state(g, to_cx(spaces[1].basis[0]), spa);
        const ResonantState w = coresonant_state(g, to_cx(spaces[2].basis[0]), spb);
        CHECK(std::abs(geodesic_pairing(g, u, w)) < 1e-12);
    }

    {
        const SpectralParameter sp = spectral_parameter(spaces[1].lambda, g.q);
        const ResonantState u = resonant_state(g, to_cx(spaces[1].basis[0]), sp);
        CHECK(thrown_tag<InvalidInput>([&] { geodesic_pairing(g, u, u); }) ==
              "bad_orientation");
    }
}

TEST_CASE("resonant_state rejects bad input") {
    const RegularGraph g = named_graph("k4");
    const auto spaces = eigh_decompose(g);
    const SpectralParameter sp = spectral_parameter(spaces[1].lambda, g.q);

    std::vector<cx> junk(g.vertex_count, cx(1.0, 0.0));
    junk[0] = cx(2.0, 0.0);
    CHECK(thrown_tag<InvalidInput>([&] { resonant_state(g, junk, sp); }) ==
          "not_an_eigenfunction");

    std::vector<cx> zero(g.vertex_count, cx(0.0, 0.0));
    CHECK(thrown_tag<InvalidInput>([&] { resonant_state(g, zero, sp); }) ==
          "not_an_eigenfunction");

    std::vector<cx> short_vec(g.vertex_count - 1, cx(1.0, 0.0));
    CHECK(thrown_tag<InvalidInput>([&] { resonant_state(g, short_vec, sp); }) == "bad_shape");

    // The constant eigenfunction sits at the exceptional parameter.
    const SpectralParameter exc = spectral_parameter(1.0, g.q);
    std::vector<cx> ones(g.vertex_count, cx(0.5, 0.0));
    CHECK(thrown_tag<InvalidInput>([&] { resonant_state(g, ones, exc); }) ==
          "exceptional_parameter");
}
