#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "treelift/distributions.hpp"
#include "treelift/errors.hpp"
#include "treelift/graph.hpp"
#include "treelift/resonant.hpp"
#include "treelift/spectral.hpp"
#include "treelift/symbols.hpp"

#include "test_util.hpp"

using namespace treelift;

namespace {

std::vector<cx> complexify(const std::vector<double>& v) {
    return std::vector<cx>(v.begin(), v.end());
}

bool admissible(const SpectralParameter& sp) {
    return sp.classification == SpectralClass::tempered ||
           sp.classification == SpectralClass::untempered;
}

} // namespace

TEST_CASE("op_apply acts by multiplication at depth zero and averages at depth one") {
    const RegularGraph g = named_graph("petersen");
    const auto spaces = eigh_decompose(g);
    REQUIRE(spaces.size() == 3);
    const SpectralParameter sp = spectral_parameter(spaces[1].lambda, g.q);
    const std::vector<cx> phi = complexify(spaces[1].basis[0]);

    CylinderSymbol a0 = symbol_random(g, 0, 5);
    const std::vector<cx> prod = op_apply(g, a0, phi, sp);
    for (size_t x = 0; x < phi.size(); ++x) {
        CHECK(std::abs(prod[x] - a0.values[x] * phi[x]) < 1e-14);
    }

    // The unit depth-1 symbol resums the forward state over outgoing edges,
    // which recovers the eigenfunction itself.
    const CylinderSymbol one = symbol_constant(g, 1, cx(1.0, 0.0));
    const std::vector<cx> back = op_apply(g, one, phi, sp);
    for (size_t x = 0; x < phi.size(); ++x) {
        CHECK(std::abs(back[x] - phi[x]) < 1e-12);
    }
}

TEST_CASE("wigner of the unit symbol is the l2 inner product") {
    const RegularGraph g = named_graph("petersen");
    const auto spaces = eigh_decompose(g);
    const SpectralParameter sp = spectral_parameter(spaces[1].lambda, g.q);
    const SpectralParameter sp2 = spectral_parameter(spaces[2].lambda, g.q);

    const CylinderSymbol one = symbol_constant(g, 0, cx(1.0, 0.0));
    const DistributionContext diag = diagonal_context(g, spaces[1].basis[0], sp);
    CHECK(std::abs(wigner(one, diag) - cx(1.0, 0.0)) < 1e-12);

    // Distinct eigenvalues pair to zero.
    const DistributionContext cross =
        pair_context(g, spaces[1].basis[0], sp, spaces[2].basis[0], sp2);
    CHECK(std::abs(wigner(one, cross)) < 1e-12);
}

TEST_CASE("unit-symbol pairing matches its closed form on the petersen graph") {
    // At lambda = 1/3, q = 2 the pairing of a unit eigenfunction with itself
    // is (mu^2 - q)/(mu^2 - 1) = (21 + sqrt(7) i)/16, worked out from
    // mu = (1 + i sqrt(7))/2.
    const RegularGraph g = named_graph("petersen");
    const auto spaces = eigh_decompose(g);
    REQUIRE(std::abs(spaces[1].lambda - 1.0 / 3.0) < 1e-12);
    REQUIRE(spaces[1].multiplicity == 5);
    const SpectralParameter sp = spectral_parameter(1.0 / 3.0, g.q);
    const CylinderSymbol one = symbol_constant(g, 0, cx(1.0, 0.0));
    const cx want(21.0 / 16.0, std::sqrt(7.0) / 16.0);
    for (const auto& phi : spaces[1].basis) {
        const DistributionContext ctx = diagonal_context(g, phi, sp);
        CHECK(std::abs(patterson_sullivan(one, ctx) - want) < 1e-12);
    }
}

TEST_CASE("c function frozen value") {
    // q = 2, lambda = 1/3: c(s) = 1/2 - i/(6 sqrt(7)), worked out from
    // z = (1 + i sqrt(7))/(2 sqrt(2)) and mu = sqrt(2) z.
    const SpectralParameter sp = spectral_parameter(1.0 / 3.0, 2);
    const cx got = c_function(sp, 2);
    CHECK(std::abs(got - cx(0.5, -1.0 / (6.0 * std::sqrt(7.0)))) < 1e-14);
}

TEST_CASE("depth-zero tensor agrees with the geodesic pairing") {
    const RegularGraph g = named_graph("cube");
    const auto spaces = eigh_decompose(g);
    REQUIRE(std::abs(spaces[1].lambda - 1.0 / 3.0) < 1e-12);
    const SpectralParameter sp = spectral_parameter(spaces[1].lambda, g.q);
    const CylinderSymbol one = symbol_constant(g, 0, cx(1.0, 0.0));
    for (const auto& f : spaces[1].basis) {
        for (const auto& h : spaces[1].basis) {
            const ResonantState u = resonant_state(g, complexify(f), sp);
            const ResonantState w = coresonant_state(g, complexify(h), sp);
            CHECK(std::abs(ps_tensor(g, u, w, one) - geodesic_pairing(g, u, w)) < 1e-13);
            CHECK(thrown_tag<InvalidInput>([&] { ps_tensor(g, w, u, one); }) ==
                  "bad_orientation");
            CHECK(thrown_tag<InvalidInput>([&] { ps_tensor_shifted(g, w, u, one); }) ==
                  "bad_orientation");
        }
    }
}

TEST_CASE("advancing the forward half multiplies the tensor by mu") {
    // Not arc-transitive on purpose: the identity is an eigen-relation fact,
    // not a symmetry fact, so it has to survive a random cubic graph.
    const RegularGraph g = random_regular(12, 3, 5);
    const auto spaces = eigh_decompose(g);
    int checked = 0;
    for (const auto& space : spaces) {
        const SpectralParameter sp = spectral_parameter(space.lambda, g.q);
        if (!admissible(sp)) continue;
        const ResonantState u = resonant_state(g, complexify(space.basis[0]), sp);
        const ResonantState w = coresonant_state(g, complexify(space.basis.back()), sp);
        for (int depth = 0; depth <= 3; ++depth) {
            const CylinderSymbol a = symbol_random(g, depth, 31 + static_cast<uint64_t>(depth));
            const cx lhs = ps_tensor_shifted(g, u, w, a);
            const cx rhs = sp.mu * ps_tensor(g, u, w, a);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
            ++checked;
        }
    }
    CHECK(checked >= 8);
}

TEST_CASE("ruelle distribution traces the spectral projector") {
    const RegularGraph g = named_graph("petersen");
    const CylinderSymbol one = symbol_constant(g, 0, cx(1.0, 0.0));

    // The unit symbol returns the rank of the projector: the Laplace
    // multiplicities 5 at 1/3 and 4 at -2/3.
    CHECK(std::abs(ruelle_distribution(one, g, 1.0 / 3.0) - cx(5.0, 0.0)) < 1e-9);
    CHECK(std::abs(ruelle_distribution(one, g, -2.0 / 3.0) - cx(4.0, 0.0)) < 1e-9);

    // Same stepped identity at the level of the full trace, again on a graph
    // with no symmetry to lean on.
    const RegularGraph h = random_regular(14, 3, 9);
    const auto hspaces = eigh_decompose(h);
    int traced = 0;
    for (const auto& space : hspaces) {
        const SpectralParameter sp = spectral_parameter(space.lambda, h.q);
        if (!admissible(sp)) continue;
        const CylinderSymbol a = symbol_random(h, 2, 77);
        const cx base = ruelle_distribution(a, h, space.lambda);
        const cx stepped = ruelle_shifted(a, h, space.lambda);
        CHECK(std::abs(stepped - sp.mu * base) <= 1e-9 * std::max(1.0, std::abs(base)));
        if (++traced == 3) break;
    }
    CHECK(traced == 3);

    CHECK(thrown_tag<InvalidInput>([&] { ruelle_distribution(one, g, 1.0); }) ==
          "exceptional_parameter");
    const double band = 2.0 * std::sqrt(2.0) / 3.0;
    CHECK(thrown_tag<InvalidInput>([&] { ruelle_distribution(one, g, band); }) ==
          "exceptional_parameter");
}

TEST_CASE("context construction rejects junk input") {
    const RegularGraph g = named_graph("k4");
    const SpectralParameter sp = spectral_parameter(-1.0 / 3.0, g.q);
    std::vector<double> junk(static_cast<size_t>(g.vertex_count), 0.0);
    junk[0] = 1.0;
    CHECK(thrown_tag<InvalidInput>([&] { diagonal_context(g, junk, sp); }) ==
          "not_an_eigenfunction");
}
