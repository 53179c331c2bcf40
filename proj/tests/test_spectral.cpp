#include "doctest.h"

#include <cmath>
#include <complex>

#include "treelift/errors.hpp"
#include "treelift/graph.hpp"
#include "treelift/spectral.hpp"

#include "test_util.hpp"

using namespace treelift;

namespace {

constexpr double kBandEdge2 = 0.9428090415820635; // 2 sqrt(2) / 3, correctly rounded

double eigen_residual(const std::vector<std::vector<double>>& m, double lambda,
                      const std::vector<double>& v) {
    double worst = 0.0;
    for (size_t i = 0; i < m.size(); ++i) {
        double acc = 0.0;
        for (size_t j = 0; j < m.size(); ++j) acc += m[i][j] * v[j];
        worst = std::max(worst, std::abs(acc - lambda * v[i]));
    }
    return worst;
}

} // namespace

TEST_CASE("quadratic branch values at a reference point") {
    // lambda = 1/3 on a cubic graph: z^2 - z/sqrt(2) + 1 = 0, upper root.
    const SpectralParameter sp = spectral_parameter(1.0 / 3.0, 2);
    CHECK(sp.z.real() == doctest::Approx(0.3535533905932739).epsilon(1e-14));
    CHECK(sp.z.imag() == doctest::Approx(0.9354143466934853).epsilon(1e-14));
    CHECK(sp.mu.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(sp.mu.imag() == doctest::Approx(1.3228756555322954).epsilon(1e-14));
    CHECK(sp.classification == SpectralClass::tempered);
    CHECK(std::abs(sp.z) == doctest::Approx(1.0).epsilon(1e-14));

    // Both quadratic roots recover lambda through chi.
    CHECK(chi_of(sp.z, 2).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(std::abs(chi_of(sp.z, 2).imag()) < 1e-14);
    CHECK(chi_of(1.0 / sp.z, 2).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    // mu solves the transfer quadratic mu^2 - (q+1) lambda mu + q = 0.
    const cx quad = sp.mu * sp.mu - 3.0 * (1.0 / 3.0) * sp.mu + 2.0;
    CHECK(std::abs(quad) < 1e-14);
}

TEST_CASE("classification boundaries") {
    CHECK(spectral_parameter(0.0, 2).classification == SpectralClass::tempered);
    CHECK(spectral_parameter(0.94, 2).classification == SpectralClass::tempered);
    CHECK(spectral_parameter(0.95, 2).classification == SpectralClass::untempered);
    CHECK(spectral_parameter(kBandEdge2, 2).classification == SpectralClass::band_edge);
    CHECK(spectral_parameter(-kBandEdge2, 2).classification == SpectralClass::band_edge);
    // One ulp off the edge must not fall back to tempered: the detection is
    // through the trace of z, which moves linearly in lambda.
    const double nudged = std::nextafter(kBandEdge2, 0.0);
    CHECK(spectral_parameter(nudged, 2).classification == SpectralClass::band_edge);
    CHECK(spectral_parameter(2.0 * std::sqrt(2.0) / 3.0, 2).classification ==
          SpectralClass::band_edge);
    CHECK(spectral_parameter(1.0, 2).classification == SpectralClass::exceptional);
    CHECK(spectral_parameter(-1.0, 2).classification == SpectralClass::exceptional);
    CHECK(spectral_parameter(1.0, 2).exceptional());

    CHECK(to_string(SpectralClass::tempered) == "tempered");
    CHECK(to_string(SpectralClass::band_edge) == "band_edge");

    CHECK(thrown_tag<InvalidInput>([] { spectral_parameter(0.5, 1); }) == "q_too_small");
}

TEST_CASE("branch operations") {
    const SpectralParameter sp = spectral_parameter(1.0 / 3.0, 2);

    const SpectralParameter cj = conjugate_parameter(sp);
    CHECK(std::abs(cj.z - std::conj(sp.z)) < 1e-15);
    CHECK(cj.lambda == doctest::Approx(sp.lambda));

    // On the tempered circle the conjugate branch is the other quadratic root.
    const SpectralParameter ob = other_branch(sp);
    CHECK(std::abs(ob.z - 1.0 / sp.z) < 1e-15);
    CHECK(std::abs(ob.z - cj.z) < 1e-13);
    CHECK(ob.lambda == doctest::Approx(sp.lambda).epsilon(1e-13));

    // Untempered: conjugation fixes a real z, the other root moves it.
    const SpectralParameter up = spectral_parameter(0.97, 2);
    CHECK(std::abs(up.z.imag()) < 1e-14);
    CHECK(std::abs(conjugate_parameter(up).z - up.z) < 1e-15);
    CHECK(std::abs(other_branch(up).z - up.z) > 0.1);

    const SpectralParameter mm = mismatched_parameter(sp);
    CHECK(std::abs(mm.z - 1.0 / std::conj(sp.z)) < 1e-15);

    const SpectralParameter direct = parameter_from_z(sp.z, 2);
    CHECK(direct.lambda == doctest::Approx(sp.lambda).epsilon(1e-13));
    CHECK(std::abs(direct.mu - sp.mu) < 1e-15);
    CHECK(thrown_tag<InvalidInput>([] { parameter_from_z(cx(0.0, 0.0), 2); }) ==
          "bad_parameter");

    // |z| > 1 corresponds to growing transfer data; z = 3 is the recovery
    // regime used by the measure approximants.
    const SpectralParameter rec = parameter_from_z(cx(3.0, 0.0), 2);
    CHECK(rec.classification == SpectralClass::untempered);
    CHECK(rec.lambda == doctest::Approx(10.0 * std::sqrt(2.0) / 9.0).epsilon(1e-14));
}

TEST_CASE("eigendecomposition matches the known spectra") {
    struct Expected {
        const char* name;
        std::vector<std::pair<double, int>> spectrum; // (lambda, multiplicity) descending
    };
    const Expected table[] = {
        {"k4", {{1.0, 1}, {-1.0 / 3.0, 3}}},
        {"petersen", {{1.0, 1}, {1.0 / 3.0, 5}, {-2.0 / 3.0, 4}}},
        {"cube", {{1.0, 1}, {1.0 / 3.0, 3}, {-1.0 / 3.0, 3}, {-1.0, 1}}},
        {"k33", {{1.0, 1}, {0.0, 4}, {-1.0, 1}}},
    };

    for (const Expected& ex : table) {
        CAPTURE(ex.name);
        const RegularGraph g = named_graph(ex.name);
        const auto spaces = eigh_decompose(g);
        const auto m = laplace_matrix(g);

        REQUIRE(spaces.size() == ex.spectrum.size());
        for (size_t k = 0; k < spaces.size(); ++k) {
            CHECK(spaces[k].lambda == doctest::Approx(ex.spectrum[k].first).epsilon(1e-10));
            CHECK(spaces[k].multiplicity == ex.spectrum[k].second);
            REQUIRE(static_cast<int>(spaces[k].basis.size()) == spaces[k].multiplicity);

            for (const auto& v : spaces[k].basis) {
                CHECK(eigen_residual(m, spaces[k].lambda, v) < 1e-9);
                double norm = 0.0;
                for (double x : v) norm += x * x;
                CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
            }
        }

        // Orthogonality across the whole basis.
        std::vector<const std::vector<double>*> all;
        for (const auto& s : spaces)
            for (const auto& v : s.basis) all.push_back(&v);
        REQUIRE(static_cast<int>(all.size()) == g.vertex_count);
        for (size_t a = 0; a < all.size(); ++a) {
            for (size_t b = a + 1; b < all.size(); ++b) {
                double dot = 0.0;
                for (int i = 0; i < g.vertex_count; ++i) dot += (*all[a])[i] * (*all[b])[i];
                CHECK(std::abs(dot) < 1e-10);
            }
        }
    }
}
