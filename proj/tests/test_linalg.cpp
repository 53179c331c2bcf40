#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "treelift/errors.hpp"
#include "treelift/linalg.hpp"
#include "treelift/rng.hpp"

#include "test_util.hpp"

#ifdef HAVE_EIGEN_ORACLE
#include <Eigen/Dense>
#endif

using namespace treelift;

namespace {

double kernel_residual(const CMat& m, const std::vector<cx>& v) {
    double worst = 0.0;
    for (int r = 0; r < m.rows; ++r) {
        cx acc(0.0, 0.0);
        for (int c = 0; c < m.cols; ++c) acc += m.at(r, c) * v[c];
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

CMat random_cmat(int n, uint64_t seed) {
    Rng rng(seed);
    CMat m(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) m.at(r, c) = cx(rng.next_symmetric(), rng.next_symmetric());
    }
    return m;
}

} // namespace

TEST_CASE("matmul") {
    CMat a(2, 2), b(2, 2);
    a.at(0, 0) = cx(1, 0);
    a.at(0, 1) = cx(0, 1);
    a.at(1, 0) = cx(2, 0);
    a.at(1, 1) = cx(0, -1);
    b.at(0, 0) = cx(0, 1);
    b.at(0, 1) = cx(1, 0);
    b.at(1, 0) = cx(1, 0);
    b.at(1, 1) = cx(0, 0);
    const CMat c = matmul(a, b);
    CHECK(std::abs(c.at(0, 0) - cx(0, 2)) < 1e-15);
    CHECK(std::abs(c.at(0, 1) - cx(1, 0)) < 1e-15);
    CHECK(std::abs(c.at(1, 0) - cx(0, 1)) < 1e-15);
    CHECK(std::abs(c.at(1, 1) - cx(2, 0)) < 1e-15);
}

TEST_CASE("kernel_basis finds exact nullspaces") {
    SUBCASE("one-dimensional kernel") {
        // Rows (1,0,-1), (0,1,-1), (1,1,-2): third row is the sum, kernel
        // is spanned by (1,1,1).
        CMat m(3, 3);
        m.at(0, 0) = 1;
        m.at(0, 2) = -1;
        m.at(1, 1) = 1;
        m.at(1, 2) = -1;
        m.at(2, 0) = 1;
        m.at(2, 1) = 1;
        m.at(2, 2) = -2;
        const auto basis = kernel_basis(m);
        REQUIRE(basis.size() == 1);
        CHECK(kernel_residual(m, basis[0]) < 1e-14);
        CHECK(std::abs(basis[0][0] - basis[0][1]) < 1e-14);
        CHECK(std::abs(basis[0][0] - basis[0][2]) < 1e-14);
    }
    SUBCASE("complex singular matrix") {
        CMat m(2, 2);
        m.at(0, 0) = cx(1, 0);
        m.at(0, 1) = cx(0, 1);
        m.at(1, 0) = cx(0, -1);
        m.at(1, 1) = cx(1, 0);
        const auto basis = kernel_basis(m);
        REQUIRE(basis.size() == 1);
        CHECK(kernel_residual(m, basis[0]) < 1e-14);
    }
    SUBCASE("full rank and zero matrix") {
        CHECK(kernel_basis(random_cmat(6, 7)).empty());
        const auto basis = kernel_basis(CMat(4, 4));
        CHECK(basis.size() == 4);
    }
}

TEST_CASE("solve_linear") {
    const int n = 5;
    const CMat m = random_cmat(n, 11);
    Rng rng(12);
    std::vector<cx> x_true(n);
    for (cx& v : x_true) v = cx(rng.next_symmetric(), rng.next_symmetric());
    std::vector<cx> rhs(n, cx(0, 0));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) rhs[r] += m.at(r, c) * x_true[c];
    }
    const auto x = solve_linear(m, rhs);
    for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - x_true[i]) < 1e-12);

    CMat sing(2, 2);
    sing.at(0, 0) = cx(1, 1);
    sing.at(0, 1) = cx(2, 0);
    sing.at(1, 0) = cx(2, 2);
    sing.at(1, 1) = cx(4, 0);
    CHECK(thrown_tag<NumericalError>([&] { solve_linear(sing, {cx(1, 0), cx(0, 0)}); }) ==
          "singular_system");
    CHECK(thrown_tag<InvalidInput>([&] { solve_linear(CMat(2, 3), {cx(1, 0), cx(0, 0)}); }) ==
          "bad_shape");
}

TEST_CASE("jacobi_eigh on a known matrix") {
    const std::vector<std::vector<double>> m = {{2, 1}, {1, 2}};
    const SymmetricEigen e = jacobi_eigh(m);
    REQUIRE(e.eigenvalues.size() == 2);
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));

    for (size_t k = 0; k < 2; ++k) {
        double norm = 0.0, resid = 0.0;
        for (int i = 0; i < 2; ++i) {
            norm += e.vectors[k][i] * e.vectors[k][i];
            double mv = 0.0;
            for (int j = 0; j < 2; ++j) mv += m[i][j] * e.vectors[k][j];
            resid = std::max(resid, std::abs(mv - e.eigenvalues[k] * e.vectors[k][i]));
        }
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(resid < 1e-12);
    }

    std::vector<std::vector<double>> offdiag = {{0, 1}, {1, 0}};
    CHECK(thrown_tag<NumericalError>([&] { jacobi_eigh(offdiag, 0); }) ==
          "convergence_failure");
}

TEST_CASE("jacobi_eigh orthonormality and reproducibility") {
    const int n = 10;
    Rng rng(21);
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) m[i][j] = m[j][i] = rng.next_symmetric();
    }
    const SymmetricEigen e1 = jacobi_eigh(m);
    const SymmetricEigen e2 = jacobi_eigh(m);
    CHECK(e1.eigenvalues == e2.eigenvalues);
    CHECK(e1.vectors == e2.vectors);
    CHECK(std::is_sorted(e1.eigenvalues.begin(), e1.eigenvalues.end()));

    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += e1.vectors[a][i] * e1.vectors[b][i];
            CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-12);
        }
    }

#ifdef HAVE_EIGEN_ORACLE
    // Independent eigenvalue oracle for the hand-rolled Jacobi sweep.
    Eigen::MatrixXd em(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) em(i, j) = m[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(em);
    REQUIRE(solver.info() == Eigen::Success);
    for (int k = 0; k < n; ++k) {
        CHECK(e1.eigenvalues[k] == doctest::Approx(solver.eigenvalues()(k)).epsilon(1e-11));
    }
#endif
}
