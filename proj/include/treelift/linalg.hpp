#pragma once

#include <complex>
#include <vector>

namespace treelift {

using cx = std::complex<double>;

// Dense row-major complex matrix, sized for the Hashimoto operator
// (2E x 2E with 2E <= a few hundred here), so no blocking or sparsity.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<cx> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    cx& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const cx& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

CMat matmul(const CMat& x, const CMat& y);

// Kernel basis of m by complex Gaussian elimination with partial pivoting.
// A pivot counts as zero when its magnitude is below rank_tol times the
// largest pivot encountered (or below an absolute floor for the zero
// matrix). Basis vectors: one per free column, unit entry in that column.
std::vector<std::vector<cx>> kernel_basis(CMat m, double rank_tol = 1e-8);

// Solves a square complex system in place (partial pivoting). Throws
// NumericalError "singular_system" if a pivot vanishes.
std::vector<cx> solve_linear(CMat m, std::vector<cx> rhs);

// Cyclic Jacobi eigendecomposition of a symmetric real matrix, fixed
// rotation order for reproducibility. Returns eigenvalues ascending;
// vectors[k] is the eigenvector for eigenvalues[k], sign-normalized so the
// absolutely largest component is positive. Throws NumericalError
// "convergence_failure" after max_sweeps.
struct SymmetricEigen {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> vectors;
};

SymmetricEigen jacobi_eigh(const std::vector<std::vector<double>>& m,
                           int max_sweeps = 100);

} // namespace treelift
