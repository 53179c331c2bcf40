#include "treelift/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "treelift/errors.hpp"

namespace treelift {

CMat matmul(const CMat& x, const CMat& y) {
    CMat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const cx xv = x.at(i, k);
            if (xv == cx(0.0, 0.0)) continue;
            for (int j = 0; j < y.cols; ++j) {
                out.at(i, j) += xv * y.at(k, j);
            }
        }
    }
    return out;
}

std::vector<std::vector<cx>> kernel_basis(CMat m, double rank_tol) {
    const int rows = m.rows, cols = m.cols;
    std::vector<int> pivot_col_of_row;
    std::vector<char> is_pivot_col(cols, 0);

    int row = 0;
    double largest_pivot = 0.0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int best = row;
        for (int r = row + 1; r < rows; ++r) {
            if (std::abs(m.at(r, col)) > std::abs(m.at(best, col))) best = r;
        }
        const double mag = std::abs(m.at(best, col));
        largest_pivot = std::max(largest_pivot, mag);
        if (mag <= rank_tol * largest_pivot || mag < 1e-300) continue;

        if (best != row) {
            for (int c = 0; c < cols; ++c) std::swap(m.at(best, c), m.at(row, c));
        }
        const cx inv = cx(1.0, 0.0) / m.at(row, col);
        for (int c = col; c < cols; ++c) m.at(row, c) *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row) continue;
            const cx f = m.at(r, col);
            if (f == cx(0.0, 0.0)) continue;
            for (int c = col; c < cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivot_col_of_row.push_back(col);
        is_pivot_col[col] = 1;
        ++row;
    }

    std::vector<std::vector<cx>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot_col[free]) continue;
        std::vector<cx> v(cols, cx(0.0, 0.0));
        v[free] = cx(1.0, 0.0);
        for (size_t r = 0; r < pivot_col_of_row.size(); ++r) {
            v[pivot_col_of_row[r]] = -m.at(static_cast<int>(r), free);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<cx> solve_linear(CMat m, std::vector<cx> rhs) {
    if (m.rows != m.cols || static_cast<int>(rhs.size()) != m.rows) {
        throw InvalidInput("bad_shape: solve_linear needs a square system");
    }
    const int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int best = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(m.at(r, col)) > std::abs(m.at(best, col))) best = r;
        }
        if (std::abs(m.at(best, col)) < 1e-13) {
            throw NumericalError("singular_system: pivot vanished at column " +
                                 std::to_string(col));
        }
        if (best != col) {
            for (int c = 0; c < n; ++c) std::swap(m.at(best, c), m.at(col, c));
            std::swap(rhs[best], rhs[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const cx f = m.at(r, col) / m.at(col, col);
            if (f == cx(0.0, 0.0)) continue;
            for (int c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<cx> x(n);
    for (int r = n - 1; r >= 0; --r) {
        cx acc = rhs[r];
        for (int c = r + 1; c < n; ++c) acc -= m.at(r, c) * x[c];
        x[r] = acc / m.at(r, r);
    }
    return x;
}

SymmetricEigen jacobi_eigh(const std::vector<std::vector<double>>& m_in, int max_sweeps) {
    const int n = static_cast<int>(m_in.size());
    std::vector<std::vector<double>> a = m_in;
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
        return std::sqrt(2.0 * s);
    };

    double frob = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) frob += a[i][j] * a[i][j];
    frob = std::sqrt(frob);
    const double target = std::max(frob, 1.0) * 1e-14;

    int sweep = 0;
    while (off_norm() > target) {
        if (++sweep > max_sweeps) {
            throw NumericalError("convergence_failure: Jacobi exceeded " +
                                 std::to_string(max_sweeps) + " sweeps");
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int qi = p + 1; qi < n; ++qi) {
                const double apq = a[p][qi];
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a[qi][qi] - a[p][p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][qi];
                    a[k][p] = c * akp - s * akq;
                    a[k][qi] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[qi][k];
                    a[p][k] = c * apk - s * aqk;
                    a[qi][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][qi];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][qi] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a[i][i] < a[j][j]; });

    SymmetricEigen out;
    out.eigenvalues.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        out.eigenvalues[k] = a[src][src];
        double peak = 0.0;
        int peak_i = 0;
        for (int i = 0; i < n; ++i) {
            out.vectors[k][i] = v[i][src];
            if (std::abs(v[i][src]) > std::abs(peak)) {
                peak = v[i][src];
                peak_i = i;
            }
        }
        (void)peak_i;
        if (peak < 0.0) {
            for (double& x : out.vectors[k]) x = -x;
        }
    }
    return out;
}

} // namespace treelift
