#include "initrec/tridiag.hpp"

#include <cmath>

#include "initrec/errors.hpp"
#include "initrec/kernels.hpp"

namespace initrec {

std::vector<double> TridiagonalMatrix::apply(std::span<const double> x) const {
    std::vector<double> out(x.size());
    kernels::tridiag_apply(lower, diag, upper, x, out);
    return out;
}

std::pair<TridiagonalMatrix, TridiagonalMatrix> assemble_cn_pair(std::span<const double> a,
                                                                 const SpaceTimeGrid& grid) {
    const std::size_t n = grid.nx;
    if (a.size() != n) throw ValidationError("assemble_cn_pair: coefficient length mismatch");
    TridiagonalMatrix A, B;
    A.diag.resize(n);
    B.diag.resize(n);
    A.lower.resize(n - 1);
    A.upper.resize(n - 1);
    B.lower.resize(n - 1);
    B.upper.resize(n - 1);
    const double scale = grid.dt / (2.0 * grid.dx * grid.dx);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(a[j] > 0.0))
            throw ValidationError("assemble_cn_pair: a must be positive at interior nodes");
        const double g = a[j] * scale;
        A.diag[j] = 1.0 + 2.0 * g;
        B.diag[j] = 1.0 - 2.0 * g;
        if (j > 0) {
            A.lower[j - 1] = -g;
            B.lower[j - 1] = g;
        }
        if (j < n - 1) {
            A.upper[j] = -g;
            B.upper[j] = g;
        }
    }
    return {std::move(A), std::move(B)};
}

void thomas_solve_into(const TridiagonalMatrix& m, std::span<const double> rhs,
                       std::span<double> x, std::span<double> scratch) {
    const std::size_t n = m.n();
    if (rhs.size() != n || x.size() != n || scratch.size() != n)
        throw ValidationError("thomas_solve: size mismatch");

    // forward sweep; scratch holds the modified superdiagonal
    double piv = m.diag[0];
    if (piv == 0.0) throw SolverError("thomas_solve: zero pivot at row 0");
    scratch[0] = (n > 1) ? m.upper[0] / piv : 0.0;
    x[0] = rhs[0] / piv;
    for (std::size_t j = 1; j < n; ++j) {
        piv = m.diag[j] - m.lower[j - 1] * scratch[j - 1];
        if (piv == 0.0)
            throw SolverError("thomas_solve: zero pivot at row " + std::to_string(j));
        if (j < n - 1) scratch[j] = m.upper[j] / piv;
        x[j] = (rhs[j] - m.lower[j - 1] * x[j - 1]) / piv;
    }
    for (std::size_t j = n - 1; j-- > 0;) x[j] -= scratch[j] * x[j + 1];
}

std::vector<double> thomas_solve(const TridiagonalMatrix& m, std::span<const double> rhs) {
    std::vector<double> x(m.n()), scratch(m.n());
    thomas_solve_into(m, rhs, x, scratch);
    return x;
}

}  // namespace initrec
