#pragma once

#include <span>
#include <utility>
#include <vector>

#include "initrec/grid.hpp"

namespace initrec {

/// Tridiagonal matrix; lower/upper hold the sub/super-diagonals
/// (length n-1), diag the main diagonal (length n).
struct TridiagonalMatrix {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    std::size_t n() const { return diag.size(); }

    std::vector<double> apply(std::span<const double> x) const;
};

/// Crank-Nicolson pair for u_t = a u_xx: A has diag 1+2g_j and
/// off-diagonals -g_j, B has diag 1-2g_j and off-diagonals +g_j,
/// with g_j = a_j dt / (2 dx^2). Rejects non-positive a_j.
std::pair<TridiagonalMatrix, TridiagonalMatrix> assemble_cn_pair(std::span<const double> a,
                                                                 const SpaceTimeGrid& grid);

/// Thomas algorithm. Throws SolverError on a vanishing pivot; for
/// diagonally dominant systems the relative residual is <= 1e-12.
std::vector<double> thomas_solve(const TridiagonalMatrix& m, std::span<const double> rhs);

/// In-place variant reusing caller-provided scratch (length n).
void thomas_solve_into(const TridiagonalMatrix& m, std::span<const double> rhs,
                       std::span<double> x, std::span<double> scratch);

}  // namespace initrec
