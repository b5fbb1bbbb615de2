#pragma once

#include <span>
#include <vector>

#include "initrec/coefficients.hpp"
#include "initrec/grid.hpp"
#include "initrec/linear_forward.hpp"
#include "initrec/tridiag.hpp"

namespace initrec {

struct NewtonConfig {
    double tol = 1e-10;
    int max_iters = 50;
    enum class InitialGuess { previous_step, zero };
    InitialGuess initial_guess = InitialGuess::previous_step;

    void validate() const;
};

/// Per-time-step Newton statistics for one solve_vhj run.
struct NewtonReport {
    std::vector<int> iterations_per_step;    // length nt+1
    std::vector<double> final_residuals;     // length nt+1
    bool converged = true;
};

/// Residual of the implicit CN discretization at candidate next state w:
///   (w-u)/dt - (a/2)(D2 w + D2 u) + (b/q)|Dc w|^q + d Dc w + (c/2)(w+u) - src
/// src is the CN-averaged source dt-free value (i.e. G evaluated, not
/// dt-scaled); may be empty.
std::vector<double> vhj_step_residual(std::span<const double> w, std::span<const double> u_prev,
                                      const CoefficientSet& coeffs, const SpaceTimeGrid& grid,
                                      std::span<const double> src = {});

/// Exact tridiagonal Jacobian of vhj_step_residual with respect to w.
TridiagonalMatrix vhj_step_jacobian(std::span<const double> w, const CoefficientSet& coeffs,
                                    const SpaceTimeGrid& grid);

struct NewtonStepResult {
    std::vector<double> u_next;
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    std::vector<double> residual_history;  // max-norm of F before each update
};

/// Newton iteration for one implicit time step (solve J d = F, w -= d).
/// Reaching max_iters is reported via `converged`, not thrown; a singular
/// Jacobian throws SolverError.
NewtonStepResult newton_step_solve(std::span<const double> u_prev, const CoefficientSet& coeffs,
                                   const SpaceTimeGrid& grid, const NewtonConfig& cfg,
                                   std::span<const double> src = {});

/// Chains newton_step_solve over all time levels; states[0] = f.
/// Throws SolverError naming the offending time level if any step fails
/// to converge within cfg.max_iters.
std::pair<Trajectory, NewtonReport> solve_vhj(const GridFunction& f, const CoefficientSet& coeffs,
                                              const SpaceTimeGrid& grid, const NewtonConfig& cfg);

/// Psi(f) = u(.,T;f) for the VHJ problem.
GridFunction vhj_input_output(const GridFunction& f, const CoefficientSet& coeffs,
                              const SpaceTimeGrid& grid, const NewtonConfig& cfg);

}  // namespace initrec
