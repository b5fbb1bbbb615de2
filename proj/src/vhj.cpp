#include "initrec/vhj.hpp"

#include <cmath>
#include <string>

#include "initrec/errors.hpp"
#include "initrec/kernels.hpp"

namespace initrec {

void NewtonConfig::validate() const {
    if (!(tol > 0.0)) throw ValidationError("NewtonConfig: tol must be positive");
    if (max_iters < 1) throw ValidationError("NewtonConfig: max_iters must be >= 1");
}

std::vector<double> vhj_step_residual(std::span<const double> w, std::span<const double> u_prev,
                                      const CoefficientSet& coeffs, const SpaceTimeGrid& grid,
                                      std::span<const double> src) {
    if (w.size() != grid.nx || u_prev.size() != grid.nx)
        throw ValidationError("vhj_step_residual: state length does not match grid");
    std::vector<double> out(grid.nx);
    kernels::vhj_residual(w, u_prev, coeffs.a, coeffs.b, coeffs.c, coeffs.d, coeffs.q, grid.dx,
                          grid.dt, src, out);
    return out;
}

TridiagonalMatrix vhj_step_jacobian(std::span<const double> w, const CoefficientSet& coeffs,
                                    const SpaceTimeGrid& grid) {
    TridiagonalMatrix J;
    J.diag.resize(grid.nx);
    J.lower.resize(grid.nx - 1);
    J.upper.resize(grid.nx - 1);
    kernels::vhj_jacobian(w, coeffs.a, coeffs.b, coeffs.c, coeffs.d, coeffs.q, grid.dx, grid.dt,
                          J.lower, J.diag, J.upper);
    return J;
}

NewtonStepResult newton_step_solve(std::span<const double> u_prev, const CoefficientSet& coeffs,
                                   const SpaceTimeGrid& grid, const NewtonConfig& cfg,
                                   std::span<const double> src) {
    cfg.validate();
    NewtonStepResult res;
    res.u_next.assign(u_prev.begin(), u_prev.end());
    if (cfg.initial_guess == NewtonConfig::InitialGuess::zero)
        res.u_next.assign(u_prev.size(), 0.0);

    std::vector<double> F(grid.nx), delta(grid.nx), scratch(grid.nx);
    for (int k = 0; k <= cfg.max_iters; ++k) {
        kernels::vhj_residual(res.u_next, u_prev, coeffs.a, coeffs.b, coeffs.c, coeffs.d,
                              coeffs.q, grid.dx, grid.dt, src, F);
        res.final_residual = kernels::max_abs(F);
        res.residual_history.push_back(res.final_residual);
        if (res.final_residual < cfg.tol) {
            res.converged = true;
            return res;
        }
        if (k == cfg.max_iters) break;
        const TridiagonalMatrix J = vhj_step_jacobian(res.u_next, coeffs, grid);
        thomas_solve_into(J, F, delta, scratch);
        for (std::size_t j = 0; j < res.u_next.size(); ++j) res.u_next[j] -= delta[j];
        res.iterations = k + 1;
    }
    res.converged = false;
    return res;
}

std::pair<Trajectory, NewtonReport> solve_vhj(const GridFunction& f, const CoefficientSet& coeffs,
                                              const SpaceTimeGrid& grid, const NewtonConfig& cfg) {
    if (!(f.grid() == grid)) throw ValidationError("solve_vhj: f lives on a different grid");
    coeffs.validate(grid);
    cfg.validate();

    Trajectory traj;
    traj.grid = grid;
    traj.states.resize(grid.nt + 2);
    traj.states[0].assign(f.values().begin(), f.values().end());

    NewtonReport report;
    report.iterations_per_step.resize(grid.nt + 1);
    report.final_residuals.resize(grid.nt + 1);

    std::vector<double> src;
    for (std::size_t n = 0; n <= grid.nt; ++n) {
        if (coeffs.source) {
            src.resize(grid.nx);
            const double tn = grid.t(n), tn1 = grid.t(n + 1);
            for (std::size_t j = 0; j < grid.nx; ++j) {
                const double x = grid.x(j + 1);
                src[j] = 0.5 * (coeffs.source(x, tn) + coeffs.source(x, tn1));
            }
        }
        NewtonStepResult step = newton_step_solve(traj.states[n], coeffs, grid, cfg, src);
        report.iterations_per_step[n] = step.iterations;
        report.final_residuals[n] = step.final_residual;
        if (!step.converged) {
            report.converged = false;
            throw SolverError("solve_vhj: Newton did not reach tol " + std::to_string(cfg.tol) +
                              " within " + std::to_string(cfg.max_iters) +
                              " iterations at time level " + std::to_string(n + 1) +
                              " (residual " + std::to_string(step.final_residual) + ")");
        }
        traj.states[n + 1] = std::move(step.u_next);
    }
    return {std::move(traj), std::move(report)};
}

GridFunction vhj_input_output(const GridFunction& f, const CoefficientSet& coeffs,
                              const SpaceTimeGrid& grid, const NewtonConfig& cfg) {
    auto [traj, report] = solve_vhj(f, coeffs, grid, cfg);
    return traj.final_state();
}

}  // namespace initrec
