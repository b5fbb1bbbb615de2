#include "initrec/linear_forward.hpp"

#include "initrec/errors.hpp"
#include "initrec/kernels.hpp"

namespace initrec {

CrankNicolsonStepper::CrankNicolsonStepper(std::span<const double> a, const SpaceTimeGrid& grid)
    : grid_(grid), rhs_(grid.nx), scratch_(grid.nx) {
    auto [A, B] = assemble_cn_pair(a, grid);
    A_ = std::move(A);
    gamma_.resize(grid.nx);
    const double scale = grid.dt / (2.0 * grid.dx * grid.dx);
    for (std::size_t j = 0; j < grid.nx; ++j) gamma_[j] = a[j] * scale;
}

void CrankNicolsonStepper::step(std::span<const double> u, std::span<const double> src,
                                std::span<double> out) {
    kernels::cn_rhs(gamma_, u, src, rhs_);
    thomas_solve_into(A_, rhs_, out, scratch_);
}

namespace {

// dt * (G(x, t_n) + G(x, t_{n+1})) / 2 at the interior nodes
std::vector<double> source_average(const SourceFn& source, const SpaceTimeGrid& grid,
                                   std::size_t n) {
    std::vector<double> src(grid.nx);
    const double tn = grid.t(n);
    const double tn1 = grid.t(n + 1);
    for (std::size_t j = 0; j < grid.nx; ++j) {
        const double x = grid.x(j + 1);
        src[j] = grid.dt * 0.5 * (source(x, tn) + source(x, tn1));
    }
    return src;
}

}  // namespace

Trajectory solve_forward(const GridFunction& f, std::span<const double> a,
                         const SpaceTimeGrid& grid, const SourceFn& source) {
    if (!(f.grid() == grid)) throw ValidationError("solve_forward: f lives on a different grid");
    CrankNicolsonStepper stepper(a, grid);
    Trajectory traj;
    traj.grid = grid;
    traj.states.resize(grid.nt + 2);
    traj.states[0].assign(f.values().begin(), f.values().end());
    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n) {
        traj.states[n + 1].resize(grid.nx);
        if (source) {
            const auto src = source_average(source, grid, n);
            stepper.step(traj.states[n], src, traj.states[n + 1]);
        } else {
            stepper.step(traj.states[n], {}, traj.states[n + 1]);
        }
    }
    return traj;
}

Trajectory solve_adjoint(const GridFunction& psi_T, std::span<const double> a,
                         const SpaceTimeGrid& grid) {
    if (!(psi_T.grid() == grid))
        throw ValidationError("solve_adjoint: psi_T lives on a different grid");
    CrankNicolsonStepper stepper(a, grid);
    Trajectory traj;
    traj.grid = grid;
    traj.states.resize(grid.nt + 2);
    const std::size_t last = grid.nt + 1;
    traj.states[last].assign(psi_T.values().begin(), psi_T.values().end());
    for (std::size_t n = last; n > 0; --n) {
        traj.states[n - 1].resize(grid.nx);
        stepper.step(traj.states[n], {}, traj.states[n - 1]);
    }
    return traj;
}

GridFunction input_output(const GridFunction& f, std::span<const double> a,
                          const SpaceTimeGrid& grid) {
    if (!(f.grid() == grid)) throw ValidationError("input_output: f lives on a different grid");
    CrankNicolsonStepper stepper(a, grid);
    std::vector<double> u(f.values().begin(), f.values().end());
    std::vector<double> next(grid.nx);
    for (std::size_t n = 0; n <= grid.nt; ++n) {
        stepper.step(u, {}, next);
        u.swap(next);
    }
    return {grid, std::move(u)};
}

}  // namespace initrec
