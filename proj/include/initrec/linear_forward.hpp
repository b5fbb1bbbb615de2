#pragma once

#include <functional>
#include <span>
#include <vector>

#include "initrec/coefficients.hpp"
#include "initrec/grid.hpp"
#include "initrec/tridiag.hpp"

namespace initrec {

/// One state per time level t_0..t_{nt+1} (nt+2 states), indexed by
/// forward time regardless of sweep direction.
struct Trajectory {
    SpaceTimeGrid grid;
    std::vector<std::vector<double>> states;

    std::span<const double> state(std::size_t n) const { return states[n]; }
    GridFunction state_function(std::size_t n) const { return {grid, states[n]}; }
    GridFunction final_state() const { return {grid, states.back()}; }
    GridFunction initial_state() const { return {grid, states.front()}; }
};

using SourceFn = std::function<double(double x, double t)>;

/// Applies the Crank-Nicolson step map u -> A^{-1}(B u + src) repeatedly.
/// Shared by the forward, adjoint, and input-output paths so that the
/// discrete adjoint identity holds to solver precision.
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(std::span<const double> a, const SpaceTimeGrid& grid);

    /// out = A^{-1}(B u + src); src may be empty. out must not alias u.
    void step(std::span<const double> u, std::span<const double> src, std::span<double> out);

    const SpaceTimeGrid& grid() const { return grid_; }

private:
    SpaceTimeGrid grid_;
    std::vector<double> gamma_;
    TridiagonalMatrix A_;
    std::vector<double> rhs_;
    std::vector<double> scratch_;
};

/// Crank-Nicolson solve of u_t = a u_xx + G with states[0] = f.
/// The source enters as the CN time average dt*(G^n + G^{n+1})/2.
Trajectory solve_forward(const GridFunction& f, std::span<const double> a,
                         const SpaceTimeGrid& grid, const SourceFn& source = {});

/// Backward-in-time solve of psi_t = -a psi_xx with psi(T) = psi_T,
/// using the identical step map in reversed order (the discrete
/// transpose construction).
Trajectory solve_adjoint(const GridFunction& psi_T, std::span<const double> a,
                         const SpaceTimeGrid& grid);

/// Input-output map Psi(f) = u(.,T;f) for the linear problem; does not
/// store the trajectory.
GridFunction input_output(const GridFunction& f, std::span<const double> a,
                          const SpaceTimeGrid& grid);

}  // namespace initrec
