#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "initrec/errors.hpp"

namespace initrec {

/// Uniform discretization of (0,1) x (0,T).
///
/// nx interior spatial nodes x_j = j*dx, j = 0..nx+1, dx = 1/(nx+1);
/// nt interior time levels t_n = n*dt, n = 0..nt+1, dt = T/(nt+1).
/// Value type; grids compare equal iff (nx, nt, T) match.
struct SpaceTimeGrid {
    std::size_t nx = 0;
    std::size_t nt = 0;
    double T = 0.0;
    double dx = 0.0;
    double dt = 0.0;

    double x(std::size_t j) const { return static_cast<double>(j) * dx; }
    double t(std::size_t n) const { return static_cast<double>(n) * dt; }

    /// Coordinates of the interior nodes x_1..x_nx.
    std::vector<double> interior_x() const;

    bool operator==(const SpaceTimeGrid&) const = default;
};

/// Validates nx >= 2, nt >= 1, T > 0 and builds the grid.
SpaceTimeGrid build_grid(std::size_t nx, std::size_t nt, double T);

/// Values at the interior nodes of a grid; boundary values are
/// implicitly zero (homogeneous Dirichlet).
class GridFunction {
public:
    GridFunction(SpaceTimeGrid grid, std::vector<double> values);

    static GridFunction zeros(const SpaceTimeGrid& grid);
    static GridFunction sample(const SpaceTimeGrid& grid, const std::function<double(double)>& f);

    const SpaceTimeGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t j) const { return values_[j]; }
    double& operator[](std::size_t j) { return values_[j]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double max_abs() const;

private:
    SpaceTimeGrid grid_;
    std::vector<double> values_;
};

/// Throws ValidationError unless both functions live on the same grid.
void require_same_grid(const GridFunction& u, const GridFunction& v);

}  // namespace initrec
