#include "initrec/grid.hpp"

#include <cmath>

#include "initrec/kernels.hpp"

namespace initrec {

SpaceTimeGrid build_grid(std::size_t nx, std::size_t nt, double T) {
    if (nx < 2) throw ValidationError("build_grid: nx must be >= 2");
    if (nt < 1) throw ValidationError("build_grid: nt must be >= 1");
    if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("build_grid: T must be positive");
    SpaceTimeGrid g;
    g.nx = nx;
    g.nt = nt;
    g.T = T;
    g.dx = 1.0 / static_cast<double>(nx + 1);
    g.dt = T / static_cast<double>(nt + 1);
    return g;
}

std::vector<double> SpaceTimeGrid::interior_x() const {
    std::vector<double> xs(nx);
    for (std::size_t j = 0; j < nx; ++j) xs[j] = x(j + 1);
    return xs;
}

GridFunction::GridFunction(SpaceTimeGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.nx)
        throw ValidationError("GridFunction: value count does not match grid.nx");
}

GridFunction GridFunction::zeros(const SpaceTimeGrid& grid) {
    return GridFunction(grid, std::vector<double>(grid.nx, 0.0));
}

GridFunction GridFunction::sample(const SpaceTimeGrid& grid,
                                  const std::function<double(double)>& f) {
    std::vector<double> v(grid.nx);
    for (std::size_t j = 0; j < grid.nx; ++j) v[j] = f(grid.x(j + 1));
    return GridFunction(grid, std::move(v));
}

double GridFunction::max_abs() const { return kernels::max_abs(values_); }

void require_same_grid(const GridFunction& u, const GridFunction& v) {
    if (!(u.grid() == v.grid()))
        throw ValidationError("grid mismatch between grid functions");
}

}  // namespace initrec
