#include "initrec/norms.hpp"

#include <cmath>
#include <vector>

#include "initrec/errors.hpp"
#include "initrec/kernels.hpp"

namespace initrec {

namespace {

void check_inputs(const GridFunction& u, const GridFunction& v, std::span<const double> a) {
    require_same_grid(u, v);
    if (a.size() != u.grid().nx)
        throw ValidationError("weighted inner product: coefficient length does not match grid");
    for (double aj : a)
        if (!(aj > 0.0)) throw ValidationError("weighted inner product: a must be positive at interior nodes");
}

// Composite Simpson on x_1..x_nx; when the interval count nx-1 is odd the
// last interval falls back to a trapezoid.
double simpson_interior(std::span<const double> g, double dx) {
    const std::size_t n = g.size();
    if (n < 3) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += g[j];
        return s * dx;
    }
    const std::size_t pairs = (n - 1) / 2;
    double s = 0.0;
    for (std::size_t k = 0; k < pairs; ++k)
        s += (g[2 * k] + 4.0 * g[2 * k + 1] + g[2 * k + 2]) * dx / 3.0;
    if ((n - 1) % 2 != 0) s += 0.5 * dx * (g[n - 2] + g[n - 1]);
    return s;
}

}  // namespace

double weighted_l2_inner(const GridFunction& u, const GridFunction& v,
                         std::span<const double> a, QuadratureRule rule) {
    check_inputs(u, v, a);
    const double dx = u.grid().dx;
    if (rule == QuadratureRule::trapezoid)
        return dx * kernels::weighted_dot(u.values(), v.values(), a);
    std::vector<double> g(u.size());
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = u[j] * v[j] / a[j];
    return simpson_interior(g, dx);
}

double weighted_l2_norm(const GridFunction& u, std::span<const double> a, QuadratureRule rule) {
    const double s = weighted_l2_inner(u, u, a, rule);
    return std::sqrt(std::max(s, 0.0));
}

double weighted_h1_norm(const GridFunction& u, std::span<const double> a, QuadratureRule rule) {
    const double l2sq = weighted_l2_inner(u, u, a, rule);
    const double dx = u.grid().dx;
    const std::size_t n = u.size();
    std::vector<double> der(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double right = (j + 1 < n) ? u[j + 1] : 0.0;
        const double left = (j > 0) ? u[j - 1] : 0.0;
        der[j] = (right - left) / (2.0 * dx);
    }
    double dsq = 0.0;
    if (rule == QuadratureRule::trapezoid) {
        for (double d : der) dsq += d * d;
        dsq *= dx;
    } else {
        std::vector<double> g(n);
        for (std::size_t j = 0; j < n; ++j) g[j] = der[j] * der[j];
        dsq = simpson_interior(g, dx);
    }
    return std::sqrt(std::max(l2sq + dsq, 0.0));
}

}  // namespace initrec
