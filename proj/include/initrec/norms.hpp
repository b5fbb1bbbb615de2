#pragma once

#include <span>

#include "initrec/grid.hpp"

namespace initrec {

/// Quadrature over the interior nodes x_1..x_nx. The default gives every
/// interior node weight dx (the composite trapezoidal rule with the two
/// boundary half-cells omitted); the CN step map is exactly self-adjoint
/// in the resulting inner product. `simpson` is an optional higher-order
/// composite rule on the same interior restriction, for diagnostics only.
enum class QuadratureRule { trapezoid, simpson };

/// Approximates integral of u*v/a over (0,1). a must be positive at every
/// interior node.
double weighted_l2_inner(const GridFunction& u, const GridFunction& v,
                         std::span<const double> a,
                         QuadratureRule rule = QuadratureRule::trapezoid);

double weighted_l2_norm(const GridFunction& u, std::span<const double> a,
                        QuadratureRule rule = QuadratureRule::trapezoid);

/// sqrt(|u|^2_{1/a} + |u_x|^2_{L2}); u_x by centered differences with
/// phantom zero boundary values.
double weighted_h1_norm(const GridFunction& u, std::span<const double> a,
                        QuadratureRule rule = QuadratureRule::trapezoid);

}  // namespace initrec
