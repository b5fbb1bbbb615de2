#pragma once

#include <functional>
#include <string>
#include <vector>

#include "initrec/grid.hpp"

namespace initrec {

/// Samples a coefficient preset at the interior nodes x_1..x_nx.
///
/// Registered families:
///   sin_pi             sin(pi x)
///   power(mu,nu)       x^mu (1-x)^nu
///   powersin(mu,nu)    x^mu (1-x)^nu sin(pi x)
///   constant(v)        v
///   zero               0
///   indicator(lo,hi)   1 on [lo,hi], 0 elsewhere
///   cosexp             (1-cos x)^2 (e^(1-x)-1)^2
///   file(path)         plain text, one real per line, exactly nx values
///
/// Throws ValidationError for unknown names, malformed parameters, or a
/// tabulation file whose length does not match nx.
std::vector<double> sample_coefficient(const std::string& preset, const SpaceTimeGrid& grid);

/// PDE data for u_t - a u_xx + (b/q)|u_x|^q + d u_x + c u = G.
/// Empty b/c/d vectors mean identically zero; `source` empty means G = 0.
struct CoefficientSet {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> d;
    double q = 2.0;
    std::function<double(double x, double t)> source;

    static CoefficientSet linear(std::vector<double> a_values);

    bool is_linear() const { return b.empty() && c.empty() && d.empty(); }

    /// a_j > 0 at every interior node, q >= 1, consistent lengths.
    void validate(const SpaceTimeGrid& grid) const;
};

}  // namespace initrec
