#include "initrec/kernels.hpp"

#include <cmath>
#include <cstdlib>

#include "initrec/rng.hpp"

namespace initrec::kernels {

namespace {

using idx = std::ptrdiff_t;

// phi(s) = |s|^q / q; dphi(0) = 0 also for q < 2 (minimal-norm subgradient).
inline double hamiltonian(double s, double q) {
    if (q == 2.0) return 0.5 * s * s;
    return std::pow(std::abs(s), q) / q;
}

inline double hamiltonian_slope(double s, double q) {
    if (q == 2.0) return s;
    if (s == 0.0) return 0.0;
    return std::pow(std::abs(s), q - 1.0) * (s > 0.0 ? 1.0 : -1.0);
}

inline double at(std::span<const double> v, idx j) {
    // phantom zero boundary values
    return (j < 0 || j >= static_cast<idx>(v.size())) ? 0.0 : v[static_cast<std::size_t>(j)];
}

inline double coeff(std::span<const double> v, idx j) {
    return v.empty() ? 0.0 : v[static_cast<std::size_t>(j)];
}

inline double residual_node(idx j, std::span<const double> w, std::span<const double> u,
                            std::span<const double> a, std::span<const double> b,
                            std::span<const double> c, std::span<const double> d,
                            double q, double dx, double dt, std::span<const double> src) {
    const double lap_w = (at(w, j + 1) - 2.0 * at(w, j) + at(w, j - 1)) / (dx * dx);
    const double lap_u = (at(u, j + 1) - 2.0 * at(u, j) + at(u, j - 1)) / (dx * dx);
    const double grad_w = (at(w, j + 1) - at(w, j - 1)) / (2.0 * dx);
    double r = (w[static_cast<std::size_t>(j)] - u[static_cast<std::size_t>(j)]) / dt
             - 0.5 * a[static_cast<std::size_t>(j)] * (lap_w + lap_u);
    if (!b.empty()) r += coeff(b, j) * hamiltonian(grad_w, q);
    if (!d.empty()) r += coeff(d, j) * grad_w;
    if (!c.empty()) r += 0.5 * coeff(c, j) * (at(w, j) + at(u, j));
    if (!src.empty()) r -= src[static_cast<std::size_t>(j)];
    return r;
}

inline void jacobian_node(idx j, std::span<const double> w, std::span<const double> a,
                          std::span<const double> b, std::span<const double> c,
                          std::span<const double> d, double q, double dx, double dt,
                          std::span<double> lower, std::span<double> diag,
                          std::span<double> upper) {
    const idx n = static_cast<idx>(w.size());
    const double grad_w = (at(w, j + 1) - at(w, j - 1)) / (2.0 * dx);
    double off = 0.0;  // Hamiltonian + drift contribution to the off-diagonals
    if (!b.empty()) off += coeff(b, j) * hamiltonian_slope(grad_w, q) / (2.0 * dx);
    if (!d.empty()) off += coeff(d, j) / (2.0 * dx);
    const double diffusion = a[static_cast<std::size_t>(j)] / (2.0 * dx * dx);
    diag[static_cast<std::size_t>(j)] = 1.0 / dt + 2.0 * diffusion
                                      + (c.empty() ? 0.0 : 0.5 * coeff(c, j));
    if (j > 0) lower[static_cast<std::size_t>(j - 1)] = -diffusion - off;
    if (j < n - 1) upper[static_cast<std::size_t>(j)] = -diffusion + off;
}

}  // namespace

std::size_t parallel_threshold() {
    static const std::size_t value = [] {
        if (const char* s = std::getenv("INITREC_PARALLEL_THRESHOLD"))
            return static_cast<std::size_t>(std::strtoull(s, nullptr, 10));
        return std::size_t{32768};
    }();
    return value;
}

double weighted_dot(std::span<const double> u, std::span<const double> v,
                    std::span<const double> a) {
    const idx n = static_cast<idx>(u.size());
    double s = 0.0;
#pragma omp parallel for reduction(+ : s) if (n >= static_cast<idx>(parallel_threshold()))
    for (idx j = 0; j < n; ++j) s += u[j] * v[j] / a[j];
    return s;
}

void cn_rhs(std::span<const double> gamma, std::span<const double> u,
            std::span<const double> src, std::span<double> out) {
    const idx n = static_cast<idx>(u.size());
#pragma omp parallel for if (n >= static_cast<idx>(parallel_threshold()))
    for (idx j = 0; j < n; ++j) {
        out[j] = gamma[j] * at(u, j - 1) + (1.0 - 2.0 * gamma[j]) * u[j] + gamma[j] * at(u, j + 1);
        if (!src.empty()) out[j] += src[j];
    }
}

void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x,
                   std::span<double> out) {
    const idx n = static_cast<idx>(x.size());
#pragma omp parallel for if (n >= static_cast<idx>(parallel_threshold()))
    for (idx j = 0; j < n; ++j) {
        double s = diag[j] * x[j];
        if (j > 0) s += lower[j - 1] * x[j - 1];
        if (j < n - 1) s += upper[j] * x[j + 1];
        out[j] = s;
    }
}

void scale_add(std::span<const double> x, double alpha, std::span<const double> y,
               std::span<double> out) {
    const idx n = static_cast<idx>(x.size());
#pragma omp parallel for if (n >= static_cast<idx>(parallel_threshold()))
    for (idx j = 0; j < n; ++j) out[j] = x[j] + alpha * y[j];
}

void vhj_residual(std::span<const double> w, std::span<const double> u_prev,
                  std::span<const double> a, std::span<const double> b,
                  std::span<const double> c, std::span<const double> d, double q,
                  double dx, double dt, std::span<const double> src,
                  std::span<double> out) {
    const idx n = static_cast<idx>(w.size());
#pragma omp parallel for if (n >= static_cast<idx>(parallel_threshold()))
    for (idx j = 0; j < n; ++j) out[j] = residual_node(j, w, u_prev, a, b, c, d, q, dx, dt, src);
}

void vhj_jacobian(std::span<const double> w, std::span<const double> a,
                  std::span<const double> b, std::span<const double> c,
                  std::span<const double> d, double q, double dx, double dt,
                  std::span<double> lower, std::span<double> diag,
                  std::span<double> upper) {
    const idx n = static_cast<idx>(w.size());
#pragma omp parallel for if (n >= static_cast<idx>(parallel_threshold()))
    for (idx j = 0; j < n; ++j) jacobian_node(j, w, a, b, c, d, q, dx, dt, lower, diag, upper);
}

void apply_noise(std::span<const double> u, std::span<const double> beta, double p,
                 double max_abs, std::uint64_t seed, std::span<double> out) {
    const idx n = static_cast<idx>(u.size());
#pragma omp parallel for if (n >= static_cast<idx>(parallel_threshold()))
    for (idx j = 0; j < n; ++j)
        out[j] = u[j] + p * beta[j] * max_abs * rng::draw_at(seed, static_cast<std::uint64_t>(j));
}

double max_abs(std::span<const double> x) {
    const idx n = static_cast<idx>(x.size());
    double m = 0.0;
#pragma omp parallel for reduction(max : m) if (n >= static_cast<idx>(parallel_threshold()))
    for (idx j = 0; j < n; ++j) m = std::max(m, std::abs(x[j]));
    return m;
}

namespace serial {

double weighted_dot(std::span<const double> u, std::span<const double> v,
                    std::span<const double> a) {
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * v[j] / a[j];
    return s;
}

void cn_rhs(std::span<const double> gamma, std::span<const double> u,
            std::span<const double> src, std::span<double> out) {
    const idx n = static_cast<idx>(u.size());
    for (idx j = 0; j < n; ++j) {
        out[j] = gamma[j] * at(u, j - 1) + (1.0 - 2.0 * gamma[j]) * u[j] + gamma[j] * at(u, j + 1);
        if (!src.empty()) out[j] += src[j];
    }
}

void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x,
                   std::span<double> out) {
    const idx n = static_cast<idx>(x.size());
    for (idx j = 0; j < n; ++j) {
        double s = diag[j] * x[j];
        if (j > 0) s += lower[j - 1] * x[j - 1];
        if (j < n - 1) s += upper[j] * x[j + 1];
        out[j] = s;
    }
}

void scale_add(std::span<const double> x, double alpha, std::span<const double> y,
               std::span<double> out) {
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + alpha * y[j];
}

void vhj_residual(std::span<const double> w, std::span<const double> u_prev,
                  std::span<const double> a, std::span<const double> b,
                  std::span<const double> c, std::span<const double> d, double q,
                  double dx, double dt, std::span<const double> src,
                  std::span<double> out) {
    const idx n = static_cast<idx>(w.size());
    for (idx j = 0; j < n; ++j) out[j] = residual_node(j, w, u_prev, a, b, c, d, q, dx, dt, src);
}

void vhj_jacobian(std::span<const double> w, std::span<const double> a,
                  std::span<const double> b, std::span<const double> c,
                  std::span<const double> d, double q, double dx, double dt,
                  std::span<double> lower, std::span<double> diag,
                  std::span<double> upper) {
    const idx n = static_cast<idx>(w.size());
    for (idx j = 0; j < n; ++j) jacobian_node(j, w, a, b, c, d, q, dx, dt, lower, diag, upper);
}

void apply_noise(std::span<const double> u, std::span<const double> beta, double p,
                 double max_abs, std::uint64_t seed, std::span<double> out) {
    for (std::size_t j = 0; j < u.size(); ++j)
        out[j] = u[j] + p * beta[j] * max_abs * rng::draw_at(seed, j);
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace serial

}  // namespace initrec::kernels
