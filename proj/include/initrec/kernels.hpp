#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Per-node hot loops, OpenMP-parallel above a size threshold. Every kernel
// has a serial twin in kernels::serial used as the reference in tests and
// in the benchmark. Elementwise kernels produce bit-identical results on
// both paths; reductions may differ in summation order when the parallel
// branch is taken.
namespace initrec::kernels {

/// Minimum element count for the parallel branch; below it the omp `if`
/// clause keeps execution on the calling thread. Override with
/// INITREC_PARALLEL_THRESHOLD.
std::size_t parallel_threshold();

/// sum_j u_j * v_j / a_j
double weighted_dot(std::span<const double> u, std::span<const double> v,
                    std::span<const double> a);

/// out_j = g_j*u_{j-1} + (1-2g_j)*u_j + g_j*u_{j+1} + src_j, phantom zeros
/// at the boundary; src may be empty.
void cn_rhs(std::span<const double> gamma, std::span<const double> u,
            std::span<const double> src, std::span<double> out);

/// out = M x for tridiagonal M (lower/upper have length n-1).
void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x,
                   std::span<double> out);

/// out_j = x_j + alpha * y_j; out may alias x or y.
void scale_add(std::span<const double> x, double alpha, std::span<const double> y,
               std::span<double> out);

/// Discrete VHJ residual at the candidate next state w:
///   (w-u)/dt - (a/2)(D2 w + D2 u) + (b/q)|Dc w|^q + d*Dc w + (c/2)(w+u) - src
/// with phantom zero boundary values; b, c, d, src may be empty (zero).
void vhj_residual(std::span<const double> w, std::span<const double> u_prev,
                  std::span<const double> a, std::span<const double> b,
                  std::span<const double> c, std::span<const double> d, double q,
                  double dx, double dt, std::span<const double> src,
                  std::span<double> out);

/// Analytic tridiagonal Jacobian of vhj_residual with respect to w.
void vhj_jacobian(std::span<const double> w, std::span<const double> a,
                  std::span<const double> b, std::span<const double> c,
                  std::span<const double> d, double q, double dx, double dt,
                  std::span<double> lower, std::span<double> diag,
                  std::span<double> upper);

/// out_j = u_j + p * beta_j * max_abs * xi_j with xi_j the j-th SplitMix64
/// counter draw of `seed`; deterministic and order-independent.
void apply_noise(std::span<const double> u, std::span<const double> beta, double p,
                 double max_abs, std::uint64_t seed, std::span<double> out);

/// max_j |x_j|
double max_abs(std::span<const double> x);

namespace serial {

double weighted_dot(std::span<const double> u, std::span<const double> v,
                    std::span<const double> a);
void cn_rhs(std::span<const double> gamma, std::span<const double> u,
            std::span<const double> src, std::span<double> out);
void tridiag_apply(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> x,
                   std::span<double> out);
void scale_add(std::span<const double> x, double alpha, std::span<const double> y,
               std::span<double> out);
void vhj_residual(std::span<const double> w, std::span<const double> u_prev,
                  std::span<const double> a, std::span<const double> b,
                  std::span<const double> c, std::span<const double> d, double q,
                  double dx, double dt, std::span<const double> src,
                  std::span<double> out);
void vhj_jacobian(std::span<const double> w, std::span<const double> a,
                  std::span<const double> b, std::span<const double> c,
                  std::span<const double> d, double q, double dx, double dt,
                  std::span<double> lower, std::span<double> diag,
                  std::span<double> upper);
void apply_noise(std::span<const double> u, std::span<const double> beta, double p,
                 double max_abs, std::uint64_t seed, std::span<double> out);
double max_abs(std::span<const double> x);

}  // namespace serial

}  // namespace initrec::kernels
