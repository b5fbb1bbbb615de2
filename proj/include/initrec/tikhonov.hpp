#pragma once

#include <optional>
#include <span>
#include <vector>

#include "initrec/grid.hpp"
#include "initrec/linear_forward.hpp"

namespace initrec {

enum class StopReason { discrepancy, tolerance, max_iters };
const char* to_string(StopReason r);

struct TikhonovConfig {
    double epsilon = 1e-6;        // regularization weight
    double epsilon_prime = 1e-7;  // noise-free tolerance in the discrepancy test
    double rho = 1.1;             // discrepancy factor
    int max_iters = 200;
    std::optional<double> admissible_radius;  // projection radius M; absent = unconstrained
    double grad_tol = 0.0;        // stop when |J'| <= grad_tol (0 keeps only the exact-zero stop)

    void validate() const;
};

/// One row per completed iterate update. Fields not produced by a method
/// are NaN (gamma is 0 when the direction is the plain gradient).
struct IterationRecord {
    int n = 0;
    double J = 0.0;
    double grad_norm = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    double residual = 0.0;
    double error_rel = 0.0;
    double error_abs = 0.0;
};

struct ReconstructionResult {
    GridFunction f_hat;
    int iterations = 0;
    std::vector<IterationRecord> history;  // length == iterations
    StopReason stop_reason = StopReason::max_iters;
};

/// J_eps(f) = 1/2 |Psi(f) - u_T_delta|^2_{1/a} + eps/2 |f|^2_{1/a}
double tikhonov_value(const GridFunction& f, const GridFunction& u_T_delta,
                      std::span<const double> a, const SpaceTimeGrid& grid,
                      const TikhonovConfig& cfg);

/// J'_eps(f) = psi(.,0) + eps f with psi the adjoint solution for the
/// terminal datum Psi(f) - u_T_delta.
GridFunction tikhonov_gradient(const GridFunction& f, const GridFunction& u_T_delta,
                               std::span<const double> a, const SpaceTimeGrid& grid,
                               const TikhonovConfig& cfg);

/// Radial projection onto {|f|_{1/a} <= M}.
GridFunction project_admissible(const GridFunction& f, std::span<const double> a, double M);

/// Fletcher-Reeves conjugate gradients on J_eps with the paper's step
/// size alpha_n = |J'|^2 / (|Psi p|^2 + eps |p|^2) and the discrepancy
/// stop J_eps(f_{n+1}) < eps' + rho E. `noise_magnitude` is
/// E = 1/2 |u_T - u_T_delta|^2_{1/a} (0 for noise-free data).
/// `f_exact`, when given, only feeds the error columns of the history.
ReconstructionResult cg_reconstruct(const GridFunction& u_T_delta, std::span<const double> a,
                                    const SpaceTimeGrid& grid, const TikhonovConfig& cfg,
                                    const GridFunction& f0, double noise_magnitude,
                                    const GridFunction* f_exact = nullptr);

/// Fixed-step gradient iteration f <- f - alpha J'_eps(f) with the same
/// discrepancy stop; alpha must lie in (0, 2).
ReconstructionResult landweber_reconstruct(const GridFunction& u_T_delta,
                                           std::span<const double> a, const SpaceTimeGrid& grid,
                                           const TikhonovConfig& cfg, double alpha,
                                           const GridFunction& f0, double noise_magnitude,
                                           const GridFunction* f_exact = nullptr);

}  // namespace initrec
