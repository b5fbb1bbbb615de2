#pragma once

#include <span>

#include "initrec/tikhonov.hpp"
#include "initrec/vhj.hpp"

namespace initrec {

struct VanCittertConfig {
    double gamma = 0.5;           // relaxation parameter
    double epsilon_prime = 1e-5;  // noise-free tolerance
    double rho = 1.01;            // discrepancy factor
    int max_iters = 400;
    bool use_discrepancy = true;  // false reproduces the "without regularization" runs

    void validate() const;
};

/// Van Cittert fixed-point iteration for the VHJ backward problem:
/// f_1 = gamma u_T_delta, f_{n+1} = f_n + gamma (u_T_delta - Psi(f_n)),
/// stopping at the first n with r_n = |u_T_delta - Psi(f_n)|_{1/a}
/// <= eps' + rho E. `noise_magnitude` is E = |u_T - u_T_delta|_{1/a}
/// (a norm, not the squared CG quantity). Newton failures inside Psi
/// propagate as SolverError with the offending time level.
ReconstructionResult van_cittert_reconstruct(const GridFunction& u_T_delta,
                                             const CoefficientSet& coeffs,
                                             const SpaceTimeGrid& grid,
                                             const VanCittertConfig& cfg,
                                             const NewtonConfig& newton_cfg,
                                             double noise_magnitude,
                                             const GridFunction* f_exact = nullptr);

}  // namespace initrec
