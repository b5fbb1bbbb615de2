#include "initrec/van_cittert.hpp"

#include <cmath>
#include <limits>

#include "initrec/errors.hpp"
#include "initrec/kernels.hpp"

namespace initrec {

void VanCittertConfig::validate() const {
    if (!(gamma > 0.0)) throw ValidationError("VanCittertConfig: gamma must be > 0");
    if (!(epsilon_prime > 0.0))
        throw ValidationError("VanCittertConfig: epsilon_prime must be > 0");
    if (!(rho > 1.0)) throw ValidationError("VanCittertConfig: rho must be > 1");
    if (max_iters < 1) throw ValidationError("VanCittertConfig: max_iters must be >= 1");
}

ReconstructionResult van_cittert_reconstruct(const GridFunction& u_T_delta,
                                             const CoefficientSet& coeffs,
                                             const SpaceTimeGrid& grid,
                                             const VanCittertConfig& cfg,
                                             const NewtonConfig& newton_cfg,
                                             double noise_magnitude,
                                             const GridFunction* f_exact) {
    cfg.validate();
    newton_cfg.validate();
    coeffs.validate(grid);
    if (!(u_T_delta.grid() == grid))
        throw ValidationError("van_cittert_reconstruct: data lives on a different grid");
    if (f_exact && !(f_exact->grid() == grid))
        throw ValidationError("van_cittert_reconstruct: f_exact lives on a different grid");

    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    const double threshold = cfg.epsilon_prime + cfg.rho * noise_magnitude;
    const auto wnorm = [&](std::span<const double> v) {
        return std::sqrt(std::max(grid.dx * kernels::weighted_dot(v, v, coeffs.a), 0.0));
    };
    const double f_exact_norm = f_exact ? wnorm(f_exact->values()) : 0.0;

    // first iterate f_1 = gamma * u_T_delta
    std::vector<double> f(grid.nx);
    for (std::size_t j = 0; j < grid.nx; ++j) f[j] = cfg.gamma * u_T_delta[j];

    ReconstructionResult res{GridFunction(grid, f), 0, {}, StopReason::max_iters};
    std::vector<double> misfit(grid.nx), diff(grid.nx);
    for (int n = 1; n <= cfg.max_iters; ++n) {
        const GridFunction psi_f = vhj_input_output(GridFunction(grid, f), coeffs, grid, newton_cfg);
        kernels::scale_add(u_T_delta.values(), -1.0, psi_f.values(), misfit);
        const double r = wnorm(misfit);

        IterationRecord rec;
        rec.n = n;
        rec.J = kNaN;
        rec.grad_norm = kNaN;
        rec.alpha = kNaN;
        rec.gamma = cfg.gamma;
        rec.residual = r;
        rec.error_rel = kNaN;
        rec.error_abs = kNaN;
        if (f_exact) {
            kernels::serial::scale_add(f, -1.0, f_exact->values(), diff);
            rec.error_abs = wnorm(diff);
            rec.error_rel = (f_exact_norm > 0.0) ? rec.error_abs / f_exact_norm : kNaN;
        }
        res.history.push_back(rec);
        res.iterations = n;

        if (cfg.use_discrepancy && r <= threshold) {
            res.stop_reason = StopReason::discrepancy;
            break;
        }
        kernels::scale_add(f, cfg.gamma, misfit, f);
    }
    res.f_hat = GridFunction(grid, std::move(f));
    return res;
}

}  // namespace initrec
