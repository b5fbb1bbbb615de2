#include "initrec/tikhonov.hpp"

#include <cmath>
#include <limits>

#include "initrec/errors.hpp"
#include "initrec/kernels.hpp"
#include "initrec/norms.hpp"

namespace initrec {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::discrepancy: return "discrepancy";
        case StopReason::tolerance: return "tolerance";
        case StopReason::max_iters: return "max_iters";
    }
    return "unknown";
}

void TikhonovConfig::validate() const {
    if (!(epsilon >= 0.0)) throw ValidationError("TikhonovConfig: epsilon must be >= 0");
    if (!(epsilon_prime > 0.0)) throw ValidationError("TikhonovConfig: epsilon_prime must be > 0");
    if (!(rho > 1.0)) throw ValidationError("TikhonovConfig: rho must be > 1");
    if (max_iters < 1) throw ValidationError("TikhonovConfig: max_iters must be >= 1");
    if (admissible_radius && !(*admissible_radius > 0.0))
        throw ValidationError("TikhonovConfig: admissible_radius must be > 0");
    if (!(grad_tol >= 0.0)) throw ValidationError("TikhonovConfig: grad_tol must be >= 0");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Shared machinery for both iterations: one stepper instance drives the
// forward map Psi and the adjoint map (same step kernel applied m times),
// so the discrete gradient is exact for the discrete functional.
class TikhonovProblem {
public:
    TikhonovProblem(const GridFunction& u_T_delta, std::span<const double> a,
                    const SpaceTimeGrid& grid, const TikhonovConfig& cfg,
                    const GridFunction* f_exact)
        : stepper_(a, grid),
          grid_(grid),
          a_(a),
          cfg_(cfg),
          data_(u_T_delta.values().begin(), u_T_delta.values().end()),
          f_exact_(f_exact),
          buf_(grid.nx) {
        if (!(u_T_delta.grid() == grid))
            throw ValidationError("reconstruction: data lives on a different grid");
        if (f_exact_ && !(f_exact_->grid() == grid))
            throw ValidationError("reconstruction: f_exact lives on a different grid");
        if (f_exact_) f_exact_norm_ = std::sqrt(dot(f_exact_->values(), f_exact_->values()));
    }

    double dot(std::span<const double> u, std::span<const double> v) const {
        return grid_.dx * kernels::weighted_dot(u, v, a_);
    }
    double norm(std::span<const double> u) const { return std::sqrt(std::max(dot(u, u), 0.0)); }

    // v <- S^m v (both Psi and the adjoint initial value are m-fold steps)
    void propagate(std::vector<double>& v) {
        for (std::size_t n = 0; n <= grid_.nt; ++n) {
            stepper_.step(v, {}, buf_);
            v.swap(buf_);
        }
    }

    std::vector<double> forward(std::span<const double> f) {
        std::vector<double> u(f.begin(), f.end());
        propagate(u);
        return u;
    }

    // J'_eps(f) given the precomputed forward state u_f = Psi(f)
    std::vector<double> gradient(std::span<const double> f, std::span<const double> u_f) {
        std::vector<double> g(grid_.nx);
        kernels::scale_add(u_f, -1.0, data_, g);  // terminal misfit Psi(f) - u_delta
        propagate(g);
        if (cfg_.epsilon != 0.0) kernels::scale_add(g, cfg_.epsilon, f, g);
        return g;
    }

    double value(std::span<const double> f, std::span<const double> u_f) const {
        std::vector<double> r(grid_.nx);
        kernels::serial::scale_add(u_f, -1.0, data_, r);
        return 0.5 * dot(r, r) + 0.5 * cfg_.epsilon * dot(f, f);
    }

    void maybe_project(std::vector<double>& f) const {
        if (!cfg_.admissible_radius) return;
        const double nf = norm(f);
        if (nf > *cfg_.admissible_radius) {
            const double s = *cfg_.admissible_radius / nf;
            for (double& v : f) v *= s;
        }
    }

    void record_error(IterationRecord& rec, std::span<const double> f) const {
        rec.error_rel = kNaN;
        rec.error_abs = kNaN;
        if (!f_exact_) return;
        std::vector<double> d(grid_.nx);
        kernels::serial::scale_add(f, -1.0, f_exact_->values(), d);
        rec.error_abs = norm(d);
        rec.error_rel = (f_exact_norm_ > 0.0) ? rec.error_abs / f_exact_norm_ : kNaN;
    }

    std::span<const double> data() const { return data_; }
    const SpaceTimeGrid& grid() const { return grid_; }

private:
    CrankNicolsonStepper stepper_;
    SpaceTimeGrid grid_;
    std::span<const double> a_;
    TikhonovConfig cfg_;
    std::vector<double> data_;
    const GridFunction* f_exact_;
    double f_exact_norm_ = 0.0;
    std::vector<double> buf_;
};

}  // namespace

double tikhonov_value(const GridFunction& f, const GridFunction& u_T_delta,
                      std::span<const double> a, const SpaceTimeGrid& grid,
                      const TikhonovConfig& cfg) {
    cfg.validate();
    TikhonovProblem prob(u_T_delta, a, grid, cfg, nullptr);
    const auto u_f = prob.forward(f.values());
    return prob.value(f.values(), u_f);
}

GridFunction tikhonov_gradient(const GridFunction& f, const GridFunction& u_T_delta,
                               std::span<const double> a, const SpaceTimeGrid& grid,
                               const TikhonovConfig& cfg) {
    cfg.validate();
    TikhonovProblem prob(u_T_delta, a, grid, cfg, nullptr);
    const auto u_f = prob.forward(f.values());
    return {grid, prob.gradient(f.values(), u_f)};
}

GridFunction project_admissible(const GridFunction& f, std::span<const double> a, double M) {
    if (!(M > 0.0)) throw ValidationError("project_admissible: radius must be positive");
    const double nf = weighted_l2_norm(f, a);
    if (nf <= M) return f;
    std::vector<double> v(f.values().begin(), f.values().end());
    const double s = M / nf;
    for (double& x : v) x *= s;
    return {f.grid(), std::move(v)};
}

ReconstructionResult cg_reconstruct(const GridFunction& u_T_delta, std::span<const double> a,
                                    const SpaceTimeGrid& grid, const TikhonovConfig& cfg,
                                    const GridFunction& f0, double noise_magnitude,
                                    const GridFunction* f_exact) {
    cfg.validate();
    if (!(f0.grid() == grid)) throw ValidationError("cg_reconstruct: f0 lives on a different grid");
    TikhonovProblem prob(u_T_delta, a, grid, cfg, f_exact);
    const double threshold = cfg.epsilon_prime + cfg.rho * noise_magnitude;

    std::vector<double> f(f0.values().begin(), f0.values().end());
    prob.maybe_project(f);
    auto u_f = prob.forward(f);
    auto g = prob.gradient(f, u_f);
    double gn2 = prob.dot(g, g);
    std::vector<double> p = g;
    double gamma_used = 0.0;

    ReconstructionResult res{GridFunction(grid, f), 0, {}, StopReason::max_iters};
    for (int n = 1; n <= cfg.max_iters; ++n) {
        if (gn2 == 0.0 || std::sqrt(gn2) <= cfg.grad_tol) {
            res.stop_reason = StopReason::tolerance;
            break;
        }
        const auto u_p = prob.forward(p);
        const double denom = prob.dot(u_p, u_p) + cfg.epsilon * prob.dot(p, p);
        if (denom == 0.0) {
            res.stop_reason = StopReason::tolerance;
            break;
        }
        const double alpha = gn2 / denom;
        kernels::scale_add(f, -alpha, p, f);
        prob.maybe_project(f);
        u_f = prob.forward(f);

        IterationRecord rec;
        rec.n = n;
        rec.J = prob.value(f, u_f);
        rec.grad_norm = std::sqrt(gn2);
        rec.alpha = alpha;
        rec.gamma = gamma_used;
        rec.residual = kNaN;
        prob.record_error(rec, f);
        res.history.push_back(rec);
        res.iterations = n;

        if (rec.J < threshold) {
            res.stop_reason = StopReason::discrepancy;
            break;
        }
        auto g_new = prob.gradient(f, u_f);
        const double gn2_new = prob.dot(g_new, g_new);
        const double gamma = gn2_new / gn2;
        if (std::isfinite(gamma)) {
            kernels::scale_add(g_new, gamma, p, p);
            gamma_used = gamma;
        } else {
            // previous gradient norm underflowed; restart with the plain gradient
            p = g_new;
            gamma_used = 0.0;
        }
        g = std::move(g_new);
        gn2 = gn2_new;
    }
    res.f_hat = GridFunction(grid, std::move(f));
    return res;
}

ReconstructionResult landweber_reconstruct(const GridFunction& u_T_delta,
                                           std::span<const double> a, const SpaceTimeGrid& grid,
                                           const TikhonovConfig& cfg, double alpha,
                                           const GridFunction& f0, double noise_magnitude,
                                           const GridFunction* f_exact) {
    cfg.validate();
    if (!(alpha > 0.0 && alpha < 2.0))
        throw ValidationError("landweber_reconstruct: alpha must lie in (0, 2)");
    if (!(f0.grid() == grid))
        throw ValidationError("landweber_reconstruct: f0 lives on a different grid");
    TikhonovProblem prob(u_T_delta, a, grid, cfg, f_exact);
    const double threshold = cfg.epsilon_prime + cfg.rho * noise_magnitude;

    std::vector<double> f(f0.values().begin(), f0.values().end());
    prob.maybe_project(f);
    ReconstructionResult res{GridFunction(grid, f), 0, {}, StopReason::max_iters};
    auto u_f = prob.forward(f);
    for (int n = 1; n <= cfg.max_iters; ++n) {
        const auto g = prob.gradient(f, u_f);
        const double gn = std::sqrt(prob.dot(g, g));
        if (gn == 0.0 || gn <= cfg.grad_tol) {
            res.stop_reason = StopReason::tolerance;
            break;
        }
        kernels::scale_add(f, -alpha, g, f);
        prob.maybe_project(f);
        u_f = prob.forward(f);

        IterationRecord rec;
        rec.n = n;
        rec.J = prob.value(f, u_f);
        rec.grad_norm = gn;
        rec.alpha = alpha;
        rec.gamma = kNaN;
        rec.residual = kNaN;
        prob.record_error(rec, f);
        res.history.push_back(rec);
        res.iterations = n;
        if (rec.J < threshold) {
            res.stop_reason = StopReason::discrepancy;
            break;
        }
    }
    res.f_hat = GridFunction(grid, std::move(f));
    return res;
}

}  // namespace initrec
