#include "initrec/selftest.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "initrec/coefficients.hpp"
#include "initrec/kernels.hpp"
#include "initrec/linear_forward.hpp"
#include "initrec/noise.hpp"
#include "initrec/norms.hpp"
#include "initrec/rng.hpp"
#include "initrec/tikhonov.hpp"
#include "initrec/van_cittert.hpp"
#include "initrec/vhj.hpp"

namespace initrec {

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double scale = 1.0) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = scale * (2.0 * rng::draw_at(seed, j) - 1.0);
    return v;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// Dense Gaussian elimination with partial pivoting; the independent route
// for the small-instance oracles.
std::vector<double> dense_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
        std::swap(A[k], A[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = A[i][k] / A[k][k];
            for (std::size_t j = k; j < n; ++j) A[i][j] -= m * A[k][j];
            b[i] -= m * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

std::vector<std::vector<double>> dense_cn_step_map(std::span<const double> a,
                                                   const SpaceTimeGrid& grid) {
    const std::size_t n = grid.nx;
    const double scale = grid.dt / (2.0 * grid.dx * grid.dx);
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0)), S(n);
    std::vector<std::vector<double>> B(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        const double g = a[j] * scale;
        A[j][j] = 1.0 + 2.0 * g;
        B[j][j] = 1.0 - 2.0 * g;
        if (j > 0) {
            A[j][j - 1] = -g;
            B[j][j - 1] = g;
        }
        if (j + 1 < n) {
            A[j][j + 1] = -g;
            B[j][j + 1] = g;
        }
    }
    // S = A^{-1} B, column by column
    std::vector<std::vector<double>> St(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = B[r][c];
        St[c] = dense_solve(A, col);
    }
    for (std::size_t r = 0; r < n; ++r) {
        S[r].resize(n);
        for (std::size_t c = 0; c < n; ++c) S[r][c] = St[c][r];
    }
    return S;
}

std::vector<double> dense_apply(const std::vector<std::vector<double>>& M,
                                std::span<const double> x) {
    std::vector<double> y(M.size(), 0.0);
    for (std::size_t r = 0; r < M.size(); ++r)
        for (std::size_t c = 0; c < M[r].size(); ++c) y[r] += M[r][c] * x[c];
    return y;
}

struct LinearSetup {
    SpaceTimeGrid grid;
    std::vector<double> a;
};

LinearSetup example1_setup(std::size_t nx = 100, std::size_t nt = 100) {
    LinearSetup s{build_grid(nx, nt, 0.03), {}};
    s.a = sample_coefficient("sin_pi", s.grid);
    return s;
}

CheckResult adjoint_identity_check() {
    CheckResult res{"adjoint-identity", true, ""};
    const auto [grid, a] = example1_setup(20, 20);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const GridFunction df(grid, random_vector(grid.nx, rng::derive_seed(101, trial)));
        const GridFunction g(grid, random_vector(grid.nx, rng::derive_seed(202, trial)));
        const GridFunction psi_df = input_output(df, a, grid);
        const GridFunction psi0 = solve_adjoint(g, a, grid).initial_state();
        const double lhs = weighted_l2_inner(psi_df, g, a);
        const double rhs = weighted_l2_inner(df, psi0, a);
        const double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
        worst = std::max(worst, rel);
    }
    res.pass = worst <= 1e-10;
    res.detail = "worst relative mismatch " + fmt(worst) + " (tol 1e-10, 50 pairs, nx=20)";
    return res;
}

CheckResult gradient_fd_check() {
    CheckResult res{"gradient-finite-difference", true, ""};
    const auto [grid, a] = example1_setup(20, 20);
    TikhonovConfig cfg;
    cfg.epsilon = 1e-6;
    const GridFunction f(grid, random_vector(grid.nx, 7001));
    const GridFunction delta(grid, random_vector(grid.nx, 7002));
    const GridFunction u_delta(grid, random_vector(grid.nx, 7003, 0.5));
    const GridFunction grad = tikhonov_gradient(f, u_delta, a, grid, cfg);
    const double directional = weighted_l2_inner(grad, delta, a);

    const auto fd_error = [&](double h) {
        std::vector<double> plus(grid.nx), minus(grid.nx);
        kernels::serial::scale_add(f.values(), h, delta.values(), plus);
        kernels::serial::scale_add(f.values(), -h, delta.values(), minus);
        const double jp = tikhonov_value(GridFunction(grid, plus), u_delta, a, grid, cfg);
        const double jm = tikhonov_value(GridFunction(grid, minus), u_delta, a, grid, cfg);
        const double fd = (jp - jm) / (2.0 * h);
        return std::abs(fd - directional) / std::max(std::abs(directional), 1e-300);
    };
    const double e3 = fd_error(1e-3);
    const double e4 = fd_error(1e-4);
    // The discrete functional is exactly quadratic, so both errors sit at
    // the rounding floor; the ratio clause applies only above it.
    const bool floor = std::max(e3, e4) <= 1e-9;
    res.pass = (e4 <= 1e-5) && (floor || e3 / std::max(e4, 1e-300) >= 50.0);
    res.detail = "rel err " + fmt(e3) + " at h=1e-3, " + fmt(e4) + " at h=1e-4" +
                 (floor ? " (rounding floor)" : "");
    return res;
}

CheckResult energy_decay_check() {
    CheckResult res{"energy-decay", true, ""};
    const auto [grid, a] = example1_setup();
    const GridFunction f(grid, sample_coefficient("power(0.5,0.5)", grid));
    const Trajectory traj = solve_forward(f, a, grid);
    double prev = weighted_l2_norm(traj.state_function(0), a);
    double worst = 0.0;
    for (std::size_t n = 1; n < traj.states.size(); ++n) {
        const double cur = weighted_l2_norm(traj.state_function(n), a);
        worst = std::max(worst, cur - prev);
        prev = cur;
    }
    res.pass = worst <= 1e-13;
    res.detail = "worst per-step norm increase " + fmt(worst);
    return res;
}

CheckResult log_convexity_check() {
    CheckResult res{"log-convexity", true, ""};
    const auto [grid, a] = example1_setup();
    const GridFunction f(grid, sample_coefficient("power(0.5,0.5)", grid));
    const Trajectory traj = solve_forward(f, a, grid);
    const std::size_t last = traj.states.size() - 1;
    const double n0 = weighted_l2_norm(traj.state_function(0), a);
    const double nT = weighted_l2_norm(traj.state_function(last), a);
    double worst = 0.0;
    for (std::size_t n = 0; n <= last; ++n) {
        const double theta = static_cast<double>(n) / static_cast<double>(last);
        const double bound = std::pow(n0, 1.0 - theta) * std::pow(nT, theta);
        worst = std::max(worst, weighted_l2_norm(traj.state_function(n), a) / bound);
    }
    res.pass = worst <= 1.01;
    res.detail = "worst interpolation ratio " + fmt(worst) + " (tol 1.01)";
    return res;
}

CheckResult lipschitz_check() {
    CheckResult res{"gradient-lipschitz", true, ""};
    const auto [grid, a] = example1_setup(20, 20);
    TikhonovConfig cfg;
    cfg.epsilon = 0.0;
    const GridFunction u_delta = GridFunction::zeros(grid);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const GridFunction f(grid, random_vector(grid.nx, rng::derive_seed(404, trial)));
        const GridFunction df(grid, random_vector(grid.nx, rng::derive_seed(505, trial)));
        std::vector<double> fpd(grid.nx);
        kernels::serial::scale_add(f.values(), 1.0, df.values(), fpd);
        const GridFunction g1 = tikhonov_gradient(GridFunction(grid, fpd), u_delta, a, grid, cfg);
        const GridFunction g0 = tikhonov_gradient(f, u_delta, a, grid, cfg);
        std::vector<double> gd(grid.nx);
        kernels::serial::scale_add(g1.values(), -1.0, g0.values(), gd);
        const double num = weighted_l2_norm(GridFunction(grid, gd), a);
        const double den = weighted_l2_norm(df, a);
        worst = std::max(worst, num / den);
    }
    res.pass = worst <= 1.0 + 1e-10;
    res.detail = "worst |J'(f+df)-J'(f)| / |df| = " + fmt(worst) + " (tol 1+1e-10)";
    return res;
}

CheckResult small_instance_oracle_check() {
    CheckResult res{"small-instance-oracle", true, ""};
    const SpaceTimeGrid grid = build_grid(5, 4, 0.4);
    const auto a = sample_coefficient("sin_pi", grid);
    const auto S = dense_cn_step_map(a, grid);
    const std::size_t m = grid.nt + 1;

    // data from a random source plus perturbation
    std::vector<double> u_delta = random_vector(grid.nx, 9001);
    {
        std::vector<double> src = random_vector(grid.nx, 9002);
        for (std::size_t k = 0; k < m; ++k) src = dense_apply(S, src);
        for (std::size_t j = 0; j < grid.nx; ++j) u_delta[j] = src[j] + 0.01 * u_delta[j];
    }
    const double eps = 0.01;

    // dense normal equations (K^T W K + eps W) f = K^T W u_delta
    std::vector<std::vector<double>> K(grid.nx, std::vector<double>(grid.nx, 0.0));
    for (std::size_t c = 0; c < grid.nx; ++c) {
        std::vector<double> e(grid.nx, 0.0);
        e[c] = 1.0;
        for (std::size_t k = 0; k < m; ++k) e = dense_apply(S, e);
        for (std::size_t r = 0; r < grid.nx; ++r) K[r][c] = e[r];
    }
    const auto w = [&](std::size_t j) { return grid.dx / a[j]; };
    std::vector<std::vector<double>> H(grid.nx, std::vector<double>(grid.nx, 0.0));
    std::vector<double> rhs(grid.nx, 0.0);
    for (std::size_t i = 0; i < grid.nx; ++i)
        for (std::size_t j = 0; j < grid.nx; ++j) {
            for (std::size_t k = 0; k < grid.nx; ++k) H[i][j] += K[k][i] * w(k) * K[k][j];
            if (i == j) H[i][j] += eps * w(i);
        }
    for (std::size_t i = 0; i < grid.nx; ++i)
        for (std::size_t k = 0; k < grid.nx; ++k) rhs[i] += K[k][i] * w(k) * u_delta[k];
    const std::vector<double> f_dense = dense_solve(H, rhs);

    TikhonovConfig cfg;
    cfg.epsilon = eps;
    cfg.epsilon_prime = 1e-300;  // discrepancy effectively disabled
    cfg.rho = 1.1;
    cfg.max_iters = 400;
    cfg.grad_tol = 1e-13;
    const GridFunction data(grid, u_delta);
    const GridFunction f0 = GridFunction::zeros(grid);
    const auto cg = cg_reconstruct(data, a, grid, cfg, f0, 0.0);
    TikhonovConfig lw_cfg = cfg;
    lw_cfg.max_iters = 10000;
    lw_cfg.grad_tol = 0.0;
    const auto lw = landweber_reconstruct(data, a, grid, lw_cfg, 1.0, f0, 0.0);

    const auto wdist = [&](const GridFunction& f, const std::vector<double>& ref) {
        std::vector<double> d(grid.nx);
        kernels::serial::scale_add(f.values(), -1.0, ref, d);
        return weighted_l2_norm(GridFunction(grid, d), a);
    };
    const double cg_err = wdist(cg.f_hat, f_dense);
    const double lw_err = wdist(lw.f_hat, f_dense);

    // Van Cittert, linear case, against the dense affine recursion
    CoefficientSet lin = CoefficientSet::linear(a);
    VanCittertConfig vcfg{0.8, 1e-300, 1.01, 30, false};
    NewtonConfig ncfg;
    const auto vc = van_cittert_reconstruct(data, lin, grid, vcfg, ncfg, 0.0);
    std::vector<double> f_affine(grid.nx);
    for (std::size_t j = 0; j < grid.nx; ++j) f_affine[j] = vcfg.gamma * u_delta[j];
    for (int n = 1; n <= vcfg.max_iters; ++n) {
        const auto Kf = dense_apply(K, f_affine);
        for (std::size_t j = 0; j < grid.nx; ++j)
            f_affine[j] += vcfg.gamma * (u_delta[j] - Kf[j]);
    }
    const double vc_err = wdist(vc.f_hat, f_affine);

    res.pass = cg_err <= 1e-6 && lw_err <= 1e-6 && vc_err <= 1e-10;
    res.detail = "cg " + fmt(cg_err) + " (tol 1e-6), landweber " + fmt(lw_err) +
                 " (tol 1e-6), van-cittert " + fmt(vc_err) + " (tol 1e-10)";
    return res;
}

CheckResult nonlinear_consistency_check() {
    CheckResult res{"nonlinear-consistency", true, ""};
    std::ostringstream detail;

    // b = 0: solve_vhj equals solve_forward
    const auto [grid, a] = example1_setup(40, 30);
    const GridFunction f(grid, sample_coefficient("power(0.5,0.5)", grid));
    const Trajectory lin = solve_forward(f, a, grid);
    CoefficientSet coeffs = CoefficientSet::linear(a);
    NewtonConfig ncfg;
    const Trajectory nl = solve_vhj(f, coeffs, grid, ncfg).first;
    double linmax = 0.0;
    for (std::size_t n = 0; n < lin.states.size(); ++n)
        for (std::size_t j = 0; j < grid.nx; ++j)
            linmax = std::max(linmax, std::abs(lin.states[n][j] - nl.states[n][j]));
    detail << "b=0 deviation " << fmt(linmax) << " (tol 1e-10)";
    bool ok = linmax <= 1e-10;

    // analytic vs finite-difference Jacobian
    double jac_worst = 0.0;
    for (const double q : {1.0, 1.5, 2.0, 3.0}) {
        CoefficientSet cs;
        cs.a = a;
        cs.b = sample_coefficient("constant(0.7)", grid);
        cs.c = sample_coefficient("constant(0.3)", grid);
        cs.d = sample_coefficient("constant(0.2)", grid);
        cs.q = q;
        const std::vector<double> w = random_vector(grid.nx, 6100 + static_cast<int>(10 * q));
        const std::vector<double> u = random_vector(grid.nx, 6200 + static_cast<int>(10 * q));
        const TridiagonalMatrix J = vhj_step_jacobian(w, cs, grid);
        const double h = 1e-6;
        for (std::size_t k = 0; k < grid.nx; ++k) {
            std::vector<double> wp = w, wm = w;
            wp[k] += h;
            wm[k] -= h;
            const auto Fp = vhj_step_residual(wp, u, cs, grid);
            const auto Fm = vhj_step_residual(wm, u, cs, grid);
            for (std::size_t r = 0; r < grid.nx; ++r) {
                const double fd = (Fp[r] - Fm[r]) / (2.0 * h);
                double an = 0.0;
                if (r == k) an = J.diag[r];
                else if (r == k + 1) an = J.lower[k];
                else if (k == r + 1) an = J.upper[r];
                jac_worst = std::max(jac_worst,
                                     std::abs(fd - an) / std::max(1.0, std::abs(an)));
            }
        }
    }
    detail << ", jacobian fd mismatch " << fmt(jac_worst) << " (tol 1e-6)";
    ok = ok && jac_worst <= 1e-6;

    // manufactured solution, dt ~ dx^2 (the implicit Hamiltonian is O(dt))
    const auto u_star = [](double x, double t) {
        return std::exp(-t) * x * x * (1.0 - x) * (1.0 - x);
    };
    const auto u_star_x = [](double x, double t) {
        return std::exp(-t) * 2.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
    };
    const auto u_star_xx = [](double x, double t) {
        return std::exp(-t) * 2.0 * (1.0 - 6.0 * x + 6.0 * x * x);
    };
    const double Tm = 0.1;
    std::vector<double> errs;
    for (const auto [nxm, ntm] : {std::pair<std::size_t, std::size_t>{19, 15},
                                  {39, 63},
                                  {79, 255}}) {
        const SpaceTimeGrid g = build_grid(nxm, ntm, Tm);
        CoefficientSet cs;
        cs.a = sample_coefficient("power(1,1)", g);
        cs.b = sample_coefficient("constant(1)", g);
        cs.q = 2.0;
        cs.source = [&](double x, double t) {
            const double ax = x * (1.0 - x);
            return -u_star(x, t) - ax * u_star_xx(x, t) + 0.5 * u_star_x(x, t) * u_star_x(x, t);
        };
        const GridFunction f0 = GridFunction::sample(g, [&](double x) { return u_star(x, 0.0); });
        NewtonConfig nn;
        nn.tol = 1e-12;
        const Trajectory traj = solve_vhj(f0, cs, g, nn).first;
        double err = 0.0;
        for (std::size_t j = 0; j < g.nx; ++j)
            err = std::max(err, std::abs(traj.states.back()[j] - u_star(g.x(j + 1), Tm)));
        errs.push_back(err);
    }
    const double r1 = errs[0] / errs[1];
    const double r2 = errs[1] / errs[2];
    detail << ", mms ratios " << fmt(r1) << ", " << fmt(r2) << " (tol >= 3)";
    ok = ok && r1 >= 3.0 && r2 >= 3.0;

    res.pass = ok;
    res.detail = detail.str();
    return res;
}

CheckResult noise_determinism_check() {
    CheckResult res{"noise-determinism", true, ""};
    const auto [grid, a] = example1_setup();
    const GridFunction u(grid, sample_coefficient("powersin(1,1)", grid));
    const GridFunction beta(grid, sample_coefficient("power(0.5,0.5)", grid));
    const double p = 0.03;
    const NoisySnapshot s1 = make_noisy(u, p, beta, 42, a);
    const NoisySnapshot s2 = make_noisy(u, p, beta, 42, a);
    bool identical = true;
    for (std::size_t j = 0; j < grid.nx; ++j)
        identical = identical && (s1.u_delta[j] == s2.u_delta[j]);
    const double maxu = u.max_abs();
    double bound_excess = 0.0;
    for (std::size_t j = 0; j < grid.nx; ++j) {
        const double dev = std::abs(s1.u_delta[j] - u[j]);
        bound_excess = std::max(bound_excess, dev - p * maxu * std::abs(beta[j]));
    }
    res.pass = identical && bound_excess <= 0.0;
    res.detail = std::string(identical ? "bit-identical across runs" : "NOT deterministic") +
                 ", node-wise bound excess " + fmt(bound_excess);
    return res;
}

}  // namespace

std::vector<CheckResult> run_property_suite() {
    return {
        adjoint_identity_check(),   gradient_fd_check(),   energy_decay_check(),
        log_convexity_check(),      lipschitz_check(),     small_instance_oracle_check(),
        nonlinear_consistency_check(), noise_determinism_check(),
    };
}

}  // namespace initrec
