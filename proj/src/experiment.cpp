#include "initrec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "initrec/coefficients.hpp"
#include "initrec/errors.hpp"
#include "initrec/norms.hpp"
#include "initrec/svg.hpp"
#include "initrec/van_cittert.hpp"
#include "initrec/vhj.hpp"

namespace initrec {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

const char* to_string(Problem p) { return p == Problem::linear ? "linear" : "vhj"; }

Problem problem_from_string(const std::string& s) {
    if (s == "linear") return Problem::linear;
    if (s == "vhj") return Problem::vhj;
    throw ValidationError("unknown problem '" + s + "' (expected linear or vhj)");
}

void ExperimentConfig::validate() const {
    build_grid(nx, nt, T);  // throws with field-level messages
    if (!(q >= 1.0)) throw ValidationError("config: q must be >= 1");
    if (!(noise_p >= 0.0)) throw ValidationError("config: noise p must be >= 0");
    if (a_preset.empty()) throw ValidationError("config: coefficient preset a is required");
    if (f_preset.empty()) throw ValidationError("config: initial-datum preset f is required");
    if (beta_preset.empty() && noise_p > 0.0)
        throw ValidationError("config: beta preset is required when p > 0");
    if (!(epsilon >= 0.0)) throw ValidationError("config: epsilon must be >= 0");
    if (!(epsilon_prime > 0.0)) throw ValidationError("config: epsilon_prime must be > 0");
    if (!(rho > 1.0)) throw ValidationError("config: rho must be > 1");
    if (!(gamma > 0.0)) throw ValidationError("config: gamma must be > 0");
    if (!(alpha > 0.0 && alpha < 2.0)) throw ValidationError("config: alpha must lie in (0, 2)");
    if (max_iters < 1) throw ValidationError("config: max_iters must be >= 1");
    if (admissible_radius < 0.0) throw ValidationError("config: admissible_radius must be >= 0");
    if (!(newton_tol > 0.0)) throw ValidationError("config: newton_tol must be > 0");
    if (newton_max < 1) throw ValidationError("config: newton_max must be >= 1");
    if (threads < 0) throw ValidationError("config: threads must be >= 0");
    if (out_dir.empty()) throw ValidationError("config: out directory is required");
    if (!discrepancy && method != Method::van_cittert)
        throw ValidationError("config: the discrepancy test can only be disabled for van_cittert");
    if (problem == Problem::linear && method == Method::van_cittert)
        throw ValidationError("config: van_cittert drives the vhj problem (use problem=vhj)");
    if (problem == Problem::vhj && method != Method::van_cittert)
        throw ValidationError("config: cg/landweber drive the linear problem (use problem=linear)");
}

std::vector<std::string> preset_names() { return {"example1", "example2", "example3", "custom"}; }

void apply_preset(ExperimentConfig& cfg, const std::string& name) {
    cfg.preset = name;
    if (name == "custom") return;
    cfg.nx = 100;
    cfg.nt = 100;
    cfg.T = 0.03;
    cfg.b_preset.clear();
    cfg.c_preset.clear();
    cfg.d_preset.clear();
    cfg.q = 2.0;
    if (name == "example1") {
        cfg.problem = Problem::linear;
        cfg.method = Method::cg;
        cfg.a_preset = "sin_pi";
        cfg.f_preset = "power(0.5,0.5)";
        cfg.beta_preset = "power(0.5,0.5)";
        cfg.epsilon = 1e-6;
        cfg.epsilon_prime = 1e-7;
        cfg.rho = 1.1;
        cfg.max_iters = 200;
        return;
    }
    if (name == "example2") {
        cfg.problem = Problem::linear;
        cfg.method = Method::cg;
        cfg.a_preset = "power(4,4)";
        cfg.f_preset = "indicator(0.2,0.8)";
        cfg.beta_preset = "cosexp";
        cfg.epsilon = 1e-6;
        cfg.epsilon_prime = 1e-7;
        cfg.rho = 1.1;
        cfg.max_iters = 5;  // the paper's recorded run length; see README
        return;
    }
    if (name == "example3") {
        cfg.problem = Problem::vhj;
        cfg.method = Method::van_cittert;
        cfg.a_preset = "power(4,4)";
        cfg.b_preset = "power(2,2)";
        cfg.f_preset = "powersin(2,2)";
        cfg.beta_preset = "power(2,2)";
        cfg.gamma = 0.5;
        cfg.epsilon_prime = 1e-5;
        cfg.rho = 1.01;
        cfg.max_iters = 400;
        cfg.newton_tol = 1e-10;
        cfg.newton_max = 50;
        return;
    }
    throw ValidationError("unknown preset '" + name + "'");
}

namespace {

struct ProblemData {
    SpaceTimeGrid grid;
    CoefficientSet coeffs;
    GridFunction f_star;
    GridFunction beta;

    ProblemData(const ExperimentConfig& cfg)
        : grid(build_grid(cfg.nx, cfg.nt, cfg.T)),
          coeffs(),
          f_star(GridFunction::zeros(grid)),
          beta(GridFunction::zeros(grid)) {
        coeffs.a = sample_coefficient(cfg.a_preset, grid);
        if (!cfg.b_preset.empty()) coeffs.b = sample_coefficient(cfg.b_preset, grid);
        if (!cfg.c_preset.empty()) coeffs.c = sample_coefficient(cfg.c_preset, grid);
        if (!cfg.d_preset.empty()) coeffs.d = sample_coefficient(cfg.d_preset, grid);
        coeffs.q = cfg.q;
        coeffs.validate(grid);
        f_star = GridFunction(grid, sample_coefficient(cfg.f_preset, grid));
        if (!cfg.beta_preset.empty())
            beta = GridFunction(grid, sample_coefficient(cfg.beta_preset, grid));
    }

    GridFunction forward_map(const GridFunction& f, const ExperimentConfig& cfg) const {
        if (cfg.problem == Problem::linear) return input_output(f, coeffs.a, grid);
        NewtonConfig ncfg{cfg.newton_tol, cfg.newton_max, NewtonConfig::InitialGuess::previous_step};
        return vhj_input_output(f, coeffs, grid, ncfg);
    }
};

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void write_summary_json(const std::string& path, const ExperimentConfig& cfg,
                        const RunSummary& s) {
    nlohmann::json j;
    j["preset"] = cfg.preset;
    j["problem"] = to_string(cfg.problem);
    j["method"] = to_string(cfg.method);
    j["nx"] = cfg.nx;
    j["nt"] = cfg.nt;
    j["T"] = cfg.T;
    j["p"] = cfg.noise_p;
    j["seed"] = cfg.seed;
    j["iterations"] = s.iterations;
    j["stop_reason"] = s.stop_reason;
    j["error_rel"] = s.error_rel;
    j["error_abs"] = s.error_abs;
    if (std::isfinite(s.final_J)) j["final_J"] = s.final_J;
    if (std::isfinite(s.final_residual)) j["final_residual"] = s.final_residual;
    j["noise_E_sq"] = s.noise_E_sq;
    j["noise_E_norm"] = s.noise_E_norm;
    io::atomic_write_text(path, j.dump(2) + "\n");
}

void write_plots(const std::string& dir, const ExperimentConfig& cfg, const ProblemData& data,
                 const ReconstructionResult& result, RunSummary& summary) {
    const auto xs = data.grid.interior_x();
    io::LineSeries exact{"exact", xs, {data.f_star.values().begin(), data.f_star.values().end()},
                         "#333333"};
    io::LineSeries recovered{"recovered", xs,
                             {result.f_hat.values().begin(), result.f_hat.values().end()},
                             "#d62728"};
    const std::string rec_path = join_path(dir, "reconstruction.svg");
    const io::LineSeries rec_series[] = {exact, recovered};
    io::write_line_plot_svg(rec_path, "Exact vs recovered initial data", "x", "f", rec_series);
    summary.artifacts.push_back(rec_path);

    io::LineSeries hist;
    hist.label = cfg.method == Method::van_cittert ? "residual" : "J";
    hist.color = "#1f77b4";
    for (const auto& r : result.history) {
        hist.x.push_back(r.n);
        hist.y.push_back(cfg.method == Method::van_cittert ? r.residual : r.J);
    }
    const std::string hist_path = join_path(dir, "history.svg");
    const io::LineSeries hist_series[] = {hist};
    io::write_line_plot_svg(hist_path, "Iteration history", "n", hist.label, hist_series,
                            /*log_y=*/true);
    summary.artifacts.push_back(hist_path);
}

}  // namespace

RunSummary run_forward(const ExperimentConfig& cfg) {
    cfg.validate();
    const ProblemData data(cfg);
    RunSummary summary;
    summary.final_J = kNaN;
    summary.final_residual = kNaN;
    const std::string traj_path = join_path(cfg.out_dir, "trajectory.csv");
    if (cfg.problem == Problem::linear) {
        const Trajectory traj = solve_forward(data.f_star, data.coeffs.a, data.grid);
        io::write_trajectory_csv(traj_path, traj);
    } else {
        NewtonConfig ncfg{cfg.newton_tol, cfg.newton_max, NewtonConfig::InitialGuess::previous_step};
        const auto [traj, report] = solve_vhj(data.f_star, data.coeffs, data.grid, ncfg);
        io::write_trajectory_csv(traj_path, traj);
        const std::string rep_path = join_path(cfg.out_dir, "newton_report.csv");
        io::write_newton_report_csv(rep_path, report);
        summary.artifacts.push_back(rep_path);
    }
    summary.artifacts.push_back(traj_path);
    summary.stop_reason = "completed";
    return summary;
}

RunSummary run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const ProblemData data(cfg);
    RunSummary summary;
    summary.final_J = kNaN;
    summary.final_residual = kNaN;

    const GridFunction u_T = data.forward_map(data.f_star, cfg);
    const NoisySnapshot snap = make_noisy(u_T, cfg.noise_p, data.beta, cfg.seed, data.coeffs.a);
    summary.noise_E_sq = snap.E_sq;
    summary.noise_E_norm = snap.E_norm;

    const std::string snap_csv = join_path(cfg.out_dir, "snapshot.csv");
    const std::string snap_meta = join_path(cfg.out_dir, "snapshot_meta.json");
    save_snapshot(snap_csv, snap_meta, snap, cfg.beta_preset);
    summary.artifacts.push_back(snap_csv);
    summary.artifacts.push_back(snap_meta);

    ReconstructionResult result{GridFunction::zeros(data.grid), 0, {}, StopReason::max_iters};
    const std::string log_path = join_path(cfg.out_dir, "iterations.csv");
    if (cfg.method == Method::van_cittert) {
        VanCittertConfig vcfg{cfg.gamma, cfg.epsilon_prime, cfg.rho, cfg.max_iters,
                              cfg.discrepancy};
        NewtonConfig ncfg{cfg.newton_tol, cfg.newton_max, NewtonConfig::InitialGuess::previous_step};
        result = van_cittert_reconstruct(snap.u_delta, data.coeffs, data.grid, vcfg, ncfg,
                                         noise_magnitude_for(Method::van_cittert, snap),
                                         &data.f_star);
        io::write_van_cittert_log_csv(log_path, result);
        if (!result.history.empty()) summary.final_residual = result.history.back().residual;
    } else {
        TikhonovConfig tcfg;
        tcfg.epsilon = cfg.epsilon;
        tcfg.epsilon_prime = cfg.epsilon_prime;
        tcfg.rho = cfg.rho;
        tcfg.max_iters = cfg.max_iters;
        if (cfg.admissible_radius > 0.0) tcfg.admissible_radius = cfg.admissible_radius;
        const GridFunction f0 = GridFunction::zeros(data.grid);
        const double E = noise_magnitude_for(cfg.method, snap);
        result = (cfg.method == Method::cg)
                     ? cg_reconstruct(snap.u_delta, data.coeffs.a, data.grid, tcfg, f0, E,
                                      &data.f_star)
                     : landweber_reconstruct(snap.u_delta, data.coeffs.a, data.grid, tcfg,
                                             cfg.alpha, f0, E, &data.f_star);
        io::write_cg_log_csv(log_path, result);
        if (!result.history.empty()) summary.final_J = result.history.back().J;
    }
    summary.artifacts.push_back(log_path);

    summary.iterations = result.iterations;
    summary.stop_reason = to_string(result.stop_reason);
    if (!result.history.empty()) {
        summary.error_rel = result.history.back().error_rel;
        summary.error_abs = result.history.back().error_abs;
    } else {
        const double fn = weighted_l2_norm(data.f_star, data.coeffs.a);
        std::vector<double> d(data.grid.nx);
        kernels::serial::scale_add(result.f_hat.values(), -1.0, data.f_star.values(), d);
        summary.error_abs = weighted_l2_norm(GridFunction(data.grid, d), data.coeffs.a);
        summary.error_rel = fn > 0.0 ? summary.error_abs / fn : kNaN;
    }

    const std::string rec_path = join_path(cfg.out_dir, "reconstruction.csv");
    io::write_reconstruction_csv(rec_path, data.f_star, result.f_hat);
    summary.artifacts.push_back(rec_path);

    if (cfg.plots) write_plots(cfg.out_dir, cfg, data, result, summary);

    const std::string summary_path = join_path(cfg.out_dir, "summary.json");
    write_summary_json(summary_path, cfg, summary);
    summary.artifacts.push_back(summary_path);
    return summary;
}

std::vector<io::SweepRow> sweep(const ExperimentConfig& cfg, const SweepSpec& spec) {
    cfg.validate();
    const std::vector<std::uint64_t> seeds = spec.seeds.empty()
                                                 ? std::vector<std::uint64_t>{cfg.seed}
                                                 : spec.seeds;
    struct Cell {
        double p;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (double p : spec.p_values)
        for (std::uint64_t s : seeds) cells.push_back({p, s});

    std::vector<io::SweepRow> rows(cells.size());
    int workers = cfg.threads;
#ifdef _OPENMP
    if (workers <= 0) workers = omp_get_max_threads();
    workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(cells.size(), 1))));
#endif
#pragma omp parallel for schedule(dynamic) num_threads(workers) if (cells.size() > 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cells.size()); ++i) {
        const Cell& cell = cells[static_cast<std::size_t>(i)];
        ExperimentConfig cell_cfg = cfg;
        cell_cfg.noise_p = cell.p;
        cell_cfg.seed = cell.seed;
        std::ostringstream sub;
        sub << "p" << io::format_double(cell.p) << "_s" << cell.seed;
        cell_cfg.out_dir = join_path(cfg.out_dir, sub.str());
        io::SweepRow row;
        row.p = cell.p;
        row.seed = cell.seed;
        try {
            const RunSummary s = run_experiment(cell_cfg);
            row.error = s.error_rel;
            row.iterations = s.iterations;
            row.stop_reason = s.stop_reason;
        } catch (const std::exception& e) {
            row.error = kNaN;
            row.iterations = 0;
            row.stop_reason = std::string("error: ") + e.what();
        }
        rows[static_cast<std::size_t>(i)] = row;
    }
    io::write_sweep_table_csv(join_path(cfg.out_dir, "sweep.csv"), rows);
    return rows;
}

}  // namespace initrec
