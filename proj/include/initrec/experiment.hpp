#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "initrec/csv.hpp"
#include "initrec/noise.hpp"
#include "initrec/tikhonov.hpp"

namespace initrec {

enum class Problem { linear, vhj };
const char* to_string(Problem p);
Problem problem_from_string(const std::string& s);

/// Fully resolved description of one run. Example presets freeze the
/// paper's values; explicit settings applied after apply_preset override
/// them (noise level and seed in particular vary per experiment cell).
struct ExperimentConfig {
    Problem problem = Problem::linear;
    std::string preset = "custom";

    std::size_t nx = 100;
    std::size_t nt = 100;
    double T = 0.03;

    std::string a_preset = "sin_pi";
    std::string b_preset;  // empty = zero
    std::string c_preset;
    std::string d_preset;
    double q = 2.0;
    std::string f_preset = "power(0.5,0.5)";  // exact initial datum f*

    double noise_p = 0.0;
    std::string beta_preset = "power(0.5,0.5)";
    std::uint64_t seed = 1;

    Method method = Method::cg;
    double epsilon = 1e-6;
    double epsilon_prime = 1e-7;
    double rho = 1.1;
    double gamma = 0.5;         // van Cittert relaxation
    double alpha = 1.0;         // Landweber step
    int max_iters = 200;
    double admissible_radius = 0.0;  // 0 = unconstrained
    bool discrepancy = true;
    double newton_tol = 1e-10;
    int newton_max = 50;

    std::string out_dir = "out";
    bool plots = false;
    int threads = 0;  // sweep worker cap; 0 = all hardware threads

    void validate() const;
};

/// Known preset names: example1, example2, example3, custom.
std::vector<std::string> preset_names();

/// Overwrites the fields frozen by the named preset (grid, coefficients,
/// f*, beta, method and its parameters). Throws on unknown names.
void apply_preset(ExperimentConfig& cfg, const std::string& name);

/// Outcome of one run; all artifact files are under cfg.out_dir.
struct RunSummary {
    int iterations = 0;
    std::string stop_reason;
    double error_rel = 0.0;  // |f_hat - f*|_{1/a} / |f*|_{1/a}
    double error_abs = 0.0;
    double final_J = 0.0;        // CG/Landweber only (NaN otherwise)
    double final_residual = 0.0; // van Cittert only (NaN otherwise)
    double noise_E_sq = 0.0;
    double noise_E_norm = 0.0;
    std::vector<std::string> artifacts;
};

/// Forward solve only: trajectory CSV (+ Newton report for VHJ).
RunSummary run_forward(const ExperimentConfig& cfg);

/// Full reconstruction: snapshot, iteration log, reconstruction CSV,
/// summary.json, optional SVG plots.
RunSummary run_experiment(const ExperimentConfig& cfg);

struct SweepSpec {
    std::vector<double> p_values;
    std::vector<std::uint64_t> seeds;  // empty = {cfg.seed}
};

/// One run_experiment per (p, seed) cell, executed in parallel up to the
/// worker cap; per-cell artifacts under out_dir/p<p>_s<seed>/ and an
/// aggregate table CSV. Cell failures are reported per cell, not fatal.
std::vector<io::SweepRow> sweep(const ExperimentConfig& cfg, const SweepSpec& spec);

}  // namespace initrec
