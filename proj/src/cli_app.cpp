#include "initrec/cli_app.hpp"

#include "initrec/errors.hpp"

namespace initrec::cli {

ExperimentConfig resolve_from(const CliState& st) {
    ExperimentConfig cfg;
    apply_preset(cfg, st.preset);
    for (const auto& [opt, overlay] : st.overlays)
        if (opt->count() > 0 || !opt->results().empty()) overlay(cfg, st);
    return cfg;
}

ExperimentConfig CliState::resolve() const { return resolve_from(*this); }

std::unique_ptr<CliState> build_cli(CLI::App& app) {
    auto st = std::make_unique<CliState>();
    CliState* s = st.get();

    app.set_config("--config", "", "Load options from a key=value config file");
    app.require_subcommand(0, 1);

    const auto overlay = [s](CLI::Option* opt,
                             std::function<void(ExperimentConfig&, const CliState&)> fn) {
        s->overlays.emplace_back(opt, std::move(fn));
    };

    app.add_option("--preset", s->preset, "Experiment preset: example1|example2|example3|custom")
        ->check(CLI::IsMember(preset_names()));

    overlay(app.add_option("--problem", s->problem_str, "Equation: linear|vhj")
                ->check(CLI::IsMember({"linear", "vhj"})),
            [](ExperimentConfig& c, const CliState& t) {
                c.problem = problem_from_string(t.problem_str);
            });
    overlay(app.add_option("--nx", s->supplied.nx, "Interior spatial nodes"),
            [](ExperimentConfig& c, const CliState& t) { c.nx = t.supplied.nx; });
    overlay(app.add_option("--nt", s->supplied.nt, "Interior time levels"),
            [](ExperimentConfig& c, const CliState& t) { c.nt = t.supplied.nt; });
    overlay(app.add_option("--T", s->supplied.T, "Final time"),
            [](ExperimentConfig& c, const CliState& t) { c.T = t.supplied.T; });
    overlay(app.add_option("--a", s->supplied.a_preset, "Degeneracy coefficient preset"),
            [](ExperimentConfig& c, const CliState& t) { c.a_preset = t.supplied.a_preset; });
    overlay(app.add_option("--b", s->supplied.b_preset, "Hamiltonian coefficient preset"),
            [](ExperimentConfig& c, const CliState& t) { c.b_preset = t.supplied.b_preset; });
    overlay(app.add_option("--c", s->supplied.c_preset, "Potential coefficient preset"),
            [](ExperimentConfig& c, const CliState& t) { c.c_preset = t.supplied.c_preset; });
    overlay(app.add_option("--d", s->supplied.d_preset, "Drift coefficient preset"),
            [](ExperimentConfig& c, const CliState& t) { c.d_preset = t.supplied.d_preset; });
    overlay(app.add_option("--q", s->supplied.q, "Hamiltonian exponent (>= 1)"),
            [](ExperimentConfig& c, const CliState& t) { c.q = t.supplied.q; });
    overlay(app.add_option("--f", s->supplied.f_preset, "Exact initial-datum preset"),
            [](ExperimentConfig& c, const CliState& t) { c.f_preset = t.supplied.f_preset; });
    overlay(app.add_option("--noise-p", s->supplied.noise_p, "Noise level as a fraction"),
            [](ExperimentConfig& c, const CliState& t) { c.noise_p = t.supplied.noise_p; });
    overlay(app.add_option("--beta", s->supplied.beta_preset, "Noise profile preset"),
            [](ExperimentConfig& c, const CliState& t) { c.beta_preset = t.supplied.beta_preset; });
    overlay(app.add_option("--seed", s->supplied.seed, "Noise RNG seed"),
            [](ExperimentConfig& c, const CliState& t) { c.seed = t.supplied.seed; });
    overlay(app.add_option("--method", s->method_str, "Reconstruction: cg|landweber|van_cittert")
                ->check(CLI::IsMember({"cg", "landweber", "van_cittert"})),
            [](ExperimentConfig& c, const CliState& t) {
                c.method = method_from_string(t.method_str);
            });
    overlay(app.add_option("--epsilon", s->supplied.epsilon, "Tikhonov regularization weight"),
            [](ExperimentConfig& c, const CliState& t) { c.epsilon = t.supplied.epsilon; });
    overlay(app.add_option("--epsilon-prime", s->supplied.epsilon_prime,
                           "Noise-free discrepancy tolerance"),
            [](ExperimentConfig& c, const CliState& t) {
                c.epsilon_prime = t.supplied.epsilon_prime;
            });
    overlay(app.add_option("--rho", s->supplied.rho, "Discrepancy factor (> 1)"),
            [](ExperimentConfig& c, const CliState& t) { c.rho = t.supplied.rho; });
    overlay(app.add_option("--gamma", s->supplied.gamma, "Van Cittert relaxation parameter"),
            [](ExperimentConfig& c, const CliState& t) { c.gamma = t.supplied.gamma; });
    overlay(app.add_option("--alpha", s->supplied.alpha, "Landweber step size in (0,2)"),
            [](ExperimentConfig& c, const CliState& t) { c.alpha = t.supplied.alpha; });
    overlay(app.add_option("--max-iters", s->supplied.max_iters, "Iteration cap"),
            [](ExperimentConfig& c, const CliState& t) { c.max_iters = t.supplied.max_iters; });
    overlay(app.add_option("--radius", s->supplied.admissible_radius,
                           "Admissible-set projection radius (0 = off)"),
            [](ExperimentConfig& c, const CliState& t) {
                c.admissible_radius = t.supplied.admissible_radius;
            });
    overlay(app.add_flag("--no-discrepancy{false},--discrepancy{true}", s->supplied.discrepancy,
                         "Enable/disable the discrepancy stop (van_cittert only)"),
            [](ExperimentConfig& c, const CliState& t) { c.discrepancy = t.supplied.discrepancy; });
    overlay(app.add_option("--newton-tol", s->supplied.newton_tol, "Newton residual tolerance"),
            [](ExperimentConfig& c, const CliState& t) { c.newton_tol = t.supplied.newton_tol; });
    overlay(app.add_option("--newton-max", s->supplied.newton_max, "Newton iteration cap"),
            [](ExperimentConfig& c, const CliState& t) { c.newton_max = t.supplied.newton_max; });
    overlay(app.add_option("--out", s->supplied.out_dir, "Artifact directory"),
            [](ExperimentConfig& c, const CliState& t) { c.out_dir = t.supplied.out_dir; });
    overlay(app.add_flag("--plots", s->supplied.plots, "Write SVG plots"),
            [](ExperimentConfig& c, const CliState& t) { c.plots = t.supplied.plots; });
    overlay(app.add_option("--threads", s->supplied.threads, "Sweep worker cap (0 = all)"),
            [](ExperimentConfig& c, const CliState& t) { c.threads = t.supplied.threads; });

    app.add_option("--p-list", s->sweep_spec.p_values, "Sweep noise levels (fractions)");
    app.add_option("--seeds", s->sweep_spec.seeds, "Sweep seeds");

    st->cmd_forward = app.add_subcommand("forward", "Run the forward solver, write the trajectory");
    st->cmd_reconstruct =
        app.add_subcommand("reconstruct", "Reconstruct the initial datum from final-time data");
    st->cmd_sweep = app.add_subcommand("sweep", "Run reconstructions over noise levels and seeds");
    st->cmd_selftest = app.add_subcommand("selftest", "Run the deterministic property suite");
    return st;
}

}  // namespace initrec::cli
