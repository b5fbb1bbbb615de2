#include <cmath>
#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "initrec/cli_app.hpp"
#include "initrec/errors.hpp"
#include "initrec/selftest.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

void print_summary(const initrec::RunSummary& s) {
    std::printf("iterations: %d\nstop_reason: %s\n", s.iterations, s.stop_reason.c_str());
    if (std::isfinite(s.error_rel))
        std::printf("error_rel: %.6g\nerror_abs: %.6g\n", s.error_rel, s.error_abs);
    if (std::isfinite(s.final_J)) std::printf("final_J: %.6g\n", s.final_J);
    if (std::isfinite(s.final_residual)) std::printf("final_residual: %.6g\n", s.final_residual);
    for (const auto& a : s.artifacts) std::printf("wrote %s\n", a.c_str());
}

int run_selftest() {
    const auto results = initrec::run_property_suite();
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%zu checks, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forward simulation and backward initial-data reconstruction for "
                 "degenerate parabolic and viscous Hamilton-Jacobi equations"};
    auto state = initrec::cli::build_cli(app);

    CLI11_PARSE(app, argc, argv);

    try {
        if (state->cmd_selftest->parsed()) return run_selftest();

        const initrec::ExperimentConfig cfg = state->resolve();
        if (state->cmd_forward->parsed()) {
            print_summary(initrec::run_forward(cfg));
            return 0;
        }
        if (state->cmd_sweep->parsed()) {
            if (state->sweep_spec.p_values.empty()) {
                std::fprintf(stderr, "sweep: --p-list is required\n");
                return kExitValidation;
            }
            const auto rows = initrec::sweep(cfg, state->sweep_spec);
            for (const auto& r : rows)
                std::printf("p=%g seed=%llu error=%.6g iterations=%d stop=%s\n", r.p,
                            static_cast<unsigned long long>(r.seed), r.error, r.iterations,
                            r.stop_reason.c_str());
            return 0;
        }
        // default action (also `reconstruct`)
        print_summary(initrec::run_experiment(cfg));
        return 0;
    } catch (const initrec::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const initrec::SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolver;
    }
}
