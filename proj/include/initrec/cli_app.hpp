#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "initrec/experiment.hpp"

namespace initrec::cli {

/// Parsed command-line / config-file state. Option values land in
/// `supplied`; resolve() starts from the preset and overlays only the
/// options the user actually set (command line or config file), so preset
/// files can be partially overridden.
struct CliState {
    ExperimentConfig supplied;
    SweepSpec sweep_spec;
    std::string preset = "custom";
    std::string problem_str = "linear";
    std::string method_str = "cg";

    CLI::App* cmd_forward = nullptr;
    CLI::App* cmd_reconstruct = nullptr;
    CLI::App* cmd_sweep = nullptr;
    CLI::App* cmd_selftest = nullptr;

    // pairs of (option, overlay action applied when the option was set)
    std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&, const CliState&)>>>
        overlays;

    ExperimentConfig resolve() const;
};

/// Wires subcommands, flags, and `--config` onto the app. Exit codes used
/// by the tool: 0 success, 2 validation error, 3 solver failure.
std::unique_ptr<CliState> build_cli(CLI::App& app);

}  // namespace initrec::cli
