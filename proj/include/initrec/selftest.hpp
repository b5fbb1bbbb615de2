#pragma once

#include <string>
#include <vector>

namespace initrec {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Deterministic property suite (no external data needed): the discrete
/// adjoint identity, gradient consistency, energy decay, log convexity,
/// the Lipschitz bound, small-instance dense oracles, nonlinear
/// consistency, and noise determinism.
std::vector<CheckResult> run_property_suite();

}  // namespace initrec
