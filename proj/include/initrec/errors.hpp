#pragma once

#include <stdexcept>
#include <string>

namespace initrec {

/// Bad user input: grid sizes, preset names, config values, shape mismatches.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Numerical failure: zero pivot, Newton non-convergence, etc.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace initrec
