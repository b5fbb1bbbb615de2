#pragma once

#include <string>
#include <vector>

#include "initrec/linear_forward.hpp"
#include "initrec/tikhonov.hpp"
#include "initrec/vhj.hpp"

namespace initrec::io {

/// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double v);

/// Writes via a temp file in the same directory + rename, so interrupted
/// runs never leave truncated files.
void atomic_write_text(const std::string& path, const std::string& content);

/// Header `t,x,u`, one row per (time level, interior node).
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Header `step,iterations,residual`.
void write_newton_report_csv(const std::string& path, const NewtonReport& report);

/// CG/Landweber log: `n,J,grad_norm,alpha,gamma,error_rel`.
void write_cg_log_csv(const std::string& path, const ReconstructionResult& result);

/// Van Cittert log: `n,residual,error_rel`.
void write_van_cittert_log_csv(const std::string& path, const ReconstructionResult& result);

/// Header `x,f_exact,f_hat`.
void write_reconstruction_csv(const std::string& path, const GridFunction& f_exact,
                              const GridFunction& f_hat);

struct SweepRow {
    double p = 0.0;
    std::uint64_t seed = 0;
    double error = 0.0;
    int iterations = 0;
    std::string stop_reason;
};

/// Header `p,seed,error,iterations,stop_reason`.
void write_sweep_table_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Parses a CSV of doubles with the given expected header.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  const std::string& expected_header);

}  // namespace initrec::io
