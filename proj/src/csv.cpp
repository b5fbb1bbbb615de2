#include "initrec/csv.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "initrec/errors.hpp"

namespace initrec::io {

std::string format_double(double v) {
    std::array<char, 32> buf;
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), ptr};
}

void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out.flush()) throw ValidationError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw ValidationError("rename to '" + path + "' failed: " + ec.message());
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ostringstream out;
    out << "t,x,u\n";
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        const double t = traj.grid.t(n);
        for (std::size_t j = 0; j < traj.grid.nx; ++j)
            out << format_double(t) << ',' << format_double(traj.grid.x(j + 1)) << ','
                << format_double(traj.states[n][j]) << '\n';
    }
    atomic_write_text(path, out.str());
}

void write_newton_report_csv(const std::string& path, const NewtonReport& report) {
    std::ostringstream out;
    out << "step,iterations,residual\n";
    for (std::size_t n = 0; n < report.iterations_per_step.size(); ++n)
        out << (n + 1) << ',' << report.iterations_per_step[n] << ','
            << format_double(report.final_residuals[n]) << '\n';
    atomic_write_text(path, out.str());
}

void write_cg_log_csv(const std::string& path, const ReconstructionResult& result) {
    std::ostringstream out;
    out << "n,J,grad_norm,alpha,gamma,error_rel\n";
    for (const auto& r : result.history)
        out << r.n << ',' << format_double(r.J) << ',' << format_double(r.grad_norm) << ','
            << format_double(r.alpha) << ',' << format_double(r.gamma) << ','
            << format_double(r.error_rel) << '\n';
    atomic_write_text(path, out.str());
}

void write_van_cittert_log_csv(const std::string& path, const ReconstructionResult& result) {
    std::ostringstream out;
    out << "n,residual,error_rel\n";
    for (const auto& r : result.history)
        out << r.n << ',' << format_double(r.residual) << ',' << format_double(r.error_rel)
            << '\n';
    atomic_write_text(path, out.str());
}

void write_reconstruction_csv(const std::string& path, const GridFunction& f_exact,
                              const GridFunction& f_hat) {
    require_same_grid(f_exact, f_hat);
    std::ostringstream out;
    out << "x,f_exact,f_hat\n";
    for (std::size_t j = 0; j < f_exact.size(); ++j)
        out << format_double(f_exact.grid().x(j + 1)) << ',' << format_double(f_exact[j]) << ','
            << format_double(f_hat[j]) << '\n';
    atomic_write_text(path, out.str());
}

void write_sweep_table_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "p,seed,error,iterations,stop_reason\n";
    for (const auto& r : rows)
        out << format_double(r.p) << ',' << r.seed << ',' << format_double(r.error) << ','
            << r.iterations << ',' << r.stop_reason << '\n';
    atomic_write_text(path, out.str());
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("'" + path + "' is empty");
    if (line != expected_header)
        throw ValidationError("'" + path + "': expected header '" + expected_header + "', got '" +
                              line + "'");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc{})
                throw ValidationError("'" + path + "': bad number '" + cell + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace initrec::io
