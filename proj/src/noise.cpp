#include "initrec/noise.hpp"

#include <cmath>

#include "initrec/coefficients.hpp"
#include "initrec/csv.hpp"
#include "initrec/errors.hpp"
#include "initrec/kernels.hpp"
#include "initrec/norms.hpp"

#include <fstream>

#include <json.hpp>

namespace initrec {

const char* to_string(Method m) {
    switch (m) {
        case Method::cg: return "cg";
        case Method::landweber: return "landweber";
        case Method::van_cittert: return "van_cittert";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "cg") return Method::cg;
    if (s == "landweber") return Method::landweber;
    if (s == "van_cittert") return Method::van_cittert;
    throw ValidationError("unknown method '" + s + "'");
}

NoisySnapshot make_noisy(const GridFunction& u_exact, double p, const GridFunction& beta,
                         std::uint64_t seed, std::span<const double> a) {
    require_same_grid(u_exact, beta);
    if (!(p >= 0.0)) throw ValidationError("make_noisy: p must be >= 0");

    NoisySnapshot snap{u_exact, u_exact, beta, p, seed, 0.0, 0.0};
    if (p == 0.0) return snap;

    std::vector<double> noisy(u_exact.size());
    kernels::apply_noise(u_exact.values(), beta.values(), p, u_exact.max_abs(), seed, noisy);
    snap.u_delta = GridFunction(u_exact.grid(), std::move(noisy));

    std::vector<double> diff(u_exact.size());
    kernels::serial::scale_add(u_exact.values(), -1.0, snap.u_delta.values(), diff);
    const GridFunction d(u_exact.grid(), std::move(diff));
    snap.E_norm = weighted_l2_norm(d, a);
    snap.E_sq = 0.5 * snap.E_norm * snap.E_norm;
    return snap;
}

double noise_magnitude_for(Method method, const NoisySnapshot& snapshot) {
    return method == Method::van_cittert ? snapshot.E_norm : snapshot.E_sq;
}

void save_snapshot(const std::string& csv_path, const std::string& meta_path,
                   const NoisySnapshot& snapshot, const std::string& beta_preset) {
    std::string csv = "x,u_exact,u_delta\n";
    const auto& g = snapshot.u_exact.grid();
    for (std::size_t j = 0; j < g.nx; ++j) {
        csv += io::format_double(g.x(j + 1));
        csv += ',';
        csv += io::format_double(snapshot.u_exact[j]);
        csv += ',';
        csv += io::format_double(snapshot.u_delta[j]);
        csv += '\n';
    }
    io::atomic_write_text(csv_path, csv);

    nlohmann::json meta;
    meta["p"] = snapshot.p;
    meta["seed"] = snapshot.seed;
    meta["beta_preset"] = beta_preset;
    meta["E_sq"] = snapshot.E_sq;
    meta["E_norm"] = snapshot.E_norm;
    meta["nx"] = g.nx;
    meta["nt"] = g.nt;
    meta["T"] = g.T;
    io::atomic_write_text(meta_path, meta.dump(2) + "\n");
}

NoisySnapshot load_snapshot(const std::string& csv_path, const std::string& meta_path,
                            const SpaceTimeGrid& grid) {
    std::ifstream in(meta_path);
    if (!in) throw ValidationError("cannot open '" + meta_path + "'");
    nlohmann::json meta = nlohmann::json::parse(in);
    if (meta.at("nx").get<std::size_t>() != grid.nx)
        throw ValidationError("snapshot '" + meta_path + "' was taken on a different grid");

    const auto rows = io::read_numeric_csv(csv_path, "x,u_exact,u_delta");
    if (rows.size() != grid.nx)
        throw ValidationError("snapshot '" + csv_path + "': row count does not match grid");
    std::vector<double> ue(grid.nx), ud(grid.nx);
    for (std::size_t j = 0; j < grid.nx; ++j) {
        ue[j] = rows[j][1];
        ud[j] = rows[j][2];
    }
    NoisySnapshot snap{GridFunction(grid, std::move(ud)), GridFunction(grid, std::move(ue)),
                       GridFunction::sample(grid, [](double) { return 0.0; }),
                       meta.at("p").get<double>(), meta.at("seed").get<std::uint64_t>(),
                       meta.at("E_sq").get<double>(), meta.at("E_norm").get<double>()};
    const std::string beta_preset = meta.at("beta_preset").get<std::string>();
    snap.beta = GridFunction(grid, sample_coefficient(beta_preset, grid));
    return snap;
}

}  // namespace initrec
