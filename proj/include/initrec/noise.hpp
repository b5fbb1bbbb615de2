#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "initrec/grid.hpp"

namespace initrec {

enum class Method { cg, landweber, van_cittert };
const char* to_string(Method m);
Method method_from_string(const std::string& s);

/// Final-time measurement with its noise bookkeeping.
/// p = 0 implies u_delta == u_exact bit-for-bit and E_sq = E_norm = 0.
struct NoisySnapshot {
    GridFunction u_delta;
    GridFunction u_exact;
    GridFunction beta;
    double p = 0.0;
    std::uint64_t seed = 0;
    double E_sq = 0.0;    // 1/2 |u_exact - u_delta|^2_{1/a}
    double E_norm = 0.0;  // |u_exact - u_delta|_{1/a}
};

/// u_delta_j = u_j + p * beta_j * max|u| * xi_j, xi_j i.i.d. uniform [0,1)
/// from the SplitMix64 counter stream of `seed` (one draw per node;
/// bit-identical across runs and platforms).
NoisySnapshot make_noisy(const GridFunction& u_exact, double p, const GridFunction& beta,
                         std::uint64_t seed, std::span<const double> a);

/// E in the units each method's discrepancy test expects: the squared,
/// halved quantity for cg/landweber, the plain norm for van_cittert.
double noise_magnitude_for(Method method, const NoisySnapshot& snapshot);

/// CSV `x,u_exact,u_delta` plus a JSON sidecar (p, seed, beta preset,
/// E values) so experiments rerun bit-exact.
void save_snapshot(const std::string& csv_path, const std::string& meta_path,
                   const NoisySnapshot& snapshot, const std::string& beta_preset);

/// Rebuilds the snapshot from the CSV + sidecar; beta is re-sampled from
/// the preset recorded in the sidecar.
NoisySnapshot load_snapshot(const std::string& csv_path, const std::string& meta_path,
                            const SpaceTimeGrid& grid);

}  // namespace initrec
