#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <variant>
#include <vector>

#include "hetlab/models.hpp"

namespace hetlab {

// Shared step of the EGARCH difference chain
//   d_t = beta d_{t-1} + eps*_{t-1} (exp(-d_{t-1}/2) - 1).
// expm1 keeps the multiplicative structure near d = 0; the naive
// exp(x) - 1 evaluates to exactly zero once |d| < 1e-16 and turns the
// origin into a spurious absorbing state.
inline double egarch_diff_step(double beta, double eps_star, double d) {
    return beta * d + eps_star * std::expm1(-0.5 * d);
}

struct InitConstant { double s2 = 1.0; };
struct InitSampleMean {};
// sigma2hat_0 = sigma2_0 * exp(offset); offset 0 starts the filter at
// the truth exactly.
struct InitLogOffset { double offset = 0.0; };
using InitMode = std::variant<InitConstant, InitSampleMean, InitLogOffset>;

struct SimConfig {
    ModelSpec model;
    InnovationDist dist;
    std::size_t n_steps = 1;
    std::size_t burn_in = 10000;
    InitMode init = InitConstant{1.0};
    std::uint64_t seed = 0;
    std::size_t record_every = 1;
};

void validate(const SimConfig& config);

struct PathPoint {
    std::size_t t = 0;
    double sigma2 = 0.0;
    double y = 0.0;
};

struct TruePath {
    std::vector<PathPoint> points;
    bool diverged = false;
    // Set when a cheap necessary condition for stationarity fails
    // (beta >= 1, or sum(alpha) + sum(beta) >= 1 for GARCH).
    bool stationarity_warning = false;
};

struct CoupledState {
    std::size_t t = 0;
    double sigma2 = 0.0;
    double sigma2hat = 0.0;
    double z = 0.0;          // log sigma2 (EGARCH) or sigma2 (VGARCH/GARCH)
    double d_or_zhat = 0.0;  // log sigma2hat - log sigma2 (EGARCH),
                             // sigma2hat - sigma2 (GARCH, exact for p = q = 1),
                             // sigma2hat (VGARCH)
    bool diverged = false;
};

// True volatility path after burn-in from sigma2_0 = 1; y_t = sigma_t eps_t.
TruePath simulate_true_path(const SimConfig& config);

// The coupled pair: sigma2 by the true recursion, sigma2hat by the
// filter applied to the realized returns, both driven by one stream.
// GARCH(1,1) propagates the difference sigma2hat - sigma2 explicitly
// (the recursion is exactly linear in it), so the geometric decay ratio
// is machine-exact down to denormals.
std::vector<CoupledState> simulate_coupled(const SimConfig& config);

// Same pair evolved in the transformed coordinates: (z, d) for EGARCH,
// (z, zhat) for VGARCH. d stays finite in regimes where sigma2hat
// overflows, so this is the supported tool for divergence studies.
std::vector<CoupledState> simulate_coupled_coords(const SimConfig& config);

// Schema: t,sigma2,sigma2hat,z,d_or_zhat,diverged
void write_path_csv(std::ostream& os, const std::vector<CoupledState>& states);

}  // namespace hetlab
