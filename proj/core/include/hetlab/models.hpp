#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hetlab/innovations.hpp"

namespace hetlab {

// sigma2_t = alpha0 + sum_i alphas[i] y^2_{t-1-i} + sum_j betas[j] sigma2_{t-1-j}
struct GarchParams {
    double alpha0 = 0.0;
    std::vector<double> alphas;  // alpha_1 .. alpha_p
    std::vector<double> betas;   // beta_1 .. beta_q
};

// log sigma2_t = alpha + gamma |eps_{t-1}| + delta eps_{t-1} + beta log sigma2_{t-1}
struct EgarchParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

// sigma2_t = alpha + gamma (eps_{t-1} - delta)^2 + beta sigma2_{t-1}
struct VgarchParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
};

using ModelSpec = std::variant<GarchParams, EgarchParams, VgarchParams>;

// Throws ConfigError naming the violated constraint.
void validate(const ModelSpec& model);

const char* family_name(const ModelSpec& model);
bool is_garch11(const ModelSpec& model);

// EGARCH log-volatility range; the first clamp hit marks the path diverged.
constexpr double kLogVolClamp = 700.0;

// One step of the true volatility recursion driven by the innovation
// eps_prev. GARCH is accepted here only for p, q <= 1; general (p, q)
// paths are handled by the simulators, which keep the lag buffers.
double update_true(const ModelSpec& model, double eps_prev, double sigma2_prev);

// One step of the observable filter recursion driven by the return
// y_prev (the residual y/sigma_hat is formed internally).
double update_filter(const ModelSpec& model, double y_prev, double sigma2hat_prev);

// d H(theta, y, x) / dx. For GARCH(1,1) this is the constant beta_1.
double dH_dx(const ModelSpec& model, double y, double x);

enum class Verdict3 { Satisfied, Violated, Indeterminate };

const char* to_string(Verdict3 v);

struct StationarityReport {
    Verdict3 verdict = Verdict3::Indeterminate;
    double statistic = 0.0;  // relevant log-moment point estimate
    double stderr_ = 0.0;
};

// Checks the strict stationarity condition of the family:
//   GARCH(1,1): E log(alpha_1 eps^2 + beta_1) < 0 (MC with 4*stderr band);
//   GARCH(p,q): sufficient Jensen check sum(alpha) + sum(beta) < 1;
//   EGARCH / VGARCH: beta < 1 plus an MC finiteness sanity statistic.
StationarityReport check_stationarity(const ModelSpec& model,
                                      const InnovationDist& dist,
                                      std::size_t n, std::uint64_t seed);

}  // namespace hetlab
