#pragma once

#include <cstdint>
#include <optional>

#include "hetlab/models.hpp"

namespace hetlab {

enum class LambdaMethod { ClosedFormMc, ErgodicMc, Quadrature };
enum class InvVerdict { LocallyInvertible, LocallyNoninvertible, Indeterminate };

const char* to_string(LambdaMethod m);
const char* to_string(InvVerdict v);

// Point estimate of the stability coefficient with its decision band.
// verdict is resolved at 4 standard errors; quadrature and exact routes
// carry stderr 0, where the sign alone decides (0 itself stays
// indeterminate: the sign dichotomy says nothing on the boundary).
struct LambdaEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::size_t n_samples = 0;
    LambdaMethod method = LambdaMethod::ClosedFormMc;
    InvVerdict verdict = InvVerdict::Indeterminate;
    std::size_t skipped = 0;  // draws discarded on exact log singularities
};

InvVerdict verdict_from(double value, double stderr_);

// E log|beta - (gamma |eps| + delta eps) / 2| by plain MC over n i.i.d.
// draws; no volatility path is needed. Draws are sharded over a fixed
// number of sub-streams and merged in shard order, so the result does
// not depend on how many workers execute the shards.
LambdaEstimate lambda_egarch_closed(const EgarchParams& model,
                                    const InnovationDist& dist, std::size_t n,
                                    std::uint64_t seed, unsigned threads = 1);

// Ergodic average of log|dH/dx| along a simulated stationary true path;
// stderr by batch means with ~sqrt(path_len) batches. Throws
// NumericError if the true path diverges.
LambdaEstimate lambda_ergodic(const ModelSpec& model, const InnovationDist& dist,
                              std::size_t path_len, std::size_t burn_in,
                              std::uint64_t seed);

// Deterministic quadrature route (absolute tolerance 1e-9). Available
// for EGARCH, for VGARCH with beta == 0 (two independent draws make the
// integral finite-dimensional), and trivially for GARCH(1,1) where the
// derivative is the constant beta_1. Returns nullopt otherwise.
std::optional<LambdaEstimate> lambda_quadrature(const ModelSpec& model,
                                                const InnovationDist& dist);

struct Classification {
    LambdaEstimate lambda;
    Verdict3 stationary = Verdict3::Indeterminate;
    // "invertible", "properly_noninvertible" or "indeterminate"
    const char* prediction = "indeterminate";
};

// Combines the stationarity check with the best available lambda route.
Classification classify(const ModelSpec& model, const InnovationDist& dist,
                        std::size_t budget, std::uint64_t seed);

}  // namespace hetlab
