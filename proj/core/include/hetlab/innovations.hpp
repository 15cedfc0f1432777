#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hetlab/rng.hpp"

namespace hetlab {

enum class DistKind { StandardNormal, ExpMixture, Rademacher };

// Innovation law with unit-free sampler and (where it exists) density.
//
// The exponential mixture draws a raw variable U that is Exp(rate_pos)
// with probability weight_pos and -Exp(rate_neg) otherwise, then emits
//   eps = scale * (U - shift).
// Its density is everywhere positive, so it satisfies the regularity
// requirements of the stochastic results; Rademacher (+-1) does not and
// is accepted only by the deterministic-map paths.
struct InnovationDist {
    DistKind kind = DistKind::StandardNormal;
    double rate_pos = 1.0;    // lambda_1
    double rate_neg = 4.0;    // lambda_2
    double weight_pos = 0.2;  // p
    double shift = 0.0;       // m
    double scale = 1.0;       // s

    static InnovationDist standard_normal();
    static InnovationDist rademacher();
    static InnovationDist exp_mixture(double weight_pos, double rate_pos,
                                      double rate_neg, double shift, double scale);
    // Mixture with the given weight, shift and scale solved for mean 0,
    // variance 1.
    static InnovationDist exp_mixture_standardized(double weight_pos,
                                                   double rate_pos,
                                                   double rate_neg);
    // The mixture used by the shipped experiments (rates 1 and 4,
    // weight 0.35, standardized).
    static InnovationDist default_exp_mixture();

    bool has_density() const { return kind != DistKind::Rademacher; }

    // g(x); throws ConfigError for Rademacher.
    double density(double x) const;

    double sample(Rng& rng) const;

    const char* name() const;
};

InnovationDist parse_dist(const std::string& name);

std::vector<double> sample(const InnovationDist& dist, Rng& rng, std::size_t n);
std::vector<double> sample(const InnovationDist& dist, std::uint64_t seed, std::size_t n);

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

// MC estimate of E log|eps - shift|.
McEstimate log_moment_check(const InnovationDist& dist, double shift,
                            std::size_t n, std::uint64_t seed);

}  // namespace hetlab
