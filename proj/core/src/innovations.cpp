#include "hetlab/innovations.hpp"

#include <cmath>

#include "hetlab/errors.hpp"

namespace hetlab {

namespace {

void validate_mixture(double p, double l1, double l2, double s) {
    if (!(l1 > 0.0)) throw ConfigError("exp_mixture: rate_pos must be positive");
    if (!(l2 > 0.0)) throw ConfigError("exp_mixture: rate_neg must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("exp_mixture: weight_pos must be in [0, 1]");
    if (!(s > 0.0)) throw ConfigError("exp_mixture: scale must be positive");
}

constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

}  // namespace

InnovationDist InnovationDist::standard_normal() {
    InnovationDist d;
    d.kind = DistKind::StandardNormal;
    return d;
}

InnovationDist InnovationDist::rademacher() {
    InnovationDist d;
    d.kind = DistKind::Rademacher;
    return d;
}

InnovationDist InnovationDist::exp_mixture(double weight_pos, double rate_pos,
                                           double rate_neg, double shift, double scale) {
    validate_mixture(weight_pos, rate_pos, rate_neg, scale);
    InnovationDist d;
    d.kind = DistKind::ExpMixture;
    d.weight_pos = weight_pos;
    d.rate_pos = rate_pos;
    d.rate_neg = rate_neg;
    d.shift = shift;
    d.scale = scale;
    return d;
}

InnovationDist InnovationDist::exp_mixture_standardized(double weight_pos,
                                                        double rate_pos,
                                                        double rate_neg) {
    validate_mixture(weight_pos, rate_pos, rate_neg, 1.0);
    // Raw moments of U: E U = p/l1 - (1-p)/l2, E U^2 = 2p/l1^2 + 2(1-p)/l2^2.
    const double p = weight_pos;
    const double mean = p / rate_pos - (1.0 - p) / rate_neg;
    const double m2 = 2.0 * p / (rate_pos * rate_pos) +
                      2.0 * (1.0 - p) / (rate_neg * rate_neg);
    const double var = m2 - mean * mean;
    return exp_mixture(weight_pos, rate_pos, rate_neg, mean, 1.0 / std::sqrt(var));
}

InnovationDist InnovationDist::default_exp_mixture() {
    return exp_mixture_standardized(0.35, 1.0, 4.0);
}

double InnovationDist::density(double x) const {
    switch (kind) {
        case DistKind::StandardNormal:
            return kInvSqrt2Pi * std::exp(-0.5 * x * x);
        case DistKind::ExpMixture: {
            // eps = scale * (U - shift)  =>  u = x / scale + shift.
            const double u = x / scale + shift;
            double f;
            if (u > 0.0) {
                f = weight_pos * rate_pos * std::exp(-rate_pos * u);
            } else if (u < 0.0) {
                f = (1.0 - weight_pos) * rate_neg * std::exp(rate_neg * u);
            } else {
                // Continuity point; take the larger one-sided limit so
                // g stays strictly positive.
                f = std::max(weight_pos * rate_pos, (1.0 - weight_pos) * rate_neg);
            }
            return f / scale;
        }
        case DistKind::Rademacher:
            throw ConfigError("rademacher innovations have no Lebesgue density");
    }
    throw ConfigError("unknown innovation kind");
}

double InnovationDist::sample(Rng& rng) const {
    switch (kind) {
        case DistKind::StandardNormal:
            return rng.normal();
        case DistKind::ExpMixture: {
            const double u = rng.uniform() < weight_pos
                                 ? rng.exponential(rate_pos)
                                 : -rng.exponential(rate_neg);
            return scale * (u - shift);
        }
        case DistKind::Rademacher:
            return rng.sign();
    }
    throw ConfigError("unknown innovation kind");
}

const char* InnovationDist::name() const {
    switch (kind) {
        case DistKind::StandardNormal: return "normal";
        case DistKind::ExpMixture: return "exp_mixture";
        case DistKind::Rademacher: return "rademacher";
    }
    return "?";
}

InnovationDist parse_dist(const std::string& name) {
    if (name == "normal" || name == "standard_normal") return InnovationDist::standard_normal();
    if (name == "rademacher") return InnovationDist::rademacher();
    if (name == "exp_mixture" || name == "exp-mixture") return InnovationDist::default_exp_mixture();
    throw ConfigError("unknown innovation distribution: " + name);
}

std::vector<double> sample(const InnovationDist& dist, Rng& rng, std::size_t n) {
    std::vector<double> out(n);
    for (auto& x : out) x = dist.sample(rng);
    return out;
}

std::vector<double> sample(const InnovationDist& dist, std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    return sample(dist, rng, n);
}

McEstimate log_moment_check(const InnovationDist& dist, double shift,
                            std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::log(std::abs(dist.sample(rng) - shift));
        sum += v;
        sum2 += v * v;
    }
    McEstimate est;
    est.n = n;
    est.value = sum / static_cast<double>(n);
    if (n > 1) {
        const double var = (sum2 - sum * sum / static_cast<double>(n)) /
                           static_cast<double>(n - 1);
        est.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
    }
    return est;
}

}  // namespace hetlab
