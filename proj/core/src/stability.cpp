#include "hetlab/stability.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "hetlab/coupled_sim.hpp"
#include "hetlab/errors.hpp"
#include "hetlab/quadrature.hpp"

namespace hetlab {

namespace {

constexpr double kQuadTol = 1e-9;
constexpr double kQuadRange = 50.0;
constexpr std::size_t kClosedFormShards = 64;

struct Accum {
    double sum = 0.0;
    double sum2 = 0.0;
    std::size_t n = 0;
    std::size_t skipped = 0;

    void add(double v) {
        if (!std::isfinite(v)) {
            ++skipped;
            return;
        }
        sum += v;
        sum2 += v * v;
        ++n;
    }
    void merge(const Accum& o) {
        sum += o.sum;
        sum2 += o.sum2;
        n += o.n;
        skipped += o.skipped;
    }
    double mean() const { return sum / static_cast<double>(n); }
    double stderr_() const {
        if (n < 2) return 0.0;
        const double var =
            (sum2 - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1);
        return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
    }
};

double egarch_closed_sample(const EgarchParams& m, double eps) {
    return std::log(std::abs(m.beta - 0.5 * (m.gamma * std::abs(eps) + m.delta * eps)));
}

}  // namespace

const char* to_string(LambdaMethod m) {
    switch (m) {
        case LambdaMethod::ClosedFormMc: return "closed_form_mc";
        case LambdaMethod::ErgodicMc: return "ergodic_mc";
        case LambdaMethod::Quadrature: return "quadrature";
    }
    return "?";
}

const char* to_string(InvVerdict v) {
    switch (v) {
        case InvVerdict::LocallyInvertible: return "locally_invertible";
        case InvVerdict::LocallyNoninvertible: return "locally_noninvertible";
        case InvVerdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

InvVerdict verdict_from(double value, double stderr_) {
    if (value + 4.0 * stderr_ < 0.0) return InvVerdict::LocallyInvertible;
    if (value - 4.0 * stderr_ > 0.0) return InvVerdict::LocallyNoninvertible;
    return InvVerdict::Indeterminate;
}

LambdaEstimate lambda_egarch_closed(const EgarchParams& model,
                                    const InnovationDist& dist, std::size_t n,
                                    std::uint64_t seed, unsigned threads) {
    validate(ModelSpec{model});
    const std::size_t shards = n >= kClosedFormShards ? kClosedFormShards : 1;
    std::vector<Accum> acc(shards);

    auto run_shard = [&](std::size_t s) {
        Rng rng = Rng::substream(seed, s);
        const std::size_t lo = n * s / shards, hi = n * (s + 1) / shards;
        for (std::size_t i = lo; i < hi; ++i)
            acc[s].add(egarch_closed_sample(model, dist.sample(rng)));
    };

    if (threads <= 1) {
        for (std::size_t s = 0; s < shards; ++s) run_shard(s);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t s; (s = next.fetch_add(1)) < shards;) run_shard(s);
            });
        for (auto& t : pool) t.join();
    }

    Accum total;
    for (const auto& a : acc) total.merge(a);  // fixed shard order

    LambdaEstimate est;
    est.method = LambdaMethod::ClosedFormMc;
    est.n_samples = total.n;
    est.skipped = total.skipped;
    est.value = total.mean();
    est.stderr_ = total.stderr_();
    est.verdict = verdict_from(est.value, est.stderr_);
    return est;
}

LambdaEstimate lambda_ergodic(const ModelSpec& model, const InnovationDist& dist,
                              std::size_t path_len, std::size_t burn_in,
                              std::uint64_t seed) {
    validate(model);
    SimConfig cfg;
    cfg.model = model;
    cfg.dist = dist;
    cfg.n_steps = path_len;
    cfg.burn_in = burn_in;
    cfg.seed = seed;
    const TruePath path = simulate_true_path(cfg);
    if (path.diverged)
        throw NumericError("lambda_ergodic: true volatility path diverged");

    std::vector<double> samples;
    samples.reserve(path.points.size());
    std::size_t skipped = 0;
    for (const auto& p : path.points) {
        const double v = std::log(std::abs(dH_dx(model, p.y, p.sigma2)));
        if (std::isfinite(v)) samples.push_back(v);
        else ++skipped;
    }
    if (samples.size() < 4)
        throw NumericError("lambda_ergodic: not enough usable samples");

    const std::size_t n = samples.size();
    const std::size_t nb = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    const std::size_t m = n / nb;
    const std::size_t used = nb * m;

    double mean = 0.0;
    for (std::size_t i = 0; i < used; ++i) mean += samples[i];
    mean /= static_cast<double>(used);

    double bvar = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        double bm = 0.0;
        for (std::size_t i = b * m; i < (b + 1) * m; ++i) bm += samples[i];
        bm /= static_cast<double>(m);
        bvar += (bm - mean) * (bm - mean);
    }
    bvar /= static_cast<double>(nb - 1);

    LambdaEstimate est;
    est.method = LambdaMethod::ErgodicMc;
    est.n_samples = used;
    est.skipped = skipped;
    est.value = mean;
    est.stderr_ = std::sqrt(bvar / static_cast<double>(nb));
    est.verdict = verdict_from(est.value, est.stderr_);
    return est;
}

std::optional<LambdaEstimate> lambda_quadrature(const ModelSpec& model,
                                                const InnovationDist& dist) {
    validate(model);
    LambdaEstimate est;
    est.method = LambdaMethod::Quadrature;

    if (is_garch11(model)) {
        const auto& g = std::get<GarchParams>(model);
        const double b1 = g.betas.empty() ? 0.0 : g.betas[0];
        est.value = std::log(b1);  // -inf for beta_1 = 0 is the honest answer
        est.verdict = verdict_from(est.value, 0.0);
        return est;
    }
    if (!dist.has_density()) return std::nullopt;

    if (const auto* e = std::get_if<EgarchParams>(&model)) {
        // E log|beta - (gamma|x| + delta x)/2|; the argument vanishes at
        // x = 2 beta / (gamma + delta) and x = -2 beta / (gamma - delta).
        std::vector<double> splits{0.0};
        if (e->gamma + e->delta > 0.0) splits.push_back(2.0 * e->beta / (e->gamma + e->delta));
        if (e->gamma - e->delta > 0.0) splits.push_back(-2.0 * e->beta / (e->gamma - e->delta));
        const auto f = [&](double x) {
            const double w = e->beta - 0.5 * (e->gamma * std::abs(x) + e->delta * x);
            return std::log(std::abs(w)) * dist.density(x);
        };
        est.value = adaptive_simpson_split(f, -kQuadRange, kQuadRange, splits, kQuadTol);
        est.verdict = verdict_from(est.value, 0.0);
        return est;
    }

    const auto& v = std::get<VgarchParams>(model);
    if (v.beta != 0.0) return std::nullopt;
    // With beta = 0 the stationary volatility is alpha + gamma (eps' - delta)^2
    // for an independent draw eps', so the expectation splits into two
    // one-dimensional integrals:
    //   E log|gamma x (x - delta)| - E log(alpha + gamma (x - delta)^2).
    const auto num = [&](double x) {
        return std::log(std::abs(v.gamma * x * (x - v.delta))) * dist.density(x);
    };
    const auto den = [&](double x) {
        const double r = x - v.delta;
        return std::log(v.alpha + v.gamma * r * r) * dist.density(x);
    };
    const double a = adaptive_simpson_split(num, -kQuadRange, kQuadRange,
                                            {0.0, v.delta}, kQuadTol);
    const double b = adaptive_simpson_split(den, -kQuadRange, kQuadRange,
                                            {v.delta}, kQuadTol);
    est.value = a - b;
    est.verdict = verdict_from(est.value, 0.0);
    return est;
}

Classification classify(const ModelSpec& model, const InnovationDist& dist,
                        std::size_t budget, std::uint64_t seed) {
    Classification out;
    out.stationary = check_stationarity(model, dist,
                                        std::min<std::size_t>(budget, 1000000),
                                        splitmix64(seed))
                         .verdict;

    if (std::holds_alternative<GarchParams>(model) && !is_garch11(model))
        throw ConfigError("classify supports GARCH only for p = q = 1");

    if (is_garch11(model)) {
        out.lambda = *lambda_quadrature(model, dist);
    } else if (const auto* e = std::get_if<EgarchParams>(&model)) {
        out.lambda = lambda_egarch_closed(*e, dist, budget, seed);
    } else {
        out.lambda = lambda_ergodic(model, dist, budget, 10000, seed);
    }

    switch (out.lambda.verdict) {
        case InvVerdict::LocallyInvertible: out.prediction = "invertible"; break;
        case InvVerdict::LocallyNoninvertible: out.prediction = "properly_noninvertible"; break;
        case InvVerdict::Indeterminate: out.prediction = "indeterminate"; break;
    }
    return out;
}

}  // namespace hetlab
