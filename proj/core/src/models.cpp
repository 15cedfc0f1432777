#include "hetlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hetlab/errors.hpp"

namespace hetlab {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw NumericError(std::string(what) + " is not finite");
}

const GarchParams& garch11(const ModelSpec& model) {
    const auto& g = std::get<GarchParams>(model);
    if (g.alphas.size() > 1 || g.betas.size() > 1)
        throw ConfigError("one-step GARCH operations require p, q <= 1");
    return g;
}

double clamp_log_vol(double z) {
    return std::clamp(z, -kLogVolClamp, kLogVolClamp);
}

}  // namespace

void validate(const ModelSpec& model) {
    if (const auto* g = std::get_if<GarchParams>(&model)) {
        if (!(g->alpha0 > 0.0)) throw ConfigError("garch: alpha0 > 0 required");
        for (double a : g->alphas)
            if (!(a >= 0.0)) throw ConfigError("garch: alpha_i >= 0 required");
        for (double b : g->betas)
            if (!(b >= 0.0)) throw ConfigError("garch: beta_j >= 0 required");
    } else if (const auto* e = std::get_if<EgarchParams>(&model)) {
        if (!(e->beta > 0.0 && e->beta < 1.0))
            throw ConfigError("egarch: beta < 1 (and beta > 0) required");
        if (!(e->gamma >= std::abs(e->delta)))
            throw ConfigError("egarch: gamma >= |delta| required");
    } else if (const auto* v = std::get_if<VgarchParams>(&model)) {
        if (!(v->alpha > 0.0)) throw ConfigError("vgarch: alpha > 0 required");
        if (!(v->beta >= 0.0)) throw ConfigError("vgarch: beta >= 0 required");
        if (!(v->gamma >= 0.0)) throw ConfigError("vgarch: gamma >= 0 required");
    }
}

const char* family_name(const ModelSpec& model) {
    if (std::holds_alternative<GarchParams>(model)) return "garch";
    if (std::holds_alternative<EgarchParams>(model)) return "egarch";
    return "vgarch";
}

bool is_garch11(const ModelSpec& model) {
    const auto* g = std::get_if<GarchParams>(&model);
    return g && g->alphas.size() <= 1 && g->betas.size() <= 1;
}

double update_true(const ModelSpec& model, double eps_prev, double sigma2_prev) {
    require_finite(eps_prev, "eps_prev");
    require_finite(sigma2_prev, "sigma2_prev");
    if (!(sigma2_prev > 0.0)) throw NumericError("sigma2_prev must be positive");

    if (const auto* g = std::get_if<GarchParams>(&model)) {
        const auto& gg = garch11(model);
        const double a1 = gg.alphas.empty() ? 0.0 : gg.alphas[0];
        const double b1 = gg.betas.empty() ? 0.0 : gg.betas[0];
        const double y2 = sigma2_prev * eps_prev * eps_prev;  // y = sigma * eps
        (void)g;
        return gg.alpha0 + a1 * y2 + b1 * sigma2_prev;
    }
    if (const auto* e = std::get_if<EgarchParams>(&model)) {
        const double z = e->alpha + e->gamma * std::abs(eps_prev) +
                         e->delta * eps_prev + e->beta * std::log(sigma2_prev);
        return std::exp(clamp_log_vol(z));
    }
    const auto& v = std::get<VgarchParams>(model);
    const double r = eps_prev - v.delta;
    return v.alpha + v.gamma * r * r + v.beta * sigma2_prev;
}

double update_filter(const ModelSpec& model, double y_prev, double sigma2hat_prev) {
    require_finite(y_prev, "y_prev");
    require_finite(sigma2hat_prev, "sigma2hat_prev");
    if (!(sigma2hat_prev > 0.0)) throw NumericError("sigma2hat_prev must be positive");

    if (std::holds_alternative<GarchParams>(model)) {
        const auto& gg = garch11(model);
        const double a1 = gg.alphas.empty() ? 0.0 : gg.alphas[0];
        const double b1 = gg.betas.empty() ? 0.0 : gg.betas[0];
        return gg.alpha0 + a1 * y_prev * y_prev + b1 * sigma2hat_prev;
    }
    if (const auto* e = std::get_if<EgarchParams>(&model)) {
        // residual eps_hat = y / sigma_hat
        const double resid = y_prev / std::sqrt(sigma2hat_prev);
        const double z = e->alpha + e->beta * std::log(sigma2hat_prev) +
                         e->gamma * std::abs(resid) + e->delta * resid;
        return std::exp(clamp_log_vol(z));
    }
    const auto& v = std::get<VgarchParams>(model);
    const double resid = y_prev / std::sqrt(sigma2hat_prev);
    const double r = resid - v.delta;
    return v.alpha + v.gamma * r * r + v.beta * sigma2hat_prev;
}

double dH_dx(const ModelSpec& model, double y, double x) {
    require_finite(y, "y");
    if (!(x > 0.0)) throw NumericError("dH_dx: x must be positive");

    if (std::holds_alternative<GarchParams>(model)) {
        const auto& gg = garch11(model);
        return gg.betas.empty() ? 0.0 : gg.betas[0];
    }
    if (const auto* e = std::get_if<EgarchParams>(&model)) {
        const double h = update_filter(model, y, x);
        const double w = e->gamma * std::abs(y) + e->delta * y;
        return h * (e->beta / x - 0.5 * w / (x * std::sqrt(x)));
    }
    const auto& v = std::get<VgarchParams>(model);
    const double sx = std::sqrt(x);
    return v.beta - v.gamma * y / (x * sx) * (y / sx - v.delta);
}

const char* to_string(Verdict3 v) {
    switch (v) {
        case Verdict3::Satisfied: return "satisfied";
        case Verdict3::Violated: return "violated";
        case Verdict3::Indeterminate: return "indeterminate";
    }
    return "?";
}

StationarityReport check_stationarity(const ModelSpec& model,
                                      const InnovationDist& dist,
                                      std::size_t n, std::uint64_t seed) {
    StationarityReport rep;
    if (const auto* g = std::get_if<GarchParams>(&model)) {
        if (g->alphas.size() > 1 || g->betas.size() > 1) {
            // Sufficient Jensen check; cannot certify violation.
            const double s = std::accumulate(g->alphas.begin(), g->alphas.end(), 0.0) +
                             std::accumulate(g->betas.begin(), g->betas.end(), 0.0);
            rep.statistic = s;
            rep.verdict = s < 1.0 ? Verdict3::Satisfied : Verdict3::Indeterminate;
            return rep;
        }
        const double a1 = g->alphas.empty() ? 0.0 : g->alphas[0];
        const double b1 = g->betas.empty() ? 0.0 : g->betas[0];
        Rng rng(seed);
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = dist.sample(rng);
            const double v = std::log(a1 * e * e + b1);
            sum += v;
            sum2 += v * v;
        }
        rep.statistic = sum / static_cast<double>(n);
        if (n > 1) {
            const double var = (sum2 - sum * sum / static_cast<double>(n)) /
                               static_cast<double>(n - 1);
            rep.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
        }
        if (rep.statistic + 4.0 * rep.stderr_ < 0.0)
            rep.verdict = Verdict3::Satisfied;
        else if (rep.statistic - 4.0 * rep.stderr_ >= 0.0)
            rep.verdict = Verdict3::Violated;
        else
            rep.verdict = Verdict3::Indeterminate;
        return rep;
    }

    // EGARCH / VGARCH: beta < 1 decides; the log-moment finiteness clause
    // holds for every shipped distribution and is reported as a sanity
    // statistic only.
    double beta;
    if (const auto* e = std::get_if<EgarchParams>(&model)) beta = e->beta;
    else beta = std::get<VgarchParams>(model).beta;

    Rng rng(seed);
    double sum = 0.0;
    const std::size_t m = std::min<std::size_t>(n, 100000);
    for (std::size_t i = 0; i < m; ++i) {
        const double e = dist.sample(rng);
        double v;
        if (const auto* eg = std::get_if<EgarchParams>(&model)) {
            v = std::log(std::abs(eg->alpha + eg->gamma * std::abs(e) + eg->delta * e));
        } else {
            const auto& vg = std::get<VgarchParams>(model);
            const double r = e - vg.delta;
            v = std::log(vg.alpha + vg.gamma * r * r);
        }
        if (std::isfinite(v)) sum += v;
    }
    rep.statistic = m > 0 ? sum / static_cast<double>(m) : 0.0;
    rep.verdict = beta < 1.0 ? Verdict3::Satisfied : Verdict3::Violated;
    return rep;
}

}  // namespace hetlab
