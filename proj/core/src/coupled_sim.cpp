#include "hetlab/coupled_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "hetlab/errors.hpp"

namespace hetlab {

namespace {

bool quick_stationarity_warning(const ModelSpec& model) {
    if (const auto* g = std::get_if<GarchParams>(&model)) {
        const double s = std::accumulate(g->alphas.begin(), g->alphas.end(), 0.0) +
                         std::accumulate(g->betas.begin(), g->betas.end(), 0.0);
        return s >= 1.0;
    }
    if (const auto* e = std::get_if<EgarchParams>(&model)) return e->beta >= 1.0;
    return std::get<VgarchParams>(model).beta >= 1.0;
}

std::vector<double> draw_innovations(const SimConfig& c, std::size_t n) {
    Rng rng(c.seed);
    return sample(c.dist, rng, n);
}

// True process over absolute steps 0 .. total-1 (burn-in included),
// started from sigma2 = 1. y[t] = sigma_t * eps_t.
struct RawTruePath {
    std::vector<double> sigma2;
    std::vector<double> y;
    bool diverged = false;
    std::size_t diverged_at = 0;  // first clamped step (valid if diverged)
};

RawTruePath raw_true_path(const ModelSpec& model, const std::vector<double>& eps) {
    const std::size_t total = eps.size();
    RawTruePath out;
    out.sigma2.resize(total);
    out.y.resize(total);

    if (const auto* g = std::get_if<GarchParams>(&model)) {
        const std::size_t p = g->alphas.size(), q = g->betas.size();
        double s2 = 1.0;
        for (std::size_t t = 0; t < total; ++t) {
            out.sigma2[t] = s2;
            out.y[t] = std::sqrt(s2) * eps[t];
            double next = g->alpha0;
            for (std::size_t i = 1; i <= p; ++i) {
                const double y = (t + 1 >= i) ? out.y[t + 1 - i] : 0.0;  // y_{t+1-i}
                next += g->alphas[i - 1] * y * y;
            }
            for (std::size_t j = 1; j <= q; ++j) {
                const double s = (t + 1 >= j) ? out.sigma2[t + 1 - j] : 1.0;
                next += g->betas[j - 1] * s;
            }
            s2 = next;
        }
        return out;
    }

    if (const auto* e = std::get_if<EgarchParams>(&model)) {
        double z = 0.0;
        for (std::size_t t = 0; t < total; ++t) {
            if (std::abs(z) >= kLogVolClamp && !out.diverged) {
                out.diverged = true;
                out.diverged_at = t;
            }
            const double zc = std::clamp(z, -kLogVolClamp, kLogVolClamp);
            out.sigma2[t] = std::exp(zc);
            out.y[t] = std::exp(0.5 * zc) * eps[t];
            z = e->alpha + e->gamma * std::abs(eps[t]) + e->delta * eps[t] + e->beta * zc;
        }
        return out;
    }

    const auto& v = std::get<VgarchParams>(model);
    double s2 = 1.0;
    for (std::size_t t = 0; t < total; ++t) {
        out.sigma2[t] = s2;
        out.y[t] = std::sqrt(s2) * eps[t];
        const double r = eps[t] - v.delta;
        s2 = v.alpha + v.gamma * r * r + v.beta * s2;
    }
    return out;
}

double resolve_s2hat0(const SimConfig& c, const RawTruePath& path) {
    if (const auto* k = std::get_if<InitConstant>(&c.init)) {
        if (!(k->s2 > 0.0)) throw ConfigError("init constant s2 must be positive");
        return k->s2;
    }
    if (const auto* o = std::get_if<InitLogOffset>(&c.init))
        return path.sigma2[c.burn_in] * std::exp(o->offset);
    double sum = 0.0;
    for (std::size_t t = c.burn_in; t < path.y.size(); ++t) sum += path.y[t] * path.y[t];
    const double m = sum / static_cast<double>(path.y.size() - c.burn_in);
    if (!(m > 0.0)) throw NumericError("sample-mean initialization produced a non-positive start");
    return m;
}

}  // namespace

void validate(const SimConfig& config) {
    validate(config.model);
    if (config.n_steps < 1) throw ConfigError("n_steps >= 1 required");
    if (config.record_every < 1) throw ConfigError("record_every >= 1 required");
}

TruePath simulate_true_path(const SimConfig& config) {
    validate(config);
    const auto eps = draw_innovations(config, config.burn_in + config.n_steps);
    const auto raw = raw_true_path(config.model, eps);

    TruePath out;
    out.stationarity_warning = quick_stationarity_warning(config.model);
    out.diverged = raw.diverged;
    const std::size_t end = raw.diverged ? std::max(raw.diverged_at, config.burn_in)
                                         : eps.size();
    for (std::size_t t = config.burn_in; t < end; t += config.record_every)
        out.points.push_back({t - config.burn_in, raw.sigma2[t], raw.y[t]});
    return out;
}

std::vector<CoupledState> simulate_coupled(const SimConfig& config) {
    validate(config);
    const auto eps = draw_innovations(config, config.burn_in + config.n_steps);
    const auto raw = raw_true_path(config.model, eps);
    const double s2hat0 = resolve_s2hat0(config, raw);
    const std::size_t total = eps.size();

    std::vector<CoupledState> out;
    out.reserve(config.n_steps / config.record_every + 1);

    const bool egarch = std::holds_alternative<EgarchParams>(config.model);
    const bool garch = std::holds_alternative<GarchParams>(config.model);
    bool diverged = false;
    auto record = [&](std::size_t t, double s2, double s2hat) {
        const std::size_t rel = t - config.burn_in;
        if (rel % config.record_every != 0) return;
        CoupledState st;
        st.t = rel;
        st.sigma2 = s2;
        st.sigma2hat = s2hat;
        if (egarch) {
            st.z = std::log(s2);
            st.d_or_zhat = std::log(s2hat) - std::log(s2);
        } else if (garch) {
            st.z = s2;
            st.d_or_zhat = s2hat - s2;
        } else {
            st.z = s2;
            st.d_or_zhat = s2hat;
        }
        st.diverged = diverged;
        out.push_back(st);
    };

    if (is_garch11(config.model)) {
        // The filter error is exactly linear here; propagating it keeps
        // the per-step decay ratio machine-exact down to denormals. The
        // exact error goes out in d_or_zhat (sigma2hat - sigma2 cancels
        // to zero in double once the error drops below one ulp).
        const auto& g = std::get<GarchParams>(config.model);
        const double b1 = g.betas.empty() ? 0.0 : g.betas[0];
        double diff = s2hat0 - raw.sigma2[config.burn_in];
        for (std::size_t t = config.burn_in; t < total; ++t) {
            const std::size_t rel = t - config.burn_in;
            if (rel % config.record_every == 0) {
                CoupledState st;
                st.t = rel;
                st.sigma2 = raw.sigma2[t];
                st.sigma2hat = raw.sigma2[t] + diff;
                st.z = raw.sigma2[t];
                st.d_or_zhat = diff;
                out.push_back(st);
            }
            diff = b1 * diff;
        }
        return out;
    }

    if (const auto* g = std::get_if<GarchParams>(&config.model)) {
        const std::size_t p = g->alphas.size(), q = g->betas.size();
        // sigma2hat lags below the filter start are all s2hat0
        std::vector<double> hat(total, 0.0);
        double s2hat = s2hat0;
        for (std::size_t t = config.burn_in; t < total; ++t) {
            hat[t] = s2hat;
            record(t, raw.sigma2[t], s2hat);
            double next = g->alpha0;
            for (std::size_t i = 1; i <= p; ++i) {
                const double y = (t + 1 >= i) ? raw.y[t + 1 - i] : 0.0;
                next += g->alphas[i - 1] * y * y;
            }
            for (std::size_t j = 1; j <= q; ++j) {
                const double s = (t + 1 >= j && t + 1 - j >= config.burn_in)
                                     ? hat[t + 1 - j]
                                     : s2hat0;
                next += g->betas[j - 1] * s;
            }
            s2hat = next;
        }
        return out;
    }

    diverged = raw.diverged && raw.diverged_at <= config.burn_in;
    double s2hat = s2hat0;
    double last_s2 = raw.sigma2[config.burn_in], last_s2hat = s2hat0;
    for (std::size_t t = config.burn_in; t < total; ++t) {
        if (!diverged && raw.diverged && t >= raw.diverged_at) diverged = true;
        if (diverged) {
            record(t, last_s2, last_s2hat);
            continue;
        }
        last_s2 = raw.sigma2[t];
        last_s2hat = s2hat;
        record(t, raw.sigma2[t], s2hat);

        if (egarch) {
            const auto& e = std::get<EgarchParams>(config.model);
            const double zhat = std::log(s2hat);
            const double resid = raw.y[t] * std::exp(-0.5 * zhat);
            const double znext =
                e.alpha + e.beta * zhat + e.gamma * std::abs(resid) + e.delta * resid;
            if (std::abs(znext) >= kLogVolClamp) {
                diverged = true;
                s2hat = std::exp(std::clamp(znext, -kLogVolClamp, kLogVolClamp));
                last_s2hat = s2hat;
            } else {
                s2hat = std::exp(znext);
            }
        } else {
            const auto& v = std::get<VgarchParams>(config.model);
            const double resid = raw.y[t] / std::sqrt(s2hat);
            const double r = resid - v.delta;
            s2hat = v.alpha + v.gamma * r * r + v.beta * s2hat;
        }
    }
    return out;
}

std::vector<CoupledState> simulate_coupled_coords(const SimConfig& config) {
    validate(config);
    if (std::holds_alternative<GarchParams>(config.model))
        throw ConfigError("coordinate simulation supports egarch and vgarch only");

    const auto eps = draw_innovations(config, config.burn_in + config.n_steps);
    const std::size_t total = eps.size();
    std::vector<CoupledState> out;
    out.reserve(config.n_steps / config.record_every + 1);

    if (const auto* e = std::get_if<EgarchParams>(&config.model)) {
        double z = 0.0;
        for (std::size_t t = 0; t < config.burn_in; ++t) {
            const double es = e->gamma * std::abs(eps[t]) + e->delta * eps[t];
            z = e->alpha + e->beta * z + es;
        }
        if (const auto* o = std::get_if<InitLogOffset>(&config.init)) {
            double d = o->offset;  // exact: log offsets need no round trip
            for (std::size_t t = config.burn_in; t < total; ++t) {
                if ((t - config.burn_in) % config.record_every == 0) {
                    CoupledState st;
                    st.t = t - config.burn_in;
                    st.z = z;
                    st.d_or_zhat = d;
                    st.sigma2 = std::exp(std::clamp(z, -kLogVolClamp, kLogVolClamp));
                    st.sigma2hat = std::exp(std::clamp(z + d, -kLogVolClamp, kLogVolClamp));
                    st.diverged = std::abs(z) >= kLogVolClamp || std::abs(z + d) >= kLogVolClamp;
                    out.push_back(st);
                }
                const double es = e->gamma * std::abs(eps[t]) + e->delta * eps[t];
                d = egarch_diff_step(e->beta, es, d);
                z = e->alpha + e->beta * z + es;
            }
            return out;
        }
        double s2hat0;
        if (const auto* k = std::get_if<InitConstant>(&config.init)) {
            if (!(k->s2 > 0.0)) throw ConfigError("init constant s2 must be positive");
            s2hat0 = k->s2;
        } else {
            double zz = 0.0, sum = 0.0;
            for (std::size_t t = 0; t < total; ++t) {
                const double es = e->gamma * std::abs(eps[t]) + e->delta * eps[t];
                if (t >= config.burn_in) {
                    const double zc = std::clamp(zz, -kLogVolClamp, kLogVolClamp);
                    sum += std::exp(zc) * eps[t] * eps[t];
                }
                zz = e->alpha + e->beta * zz + es;
            }
            s2hat0 = sum / static_cast<double>(config.n_steps);
        }
        double d = std::log(s2hat0) - z;
        for (std::size_t t = config.burn_in; t < total; ++t) {
            if ((t - config.burn_in) % config.record_every == 0) {
                CoupledState st;
                st.t = t - config.burn_in;
                st.z = z;
                st.d_or_zhat = d;
                st.sigma2 = std::exp(std::clamp(z, -kLogVolClamp, kLogVolClamp));
                st.sigma2hat = std::exp(std::clamp(z + d, -kLogVolClamp, kLogVolClamp));
                st.diverged = std::abs(z) >= kLogVolClamp || std::abs(z + d) >= kLogVolClamp;
                out.push_back(st);
            }
            const double es = e->gamma * std::abs(eps[t]) + e->delta * eps[t];
            d = egarch_diff_step(e->beta, es, d);
            z = e->alpha + e->beta * z + es;
        }
        return out;
    }

    const auto& v = std::get<VgarchParams>(config.model);
    double z = 1.0;
    for (std::size_t t = 0; t < config.burn_in; ++t) {
        const double r = eps[t] - v.delta;
        z = v.alpha + v.gamma * r * r + v.beta * z;
    }
    double zhat;
    if (const auto* k = std::get_if<InitConstant>(&config.init)) {
        if (!(k->s2 > 0.0)) throw ConfigError("init constant s2 must be positive");
        zhat = k->s2;
    } else if (const auto* o = std::get_if<InitLogOffset>(&config.init)) {
        zhat = z * std::exp(o->offset);
    } else {
        double zz = 1.0, sum = 0.0;
        for (std::size_t t = 0; t < total; ++t) {
            if (t >= config.burn_in) sum += zz * eps[t] * eps[t];
            const double r = eps[t] - v.delta;
            zz = v.alpha + v.gamma * r * r + v.beta * zz;
        }
        zhat = sum / static_cast<double>(config.n_steps);
    }
    for (std::size_t t = config.burn_in; t < total; ++t) {
        if ((t - config.burn_in) % config.record_every == 0) {
            CoupledState st;
            st.t = t - config.burn_in;
            st.sigma2 = z;
            st.sigma2hat = zhat;
            st.z = z;
            st.d_or_zhat = zhat;
            out.push_back(st);
        }
        const double r = eps[t] - v.delta;
        const double rhat = eps[t] * std::sqrt(z) / std::sqrt(zhat) - v.delta;
        const double znext = v.alpha + v.gamma * r * r + v.beta * z;
        zhat = v.alpha + v.gamma * rhat * rhat + v.beta * zhat;
        z = znext;
    }
    return out;
}

void write_path_csv(std::ostream& os, const std::vector<CoupledState>& states) {
    os << "t,sigma2,sigma2hat,z,d_or_zhat,diverged\n";
    char buf[160];
    for (const auto& s : states) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%d\n", s.t,
                      s.sigma2, s.sigma2hat, s.z, s.d_or_zhat, s.diverged ? 1 : 0);
        os << buf;
    }
}

}  // namespace hetlab
