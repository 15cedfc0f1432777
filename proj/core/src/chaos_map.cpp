#include "hetlab/chaos_map.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hetlab/errors.hpp"
#include "hetlab/parallel.hpp"

namespace hetlab {

namespace {

constexpr double kOrbitOverflow = 1e300;

}  // namespace

void validate(const ScalarMapSpec& map) {
    if (!(map.beta > 0.0 && map.beta < 1.0))
        throw ConfigError("scalar map: beta in (0, 1) required");
    if (!(map.gamma >= 0.0)) throw ConfigError("scalar map: gamma >= 0 required");
}

Orbit iterate(const ScalarMapSpec& map, double x0, std::size_t n) {
    validate(map);
    if (!std::isfinite(x0)) throw NumericError("iterate: x0 must be finite");
    Orbit orbit;
    orbit.x.reserve(n + 1);
    double x = x0;
    orbit.x.push_back(x);
    for (std::size_t t = 0; t < n; ++t) {
        x = map_eval(map, x);
        if (!std::isfinite(x) || std::abs(x) > kOrbitOverflow) {
            orbit.overflowed = true;
            break;
        }
        orbit.x.push_back(x);
    }
    return orbit;
}

FixedPoint fixed_point(const ScalarMapSpec& map) {
    validate(map);
    // g(x) = f(x) - x is strictly decreasing (beta - 1 < 0, exponential
    // part decreasing), so one sign change brackets the root.
    auto g = [&](double x) { return map_eval(map, x) - x; };
    double lo = 0.0, hi = 0.0;
    if (g(0.0) >= 0.0) {
        hi = 1.0;
        while (g(hi) > 0.0) hi *= 2.0;
    } else {
        lo = -1.0;
        while (g(lo) < 0.0) lo *= 2.0;
    }
    if (lo > hi) std::swap(lo, hi);
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    FixedPoint fp;
    fp.x_star = 0.5 * (lo + hi);
    fp.derivative = map.beta - 0.5 * map.gamma * std::exp(-0.5 * fp.x_star);
    fp.stable = std::abs(fp.derivative) < 1.0;
    return fp;
}

std::size_t detect_period(std::span<const double> window, double tol) {
    for (std::size_t p = 1; p <= kMaxDetectedPeriod; ++p) {
        if (window.size() <= p) return 0;
        bool closed = true;
        for (std::size_t i = 0; i + p < window.size(); ++i) {
            if (std::abs(window[i + p] - window[i]) >= tol) {
                closed = false;
                break;
            }
        }
        if (closed) return p;
    }
    return 0;
}

BifurcationScan bifurcation_scan(MapVariant variant, double alpha, double beta,
                                 double gamma_min, double gamma_max,
                                 std::size_t steps, double x0,
                                 std::size_t transient, std::size_t keep,
                                 unsigned threads) {
    if (steps < 1) throw ConfigError("bifurcation: steps >= 1 required");
    if (transient < 1 || keep < 1)
        throw ConfigError("bifurcation: transient >= 1 and keep >= 1 required");
    if (gamma_max < gamma_min) throw ConfigError("bifurcation: gamma_max >= gamma_min required");

    BifurcationScan scan;
    scan.cells.resize(steps);
    const double dg = steps > 1 ? (gamma_max - gamma_min) / static_cast<double>(steps - 1) : 0.0;

    parallel_for_indexed(steps, threads, [&](std::size_t i) {
        BifurcationCell& cell = scan.cells[i];
        cell.gamma = gamma_min + dg * static_cast<double>(i);
        ScalarMapSpec m{alpha, beta, cell.gamma, variant};
        double x = x0;
        for (std::size_t t = 0; t < transient; ++t) {
            x = map_eval(m, x);
            if (!std::isfinite(x) || std::abs(x) > kOrbitOverflow) {
                cell.diverged = true;
                return;
            }
        }
        cell.samples.reserve(keep);
        for (std::size_t t = 0; t < keep; ++t) {
            cell.samples.push_back(x);
            x = map_eval(m, x);
            if (!std::isfinite(x) || std::abs(x) > kOrbitOverflow) {
                cell.diverged = true;
                cell.samples.clear();
                return;
            }
        }
        cell.detected_period = detect_period(cell.samples);
    });
    return scan;
}

void write_bifurcation_csv(std::ostream& os, const BifurcationScan& scan) {
    os << "gamma,sample_index,x,detected_period\n";
    char buf[128];
    for (const auto& cell : scan.cells) {
        if (cell.diverged) {
            std::snprintf(buf, sizeof(buf), "%.17g,0,nan,diverged\n", cell.gamma);
            os << buf;
            continue;
        }
        for (std::size_t i = 0; i < cell.samples.size(); ++i) {
            if (cell.detected_period > 0)
                std::snprintf(buf, sizeof(buf), "%.17g,%zu,%.17g,%zu\n", cell.gamma, i,
                              cell.samples[i], cell.detected_period);
            else
                std::snprintf(buf, sizeof(buf), "%.17g,%zu,%.17g,aperiodic\n",
                              cell.gamma, i, cell.samples[i]);
            os << buf;
        }
    }
}

}  // namespace hetlab
