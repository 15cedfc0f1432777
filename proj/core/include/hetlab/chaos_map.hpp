#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hetlab/coupled_sim.hpp"

namespace hetlab {

enum class MapVariant {
    Literal,  // f(x) = alpha + beta x + gamma exp(-x/2)
    Derived,  // f(x) = beta x + gamma (exp(-x/2) - 1); fixed point at 0
};

// Scalar map obtained from EGARCH with +-1 innovations and delta = 0.
struct ScalarMapSpec {
    double alpha = 0.0;
    double beta = 0.5;
    double gamma = 1.0;
    MapVariant variant = MapVariant::Derived;
};

void validate(const ScalarMapSpec& map);

inline double map_eval(const ScalarMapSpec& m, double x) {
    if (m.variant == MapVariant::Derived)
        return egarch_diff_step(m.beta, m.gamma, x);  // bitwise-shared with coupled_sim
    return m.alpha + m.beta * x + m.gamma * std::exp(-0.5 * x);
}

struct Orbit {
    std::vector<double> x;  // x0, f(x0), ..., f^n(x0)
    bool overflowed = false;
};

Orbit iterate(const ScalarMapSpec& map, double x0, std::size_t n);

struct FixedPoint {
    double x_star = 0.0;
    double derivative = 0.0;  // f'(x*) = beta - (gamma/2) exp(-x*/2)
    bool stable = false;      // |f'(x*)| < 1
};

// The unique fixed point, by bisection to 1e-12 (f(x) - x is strictly
// decreasing for beta < 1).
FixedPoint fixed_point(const ScalarMapSpec& map);

constexpr std::size_t kMaxDetectedPeriod = 64;
constexpr double kPeriodTol = 1e-8;

// Minimal period p <= 64 with |x_{t+p} - x_t| < tol across the window,
// or 0 for "aperiodic".
std::size_t detect_period(std::span<const double> window, double tol = kPeriodTol);

struct BifurcationCell {
    double gamma = 0.0;
    std::vector<double> samples;    // attractor samples (post transient)
    std::size_t detected_period = 0;  // 0 = aperiodic
    bool diverged = false;
};

struct BifurcationScan {
    std::vector<BifurcationCell> cells;  // ordered by gamma
};

// For each gamma in [gamma_min, gamma_max] (steps cells, ascending):
// transient iterations from x0, then `keep` recorded points with period
// detection. Cells are independent and pure; `threads` only changes
// who computes them, not the result.
BifurcationScan bifurcation_scan(MapVariant variant, double alpha, double beta,
                                 double gamma_min, double gamma_max,
                                 std::size_t steps, double x0,
                                 std::size_t transient = 10000,
                                 std::size_t keep = 512, unsigned threads = 1);

// Schema: gamma,sample_index,x,detected_period
void write_bifurcation_csv(std::ostream& os, const BifurcationScan& scan);

}  // namespace hetlab
