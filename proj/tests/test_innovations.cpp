#include <doctest.h>

#include <cmath>

#include "hetlab/errors.hpp"
#include "hetlab/innovations.hpp"
#include "hetlab/quadrature.hpp"

using namespace hetlab;

namespace {
constexpr double kEulerGamma = 0.57721566490153286;
}

TEST_CASE("densities integrate to one") {
    for (const auto& dist : {InnovationDist::standard_normal(),
                             InnovationDist::default_exp_mixture(),
                             InnovationDist::exp_mixture_standardized(0.2, 1.0, 4.0)}) {
        const double mass = adaptive_simpson_split(
            [&](double x) { return dist.density(x); }, -50.0, 50.0, {0.0}, 1e-10);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("mixture has mean zero and unit variance") {
    const auto dist = InnovationDist::default_exp_mixture();
    double m1 = adaptive_simpson_split(
        [&](double x) { return x * dist.density(x); }, -50.0, 50.0, {0.0}, 1e-10);
    double m2 = adaptive_simpson_split(
        [&](double x) { return x * x * dist.density(x); }, -50.0, 50.0, {0.0}, 1e-10);
    CHECK(std::abs(m1) < 1e-8);
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-7));

    const auto samples = sample(dist, std::uint64_t{11}, 400000);
    double s = 0.0, s2 = 0.0;
    for (double x : samples) { s += x; s2 += x * x; }
    const double n = static_cast<double>(samples.size());
    CHECK(std::abs(s / n) < 0.01);
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("E log|eps| for the standard normal") {
    // E log|N(0,1)| = -(euler_gamma + log 2) / 2.
    const double exact = -(kEulerGamma + std::log(2.0)) / 2.0;
    const auto dist = InnovationDist::standard_normal();
    const double quad = adaptive_simpson_split(
        [&](double x) { return std::log(std::abs(x)) * dist.density(x); }, -50.0,
        50.0, {0.0}, 1e-10);
    CHECK(quad == doctest::Approx(exact).epsilon(1e-7));

    const auto mc = log_moment_check(dist, 0.0, 500000, 5);
    CHECK(std::abs(mc.value - exact) < 4.0 * mc.stderr_);
}

TEST_CASE("rademacher has no density and samples are +-1") {
    const auto dist = InnovationDist::rademacher();
    CHECK(!dist.has_density());
    CHECK_THROWS_AS(dist.density(0.5), ConfigError);
    const auto xs = sample(dist, std::uint64_t{3}, 1000);
    bool saw_pos = false, saw_neg = false;
    for (double x : xs) {
        CHECK(std::abs(std::abs(x) - 1.0) == 0.0);
        (x > 0 ? saw_pos : saw_neg) = true;
    }
    CHECK(saw_pos);
    CHECK(saw_neg);
}

TEST_CASE("parse_dist accepts the documented names") {
    CHECK(parse_dist("normal").kind == DistKind::StandardNormal);
    CHECK(parse_dist("exp_mixture").kind == DistKind::ExpMixture);
    CHECK(parse_dist("rademacher").kind == DistKind::Rademacher);
    CHECK_THROWS_AS(parse_dist("cauchy"), ConfigError);
}

TEST_CASE("sampling is reproducible per seed") {
    const auto dist = InnovationDist::default_exp_mixture();
    const auto a = sample(dist, std::uint64_t{99}, 512);
    const auto b = sample(dist, std::uint64_t{99}, 512);
    const auto c = sample(dist, std::uint64_t{100}, 512);
    CHECK(a == b);
    CHECK(a != c);
}
