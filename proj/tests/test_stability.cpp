#include <doctest.h>

#include <cmath>
#include <string>

#include "hetlab/errors.hpp"
#include "hetlab/stability.hpp"

using namespace hetlab;

TEST_CASE("verdict bands at four standard errors") {
    CHECK(verdict_from(-1.0, 0.1) == InvVerdict::LocallyInvertible);
    CHECK(verdict_from(1.0, 0.1) == InvVerdict::LocallyNoninvertible);
    CHECK(verdict_from(0.1, 0.05) == InvVerdict::Indeterminate);
    CHECK(verdict_from(0.0, 0.0) == InvVerdict::Indeterminate);
    CHECK(verdict_from(-1e-6, 0.0) == InvVerdict::LocallyInvertible);
}

TEST_CASE("rademacher closed form hits the boundary exactly") {
    const EgarchParams model{0.0, 0.5, 3.0, 0.0};
    const auto est = lambda_egarch_closed(model, InnovationDist::rademacher(),
                                          100000, 17);
    // every draw contributes log|0.5 - 1.5| = 0
    CHECK(std::abs(est.value) < 1e-12);
    CHECK(est.verdict == InvVerdict::Indeterminate);
}

TEST_CASE("closed-form MC agrees with quadrature for egarch") {
    const ModelSpec model{EgarchParams{0.1, 0.25, 5.4, 0.0}};
    const auto dist = InnovationDist::standard_normal();
    const auto quad = lambda_quadrature(model, dist);
    REQUIRE(quad.has_value());
    const auto mc = lambda_egarch_closed(std::get<EgarchParams>(model), dist,
                                         2000000, 23, 4);
    CHECK(std::abs(mc.value - quad->value) < 4.0 * mc.stderr_);
    CHECK(quad->value > 0.0);
    CHECK(quad->verdict == InvVerdict::LocallyNoninvertible);
}

TEST_CASE("closed-form MC is invariant to the worker count") {
    const EgarchParams model{0.1, 0.25, 5.4, 0.0};
    const auto dist = InnovationDist::standard_normal();
    const auto a = lambda_egarch_closed(model, dist, 300000, 5, 1);
    const auto b = lambda_egarch_closed(model, dist, 300000, 5, 8);
    CHECK(a.value == b.value);
    CHECK(a.stderr_ == b.stderr_);
    CHECK(a.n_samples == b.n_samples);
}

TEST_CASE("garch(1,1) quadrature route is log beta1") {
    const ModelSpec model{GarchParams{0.05, {0.1}, {0.8}}};
    const auto q = lambda_quadrature(model, InnovationDist::standard_normal());
    REQUIRE(q.has_value());
    CHECK(q->value == doctest::Approx(std::log(0.8)).epsilon(1e-14));
    CHECK(q->verdict == InvVerdict::LocallyInvertible);
}

TEST_CASE("ergodic route agrees with the closed form for egarch") {
    const ModelSpec model{EgarchParams{0.1, 0.25, 0.6, 0.1}};
    const auto dist = InnovationDist::standard_normal();
    const auto erg = lambda_ergodic(model, dist, 400000, 5000, 31);
    const auto cf = lambda_egarch_closed(std::get<EgarchParams>(model), dist,
                                         2000000, 37);
    const double band = 4.0 * std::sqrt(erg.stderr_ * erg.stderr_ +
                                        cf.stderr_ * cf.stderr_);
    CHECK(std::abs(erg.value - cf.value) < band);
}

TEST_CASE("vgarch beta=0 ergodic matches the two-draw quadrature oracle") {
    const ModelSpec model{VgarchParams{0.5, 0.0, 0.8, -0.3}};
    const auto dist = InnovationDist::standard_normal();
    const auto q = lambda_quadrature(model, dist);
    REQUIRE(q.has_value());
    const auto erg = lambda_ergodic(model, dist, 400000, 5000, 41);
    CHECK(std::abs(erg.value - q->value) < 4.0 * erg.stderr_);
}

TEST_CASE("classify rejects general garch and fills the report otherwise") {
    const auto dist = InnovationDist::standard_normal();
    CHECK_THROWS_AS(classify(GarchParams{0.1, {0.1, 0.1}, {0.5}}, dist, 10000, 1),
                    ConfigError);
    const auto inv = classify(GarchParams{0.05, {0.1}, {0.8}}, dist, 100000, 1);
    CHECK(inv.stationary == Verdict3::Satisfied);
    CHECK(std::string(inv.prediction) == "invertible");
    const auto non = classify(EgarchParams{0.1, 0.25, 5.4, 0.0}, dist, 400000, 1);
    CHECK(std::string(non.prediction) == "properly_noninvertible");
}
