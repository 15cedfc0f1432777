#include <doctest.h>

#include <cmath>
#include <string>

#include "hetlab/errors.hpp"
#include "hetlab/models.hpp"
#include "hetlab/rng.hpp"

using namespace hetlab;

namespace {

std::string message_of(const ModelSpec& m) {
    try {
        validate(m);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("validation names the violated constraint") {
    CHECK(message_of(EgarchParams{0.1, 1.5, 1.0, 0.0}).find("beta") != std::string::npos);
    CHECK(message_of(EgarchParams{0.1, 0.5, 0.2, 0.5}).find("gamma") != std::string::npos);
    CHECK(message_of(VgarchParams{-0.1, 0.5, 1.0, 0.0}).find("alpha") != std::string::npos);
    CHECK(message_of(GarchParams{0.1, {-0.2}, {0.5}}).find("alpha") != std::string::npos);
    CHECK_NOTHROW(validate(ModelSpec{EgarchParams{0.1, 0.25, 5.4, 0.0}}));
    CHECK_NOTHROW(validate(ModelSpec{VgarchParams{0.001, 0.01, 1.0, -0.3}}));
    CHECK_NOTHROW(validate(ModelSpec{GarchParams{0.05, {0.1}, {0.8}}}));
}

TEST_CASE("one-step recursions match hand-computed values") {
    const ModelSpec g{GarchParams{0.05, {0.1}, {0.8}}};
    // y_prev^2 = sigma2_prev * eps^2 with eps = 0.5, sigma2_prev = 2
    CHECK(update_true(g, 0.5, 2.0) == doctest::Approx(0.05 + 0.1 * 2.0 * 0.25 + 0.8 * 2.0));

    const ModelSpec e{EgarchParams{0.1, 0.25, 0.3, 0.1}};
    const double x = 1.7, eps = -0.9;
    const double expect_e =
        std::exp(0.1 + 0.3 * std::abs(eps) + 0.1 * eps + 0.25 * std::log(x));
    CHECK(update_true(e, eps, x) == doctest::Approx(expect_e));
    // update_filter forms the residual y / sigma_hat internally
    const double y = 0.4;
    const double resid = y / std::sqrt(x);
    const double expect_f =
        std::exp(0.1 + 0.3 * std::abs(resid) + 0.1 * resid + 0.25 * std::log(x));
    CHECK(update_filter(e, y, x) == doctest::Approx(expect_f));

    const ModelSpec v{VgarchParams{0.001, 0.01, 1.0, -0.3}};
    const double rv = eps - (-0.3);
    CHECK(update_true(v, eps, x) == doctest::Approx(0.001 + rv * rv + 0.01 * x));
}

TEST_CASE("dH_dx matches central finite differences") {
    Rng rng(2024);
    auto check_family = [&](const ModelSpec& proto) {
        for (int k = 0; k < 200; ++k) {
            const double y = 2.0 * rng.uniform() - 1.0;
            const double x = 0.2 + 2.0 * rng.uniform();
            const double h = 1e-6 * x;
            const double num =
                (update_filter(proto, y, x + h) - update_filter(proto, y, x - h)) /
                (2.0 * h);
            const double ana = dH_dx(proto, y, x);
            const double scale = std::max(std::abs(num), 1e-8);
            CHECK(std::abs(num - ana) / scale < 1e-5);
        }
    };
    check_family(GarchParams{0.05, {0.1}, {0.8}});
    check_family(EgarchParams{0.1, 0.25, 0.3, 0.1});
    check_family(VgarchParams{0.5, 0.3, 0.8, -0.3});
}

TEST_CASE("garch(1,1) filter derivative is the constant beta1") {
    const ModelSpec g{GarchParams{0.05, {0.1}, {0.8}}};
    CHECK(dH_dx(g, 0.7, 1.3) == 0.8);
    CHECK(dH_dx(g, -2.0, 0.1) == 0.8);
}

TEST_CASE("stationarity checks") {
    const auto normal = InnovationDist::standard_normal();
    const auto ok = check_stationarity(GarchParams{0.05, {0.1}, {0.8}}, normal,
                                       200000, 1);
    CHECK(ok.verdict == Verdict3::Satisfied);
    // alpha1 + beta1 > 1 but E log(alpha1 eps^2 + beta1) can still be
    // negative; pick a clearly explosive case instead.
    const auto bad = check_stationarity(GarchParams{0.05, {1.2}, {0.9}}, normal,
                                        200000, 1);
    CHECK(bad.verdict == Verdict3::Violated);
    CHECK(check_stationarity(EgarchParams{0.1, 0.25, 5.4, 0.0}, normal, 10000, 1)
              .verdict == Verdict3::Satisfied);
}
