#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "hetlab/config.hpp"
#include "hetlab/errors.hpp"
#include "hetlab/quadrature.hpp"
#include "hetlab/rng.hpp"

using namespace hetlab;

TEST_CASE("manifest round-trips through the kv reader") {
    Manifest m;
    m.subcommand = "simulate";
    m.config_body = "[simulate]\nmodel = \"egarch\"\nsteps = 100\n";
    m.outputs = {"/tmp/x.csv"};
    m.wall_seconds = 1.25;
    const std::string path = "/tmp/hetlab_test_manifest.txt";
    write_manifest(path, m);

    const auto kv = read_kv_file(path);
    CHECK(kv.at("simulate.model") == "\"egarch\"");
    CHECK(kv.at("simulate.steps") == "100");
    std::remove(path.c_str());
}

TEST_CASE("kv reader rejects malformed lines") {
    const std::string path = "/tmp/hetlab_test_bad.txt";
    { std::ofstream os(path); os << "no equals sign here\n"; }
    CHECK_THROWS_AS(read_kv_file(path), ConfigError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_kv_file("/nonexistent/nope.txt"), ConfigError);
}

TEST_CASE("adaptive simpson integrates known functions") {
    const double quartic = adaptive_simpson([](double x) { return x * x * x * x; },
                                            0.0, 1.0, 1e-12);
    CHECK(quartic == doctest::Approx(0.2).epsilon(1e-10));
    // integrable log singularity at zero, handled by the split variant
    const double logint = adaptive_simpson_split(
        [](double x) { return std::log(std::abs(x)); }, -1.0, 1.0, {0.0}, 1e-9);
    CHECK(logint == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("substream seeds do not collide trivially") {
    const std::uint64_t a = substream_seed(42, 0);
    const std::uint64_t b = substream_seed(42, 1);
    const std::uint64_t c = substream_seed(43, 0);
    CHECK(a != b);
    CHECK(a != c);
    Rng ra(a), rb(a);
    CHECK(ra.normal() == rb.normal());
}
