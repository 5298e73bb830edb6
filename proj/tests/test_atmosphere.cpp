#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tbw/atmosphere.hpp"

using namespace tbw;

namespace {

DrydenConfig published_gust_config(std::uint64_t seed = 42) {
    DrydenConfig c;
    c.sigma_w = 10.0;
    c.L_w = 100.0;
    c.u1 = 160.0;
    c.dt = 0.01;
    c.seed = seed;
    return c;
}

} // namespace

TEST_CASE("zero intensity keeps the gust identically zero") {
    DrydenConfig c = published_gust_config();
    c.sigma_w = 0.0;
    GustFilter f(c);
    for (int k = 0; k < 1000; ++k) REQUIRE(f.step() == 0.0);
}

TEST_CASE("DC gain equals the analytic filter gain") {
    GustFilter f(published_gust_config());
    CHECK(f.dc_gain() == doctest::Approx(4.460310290).epsilon(1e-9));
    double y = 0.0;
    for (int k = 0; k < 5000; ++k) y = f.step_with_input(1.0);
    CHECK(std::abs(y - 4.4603) < 1e-3);
}

TEST_CASE("identical seeds produce bit-exact gust sequences") {
    GustFilter a(published_gust_config(7));
    GustFilter b(published_gust_config(7));
    for (int k = 0; k < 500; ++k) REQUIRE(a.step() == b.step());
}

TEST_CASE("stationary variance matches the frequency-domain oracle") {
    const double expected = oracle::dryden_variance_quadrature(10.0, 100.0, 160.0, 5000.0, 400000);
    GustFilter f(published_gust_config(123));
    // let the transient die out
    for (int k = 0; k < 10000; ++k) f.step();
    const int n = 1000000;
    double s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = f.step();
        s1 += v;
        s2 += v * v;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(var - expected) / expected < 0.05);
}

TEST_CASE("invalid configurations are rejected") {
    DrydenConfig c = published_gust_config();
    c.L_w = 0.0;
    CHECK_THROWS_AS(GustFilter{c}, NumericalError);
    c = published_gust_config();
    c.dt = -0.01;
    CHECK_THROWS_AS(GustFilter{c}, NumericalError);
}

TEST_CASE("sensor noise is multiplicative") {
    Rng rng(5);
    CHECK(apply_sensor_noise(0.25, 0.0, rng) == 0.25);
    CHECK(apply_sensor_noise(0.0, 0.1, rng) == 0.0);
}

TEST_CASE("sensor noise stays within the fraction band and is unbiased") {
    Rng rng(99);
    const double m = 0.7;
    const int n = 100000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = apply_sensor_noise(m, 0.1, rng);
        REQUIRE(v >= 0.9 * m - 1e-12);
        REQUIRE(v <= 1.1 * m + 1e-12);
        sum += v;
    }
    CHECK(std::abs(sum / n - m) / m < 0.003);
}

TEST_CASE("gust and noise streams are independently seeded") {
    // same master seed for gust; different noise seed must leave gust alone
    const auto run_gust = [](std::uint64_t gust_seed) {
        GustFilter f(published_gust_config(gust_seed));
        std::vector<double> out(256);
        for (double& v : out) v = f.step();
        return out;
    };
    const auto a = run_gust(1001);
    const auto b = run_gust(1001);
    REQUIRE(a == b);

    Rng noise_a(derive_seed(17, Stream::Noise));
    Rng noise_b(derive_seed(18, Stream::Noise));
    // different masters give different noise...
    bool differ = false;
    for (int k = 0; k < 64; ++k) differ |= (noise_a.uniform01() != noise_b.uniform01());
    CHECK(differ);
    // ...while the gust stream derived from either master is untouched by
    // how much noise was drawn
    GustFilter g1(DrydenConfig{10.0, 100.0, 160.0, 0.01, derive_seed(17, Stream::Gust)});
    GustFilter g2(DrydenConfig{10.0, 100.0, 160.0, 0.01, derive_seed(17, Stream::Gust)});
    for (int k = 0; k < 32; ++k) noise_a.normal();
    for (int k = 0; k < 256; ++k) REQUIRE(g1.step() == g2.step());
}
