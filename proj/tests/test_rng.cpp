#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "antibunch/rng.hpp"

using namespace antibunch;
using Catch::Approx;

TEST_CASE("rng: streams are deterministic and independent") {
    Rng a(42, 0), b(42, 0), c(42, 1);
    bool any_differ = false;
    for (int i = 0; i < 100; ++i) {
        const uint64_t xa = a.next_u64();
        CHECK(xa == b.next_u64());
        any_differ = any_differ || (xa != c.next_u64());
    }
    CHECK(any_differ);
}

TEST_CASE("rng: uniform range and mean") {
    Rng rng(7, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == Approx(0.5).margin(4.0 / std::sqrt(12.0 * n)));
}

TEST_CASE("rng: normal moments") {
    Rng rng(8, 0);
    const int n = 1000000;
    double m1 = 0.0, m2 = 0.0, m4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        m1 += x;
        m2 += x * x;
        m4 += x * x * x * x;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    CHECK(m1 == Approx(0.0).margin(5.0 / std::sqrt(double(n))));
    CHECK(m2 == Approx(1.0).margin(0.01));
    // excess kurtosis of a Gaussian is 0
    CHECK(std::abs(m4 / (m2 * m2) - 3.0) < 0.1);
}

TEST_CASE("rng: poisson mean and variance across both sampling branches") {
    for (double lambda : {3.0, 25.0, 80.0, 400.0}) {
        Rng rng(9, uint64_t(lambda));
        const int n = 200000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double k = double(rng.poisson(lambda));
            sum += k;
            sum_sq += k * k;
        }
        const double mean = sum / n;
        const double var = sum_sq / n - mean * mean;
        CHECK(mean == Approx(lambda).margin(5.0 * std::sqrt(lambda / n)));
        CHECK(var == Approx(lambda).epsilon(0.03));
    }
}

TEST_CASE("rng: geometric skip counts") {
    const double p = 0.01;
    Rng rng(10, 0);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += double(rng.geometric_skips(p));
    const double expected = (1.0 - p) / p;
    CHECK(sum / n == Approx(expected).epsilon(0.02));
    CHECK(rng.geometric_skips(1.0) == 0);
}
