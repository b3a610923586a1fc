#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "antibunch/fock.hpp"

using namespace antibunch;
using Catch::Approx;

namespace {

FockVector squeezed_coherent(complexd alpha, complexd eta, int dim = kDefaultFockDim) {
    return squeeze_apply(eta, coherent_state(alpha, dim));
}

// Closed-form squeezed vacuum: C_{2k} = (-e^{i theta} tanh r)^k sqrt((2k)!) /
// (2^k k! sqrt(cosh r)), independent of the matrix-exponential route.
complexd squeezed_vacuum_coeff(double r, double theta, int k) {
    const complexd factor = -std::polar(std::tanh(r), theta);
    complexd c = 1.0 / std::sqrt(std::cosh(r));
    for (int j = 1; j <= k; ++j) {
        c *= factor * std::sqrt(double(2 * j) * double(2 * j - 1)) / (2.0 * j);
    }
    return c;
}

}  // namespace

TEST_CASE("coherent_state: vacuum at alpha = 0") {
    const FockVector v = coherent_state(0.0, 4);
    REQUIRE(v.dim() == 4);
    CHECK(v.amplitudes[0] == complexd(1.0, 0.0));
    CHECK(v.amplitudes[1] == complexd(0.0, 0.0));
    CHECK(v.amplitudes[2] == complexd(0.0, 0.0));
    CHECK(v.amplitudes[3] == complexd(0.0, 0.0));
}

TEST_CASE("coherent_state: single-photon population matches the Poisson law") {
    const FockVector v = coherent_state(0.1, 8);
    // closed-form Poisson: P_1 = |alpha|^2 e^{-|alpha|^2}
    const double expected = 0.01 * std::exp(-0.01);
    CHECK(std::norm(v.amplitudes[1]) == Approx(expected).epsilon(1e-12));
    CHECK(std::norm(v.amplitudes[1]) == Approx(9.90050e-3).epsilon(1e-5));
}

TEST_CASE("coherent_state: normalization up to the truncation tail") {
    const FockVector v = coherent_state(complexd(0.2, 0.1), 16);
    const double tail = poisson_tail(std::norm(complexd(0.2, 0.1)), 16);
    CHECK(std::abs(v.norm_squared() - (1.0 - tail)) < 1e-12);
}

TEST_CASE("coherent_state: error paths") {
    CHECK_THROWS_AS(coherent_state(0.1, 1), invalid_dimension_error);
    try {
        coherent_state(2.0, 4);  // lambda = 4, heavy tail beyond m = 3
        FAIL("expected truncation_error");
    } catch (const truncation_error& e) {
        CHECK(e.tail_mass == Approx(poisson_tail(4.0, 4)).epsilon(1e-12));
        CHECK(e.tail_mass > 0.5);
    }
}

TEST_CASE("g2_of_state: Poissonian light has g2 = 1") {
    CHECK(g2_of_state(coherent_state(0.2, 16)) == Approx(1.0).margin(1e-6));
    CHECK(g2_of_state(coherent_state(0.3, 20)) == Approx(1.0).margin(1e-6));
}

TEST_CASE("g2_of_state: single photon gives exactly zero") {
    FockVector one;
    one.amplitudes = {0.0, 1.0, 0.0, 0.0};
    CHECK(g2_of_state(one) == 0.0);
}

TEST_CASE("g2_of_state: undefined below the photon-number floor") {
    FockVector vac;
    vac.amplitudes = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(g2_of_state(vac), undefined_statistic_error);
}

TEST_CASE("squeeze_apply: eta = 0 returns the input exactly") {
    const FockVector in = coherent_state(complexd(0.1, 0.05), 12);
    const FockVector out = squeeze_apply(0.0, in);
    REQUIRE(out.dim() == in.dim());
    for (int m = 0; m < in.dim(); ++m) CHECK(out.amplitudes[m] == in.amplitudes[m]);
}

TEST_CASE("squeeze_apply: vacuum input conserves parity exactly") {
    const FockVector out = squeeze_apply(0.1, coherent_state(0.0, 20));
    for (int m = 1; m < 20; m += 2) {
        CHECK(out.amplitudes[m] == complexd(0.0, 0.0));
    }
}

TEST_CASE("squeeze_apply: squeezed vacuum matches the closed form") {
    const double r = 0.1;
    const FockVector out = squeeze_apply(r, coherent_state(0.0, 30));
    for (int k = 0; k <= 6; ++k) {
        const complexd expected = squeezed_vacuum_coeff(r, 0.0, k);
        CHECK(std::abs(out.amplitudes[2 * k] - expected) < 1e-12);
    }
    // and with a complex squeezing parameter
    const complexd eta = std::polar(0.2, 1.1);
    const FockVector out2 = squeeze_apply(eta, coherent_state(0.0, 30));
    for (int k = 0; k <= 5; ++k) {
        const complexd expected = squeezed_vacuum_coeff(0.2, 1.1, k);
        CHECK(std::abs(out2.amplitudes[2 * k] - expected) < 1e-12);
    }
}

TEST_CASE("squeeze_apply: matched input cancels the two-photon amplitude") {
    // eta = 0.01 onto coherent(0.1): perturbatively C2 = (alpha^2 - eta)/sqrt(2) = 0
    const FockVector out = squeezed_coherent(0.1, 0.01, 20);
    CHECK(std::abs(out.amplitudes[2]) < 1e-3 * std::abs(out.amplitudes[1]));
}

TEST_CASE("squeeze_apply: unitarity on the truncated space") {
    const int dims[] = {20, 24, 32};
    const complexd etas[] = {0.3, complexd(0.0, 0.25), complexd(0.2, -0.2), 0.05};
    for (int dim : dims) {
        for (const complexd& eta : etas) {
            const FockVector in = coherent_state(complexd(0.15, -0.1), dim);
            const FockVector out = squeeze_apply(eta, in);
            CHECK(std::abs(out.norm_squared() - in.norm_squared()) < 1e-6);
        }
    }
}

TEST_CASE("squeeze_apply: validity window enforced") {
    CHECK_THROWS_AS(squeeze_apply(0.51, coherent_state(0.0, 20)), parameter_error);
}

TEST_CASE("perturbative_coeffs: reference points") {
    SECTION("cancellation at alpha^2 = eta") {
        const auto c = perturbative_coeffs({0.1, 0.01});
        CHECK(std::abs(c.c2) < 1e-16);
    }
    SECTION("alpha = 0") {
        const auto c = perturbative_coeffs({0.0, 0.02});
        CHECK(c.c1 == complexd(0.0, 0.0));
        CHECK(c.c2.real() == Approx(-0.02 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(std::abs(c.c3) == 0.0);
    }
    SECTION("direct arithmetic") {
        const auto c = perturbative_coeffs({0.1, 0.02});
        CHECK(c.c2.real() == Approx(-7.0711e-3).epsilon(1e-4));
        CHECK(c.c2.real() == Approx((0.01 - 0.02) / std::sqrt(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("perturbative agreement: exact C2/C0 vs expansion on a small grid") {
    // |alpha| <= 0.05, |eta| <= 0.0025, chosen off the cancellation curve
    const double alphas[] = {0.005, 0.015, 0.025, 0.035, 0.045};
    const double etas[] = {0.0005, 0.001, 0.0015, 0.002, 0.0025};
    for (double a : alphas) {
        for (double e : etas) {
            const FockVector s = squeezed_coherent(a, e);
            const complexd exact = s.amplitudes[2] / s.amplitudes[0];
            const complexd pert = perturbative_coeffs({a, e}).c2;
            CHECK(std::abs(exact - pert) < 0.05 * std::abs(pert));
        }
    }
}

TEST_CASE("g2 at the matched point approaches 4|alpha|^2") {
    const complexd alpha = match_alpha(0.01);
    const FockVector s = squeezed_coherent(alpha, 0.01);
    const double g2 = g2_of_state(s);
    const double four_alpha_sq = 4.0 * std::norm(alpha);
    CHECK(g2 == Approx(0.04).epsilon(0.15));
    CHECK(g2 <= 1.2 * four_alpha_sq);
}

TEST_CASE("match_alpha: cancellation condition at eta = 0.01") {
    const complexd alpha = match_alpha(0.01);
    CHECK(std::abs(alpha * alpha - 0.01) <= 1e-4 * 0.01);
    CHECK(std::abs(std::arg(alpha)) < 1e-6);
    CHECK(alpha.real() == Approx(0.1).epsilon(1e-3));
}

TEST_CASE("match_alpha: eta = 0 maps to alpha = 0") {
    CHECK(match_alpha(0.0) == complexd(0.0, 0.0));
}

TEST_CASE("match_alpha: principal square root for complex eta") {
    const complexd eta = std::polar(0.01, std::numbers::pi / 2.0);
    const complexd alpha = match_alpha(eta);
    const complexd expected = std::polar(0.1, std::numbers::pi / 4.0);
    CHECK(std::abs(alpha - expected) < 1e-4);

    // grid-search oracle: no grid point within the validity disc beats the
    // returned root on |C2/C0| by more than numerical noise
    const auto c2mag = [&](complexd a) {
        const FockVector s = squeezed_coherent(a, eta);
        return std::abs(s.amplitudes[2] / s.amplitudes[0]);
    };
    const double root_mag = c2mag(alpha);
    for (int i = -5; i <= 5; ++i) {
        for (int j = -5; j <= 5; ++j) {
            const complexd probe = alpha + complexd(i * 3e-3, j * 3e-3);
            if (std::abs(probe - alpha) < 1e-6) continue;
            CHECK(c2mag(probe) > root_mag);
        }
    }
}

TEST_CASE("match_alpha: phase covariance of the matching condition") {
    const complexd base = match_alpha(0.01);
    for (double theta : {0.4, 1.3, 2.2, -0.9}) {
        const complexd rotated = match_alpha(std::polar(0.01, theta));
        const complexd expected = base * std::polar(1.0, theta / 2.0);
        CHECK(std::abs(rotated - expected) < 1e-8);
    }
}

TEST_CASE("match_alpha: validity window enforced") {
    CHECK_THROWS_AS(match_alpha(0.3), parameter_error);
}

TEST_CASE("cancellation dip is a real minimum of g2") {
    for (double eta : {0.004, 0.01, 0.02}) {
        const complexd alpha = match_alpha(eta);
        const double g2_min = g2_of_state(squeezed_coherent(alpha, eta));
        const double g2_off = g2_of_state(squeezed_coherent(1.5 * alpha, eta));
        CHECK(g2_min <= 1.2 * 4.0 * std::norm(alpha));
        CHECK(g2_min < g2_off);
    }
}
