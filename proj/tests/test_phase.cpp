#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "antibunch/phase.hpp"

using namespace antibunch;
using Catch::Approx;

TEST_CASE("phase_trajectory: zero diffusion gives the zero path") {
    const PhaseTrajectory traj = phase_trajectory(0.0, 1.0, 0.01, 3);
    REQUIRE(traj.phases.size() == traj.times.size());
    for (double phi : traj.phases) CHECK(phi == 0.0);
}

TEST_CASE("phase_trajectory: endpoint variance follows the Wiener law") {
    const double diffusion = 0.7;  // rad^2/s
    const double duration = 1.0;
    const int n_seeds = 10000;
    double sum = 0.0, sum_sq = 0.0;
    for (int seed = 0; seed < n_seeds; ++seed) {
        const PhaseTrajectory traj = phase_trajectory(diffusion, duration, 0.1, seed);
        const double end = traj.phases.back();
        sum += end;
        sum_sq += end * end;
    }
    const double mean = sum / n_seeds;
    const double var = sum_sq / n_seeds - mean * mean;
    CHECK(var == Approx(diffusion * duration).epsilon(0.05));
}

TEST_CASE("phase_trajectory: increments are Gaussian") {
    const double diffusion = 2.0;
    const double dt = 1e-3;
    const PhaseTrajectory traj = phase_trajectory(diffusion, 1000.0, dt, 4);
    REQUIRE(traj.phases.size() >= 1000000);
    double m1 = 0.0, m2 = 0.0, m4 = 0.0;
    const size_t n = traj.phases.size() - 1;
    for (size_t i = 1; i <= n; ++i) {
        const double d = traj.phases[i] - traj.phases[i - 1];
        m1 += d;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m1 /= double(n);
    m2 /= double(n);
    m4 /= double(n);
    CHECK(m2 == Approx(diffusion * dt).epsilon(0.01));
    CHECK(std::abs(m4 / (m2 * m2) - 3.0) < 0.1);  // excess kurtosis
}

TEST_CASE("phase_trajectory: rejects bad arguments") {
    CHECK_THROWS_AS(phase_trajectory(1.0, 1.0, 0.0, 1), parameter_error);
    CHECK_THROWS_AS(phase_trajectory(1.0, -1.0, 0.1, 1), parameter_error);
    CHECK_THROWS_AS(phase_trajectory(-1.0, 1.0, 0.1, 1), parameter_error);
}

TEST_CASE("brownian bridge: marginals match the conditioned Wiener law") {
    // bridge from (0, 0) to (1, 2) with diffusion 1: at t the mean is 2t and
    // standard Brownian-bridge variance t(1-t)
    const int n_seeds = 20000;
    const double t = 0.3;
    double sum = 0.0, sum_sq = 0.0;
    for (int seed = 0; seed < n_seeds; ++seed) {
        Rng rng(seed, 5);
        detail::BrownianBridge bridge(1.0, 0.0, 0.0, 1.0, 2.0);
        const double x = bridge.sample_at(t, rng);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n_seeds;
    const double var = sum_sq / n_seeds - mean * mean;
    CHECK(mean == Approx(2.0 * t).margin(0.02));
    CHECK(var == Approx(t * (1.0 - t)).epsilon(0.05));
}
