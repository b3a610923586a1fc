#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "antibunch/analysis.hpp"
#include "antibunch/fit.hpp"
#include "antibunch/histogram.hpp"
#include "antibunch/stream_sim.hpp"

using namespace antibunch;
using Catch::Approx;

namespace {

bool identical(const TagStream& a, const TagStream& b) {
    if (a.duration_ps != b.duration_ps || a.records.size() != b.records.size())
        return false;
    for (size_t i = 0; i < a.records.size(); ++i) {
        if (a.records[i].timestamp_ps != b.records[i].timestamp_ps ||
            a.records[i].channel != b.records[i].channel)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("simulate_pairs: silent source gives empty streams") {
    SourceConfig config;
    config.source_kind = SourceKind::pairs;
    config.pair_rate = 0.0;
    config.duration = 1.0;
    auto [s0, s1] = simulate_pairs(config);
    CHECK(s0.records.empty());
    CHECK(s1.records.empty());
    CHECK(s0.duration_ps == 1000000000000ull);
}

TEST_CASE("simulate_pairs: deterministic, sorted, thread-count invariant") {
    SourceConfig config;
    config.source_kind = SourceKind::pairs;
    config.pair_rate = 2e5;
    config.coherence_time = 1e-9;
    config.duration = 5.0;
    config.seed = 123;
    config.detector.jitter_sigma = 50e-12;
    config.detector.dark_rate = 1000.0;
    auto [a0, a1] = simulate_pairs(config);
    auto [b0, b1] = simulate_pairs(config);
    CHECK(identical(a0, b0));
    CHECK(identical(a1, b1));
    auto [c0, c1] = simulate_pairs(config, {4});
    CHECK(identical(a0, c0));
    CHECK(identical(a1, c1));
    CHECK(a0.sorted());
    CHECK(a1.sorted());
}

TEST_CASE("simulate_pairs: dead time holds exactly per channel") {
    SourceConfig config;
    config.source_kind = SourceKind::pairs;
    config.pair_rate = 5e5;
    config.coherence_time = 1e-9;
    config.duration = 1.0;
    config.seed = 9;
    config.detector.dead_time = 2e-6;
    config.detector.dark_rate = 1e4;
    auto [s0, s1] = simulate_pairs(config);
    for (const TagStream* s : {&s0, &s1}) {
        REQUIRE(!s->records.empty());
        for (size_t i = 1; i < s->records.size(); ++i) {
            CHECK(s->records[i].timestamp_ps - s->records[i - 1].timestamp_ps >= 2000000);
        }
    }
}

TEST_CASE("simulate_pairs: narrowband correlation peak at the configured width") {
    // detected cross-coincidence rate = pair_rate / 2 at unit efficiency
    SourceConfig config;
    config.source_kind = SourceKind::pairs;
    config.pair_rate = 2.0 * 62000.0 / 3000.0;  // detected 20.667/s
    config.coherence_time = 5e-9;
    config.duration = 60.0;
    config.seed = 21;
    auto [s0, s1] = simulate_pairs(config);
    const CorrelationHistogram hist = cross_correlate(s0, s1, 30, 30000);

    const double expected = 62000.0 / 3000.0 * config.duration;
    CHECK(std::abs(double(hist.total_counts()) - expected) <= 3.0 * std::sqrt(expected));

    // FWHM of the Gaussian pair delay = coherence time. Uniform-weight
    // witness fit on the raw counts (there is no background to normalize by).
    G2Curve curve;
    curve.baseline = 1.0;
    for (size_t k = 0; k < hist.n_bins(); ++k) {
        curve.lags_ps.push_back(hist.bin_lo_ps(k) + 15);
        curve.g2.push_back(double(hist.counts[k]) + 1.0);
        curve.stderr_g2.push_back(1.0);
        curve.counts.push_back(1);  // equal weights
    }
    const PeakFit fit = fit_gaussian_peak(curve);
    CHECK(fit.fwhm_ps() == Approx(5000.0).epsilon(0.10));
}

TEST_CASE("simulate_pairs: jitter adds in quadrature across the two detectors") {
    SourceConfig config;
    config.source_kind = SourceKind::pairs;
    config.pair_rate = 4000.0;
    config.coherence_time = 1e-12;  // delta-correlated source
    config.duration = 60.0;
    config.seed = 4;
    config.detector.jitter_sigma = 100e-12;
    auto [s0, s1] = simulate_pairs(config);
    const CorrelationHistogram hist = cross_correlate(s0, s1, 10, 5000);
    const G2Curve curve = normalize_g2(hist, 2000);
    const PeakFit fit = fit_gaussian_peak(curve);
    CHECK(fit.sigma_ps == Approx(std::sqrt(2.0) * 100.0).epsilon(0.05));
}

TEST_CASE("simulate_pairs: singles-rate bookkeeping with losses and darks") {
    SourceConfig config;
    config.source_kind = SourceKind::pairs;
    config.pair_rate = 1e5;
    config.coherence_time = 1e-9;
    config.duration = 50.0;
    config.seed = 17;
    config.detector.efficiency = {0.3, 0.6};
    config.detector.dark_rate = 500.0;
    auto [s0, s1] = simulate_pairs(config);
    // per channel: 2 photons/pair, half routed here, efficiency, plus darks
    const double expected0 = config.pair_rate * config.detector.efficiency[0] + 500.0;
    const double expected1 = config.pair_rate * config.detector.efficiency[1] + 500.0;
    const double r0 = double(s0.records.size()) / config.duration;
    const double r1 = double(s1.records.size()) / config.duration;
    CHECK(std::abs(r0 - expected0) <= 3.0 * std::sqrt(expected0 / config.duration));
    CHECK(std::abs(r1 - expected1) <= 3.0 * std::sqrt(expected1 / config.duration));
}

TEST_CASE("simulate_pairs: capacity cap rejects oversized runs up front") {
    SourceConfig config;
    config.source_kind = SourceKind::pairs;
    config.pair_rate = 1e12;
    config.duration = 10.0;
    CHECK_THROWS_AS(simulate_pairs(config), capacity_error);
}

TEST_CASE("simulate_pairs: source-kind mismatch is rejected") {
    SourceConfig config;
    config.source_kind = SourceKind::coherent;
    CHECK_THROWS_AS(simulate_pairs(config), parameter_error);
}
