// Histogram-level observables: normalized g2(tau), the coincidence-to-
// accidental ratio, and singles rates.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "antibunch/errors.hpp"
#include "antibunch/histogram.hpp"
#include "antibunch/tag_stream.hpp"

namespace antibunch {

struct G2Curve {
    std::vector<int64_t> lags_ps;    ///< bin centers
    std::vector<double> g2;          ///< counts / baseline
    std::vector<double> stderr_g2;   ///< sqrt(counts) / baseline
    std::vector<uint64_t> counts;    ///< raw bin counts, kept for weighting
    double baseline = 0.0;           ///< estimated Gamma_2(infinity), counts per bin
};

/// Normalize by the mean far-lag level: baseline over |tau| > bg_exclusion.
inline G2Curve normalize_g2(const CorrelationHistogram& hist, int64_t bg_exclusion_ps) {
    if (bg_exclusion_ps < 0 || bg_exclusion_ps >= hist.max_lag_ps)
        throw parameter_error("normalize_g2: need 0 <= bg_exclusion < max_lag");
    uint64_t bg_sum = 0;
    size_t bg_bins = 0;
    for (size_t k = 0; k < hist.n_bins(); ++k) {
        if (std::abs(hist.bin_center_ps(k)) > double(bg_exclusion_ps)) {
            bg_sum += hist.counts[k];
            ++bg_bins;
        }
    }
    if (bg_bins == 0)
        throw parameter_error("normalize_g2: empty background region");
    const double baseline = double(bg_sum) / double(bg_bins);
    if (baseline <= 0.0)
        throw undefined_statistic_error("normalize_g2: zero background, g2 undefined");

    G2Curve curve;
    curve.baseline = baseline;
    const size_t n = hist.n_bins();
    curve.lags_ps.resize(n);
    curve.g2.resize(n);
    curve.stderr_g2.resize(n);
    curve.counts = hist.counts;
    for (size_t k = 0; k < n; ++k) {
        curve.lags_ps[k] = hist.bin_lo_ps(k) + hist.bin_width_ps / 2;
        curve.g2[k] = double(hist.counts[k]) / baseline;
        curve.stderr_g2[k] = std::sqrt(double(hist.counts[k])) / baseline;
    }
    return curve;
}

struct CarResult {
    double value = 0.0;
    bool infinite_background = false;  ///< background was empty of counts
};

/// Peak (max-count bin) region average over flat-background average. The
/// peak is located, not assumed at tau = 0, so fixed offsets are tolerated.
inline CarResult car(const CorrelationHistogram& hist, int64_t peak_halfwidth_ps,
                     int64_t bg_exclusion_ps) {
    if (!(peak_halfwidth_ps > 0 && peak_halfwidth_ps < bg_exclusion_ps &&
          bg_exclusion_ps < hist.max_lag_ps))
        throw parameter_error("car: need 0 < peak_halfwidth < bg_exclusion < max_lag");

    size_t peak_bin = 0;
    for (size_t k = 1; k < hist.n_bins(); ++k) {
        if (hist.counts[k] > hist.counts[peak_bin]) peak_bin = k;
    }
    const double tau_peak = hist.bin_center_ps(peak_bin);

    uint64_t peak_sum = 0, bg_sum = 0;
    size_t peak_bins = 0, bg_bins = 0;
    for (size_t k = 0; k < hist.n_bins(); ++k) {
        const double d = std::abs(hist.bin_center_ps(k) - tau_peak);
        if (d <= double(peak_halfwidth_ps)) {
            peak_sum += hist.counts[k];
            ++peak_bins;
        } else if (d > double(bg_exclusion_ps)) {
            bg_sum += hist.counts[k];
            ++bg_bins;
        }
    }
    if (bg_bins == 0) throw parameter_error("car: empty background region");
    if (bg_sum == 0) {
        return {std::numeric_limits<double>::infinity(), true};
    }
    const double peak_avg = double(peak_sum) / double(peak_bins);
    const double bg_avg = double(bg_sum) / double(bg_bins);
    return {peak_avg / bg_avg, false};
}

/// Event count per channel divided by the stream duration.
inline std::map<uint32_t, double> singles_rates(const TagStream& stream) {
    if (stream.duration_ps == 0)
        throw parameter_error("singles_rates: zero duration");
    std::map<uint32_t, double> rates;
    for (const auto& r : stream.records) rates[r.channel] += 1.0;
    const double duration_s = double(stream.duration_ps) * 1e-12;
    for (auto& [ch, n] : rates) n /= duration_s;
    return rates;
}

}  // namespace antibunch
