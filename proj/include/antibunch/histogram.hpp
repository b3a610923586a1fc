// Cross-correlation histogram of two sorted tag streams.
//
// Lag convention: tau = t_b - t_a; bin k covers
// [-max_lag + k * bin_width, -max_lag + (k+1) * bin_width). Every ordered
// pair with tau in [-max_lag, +max_lag) is counted once, via a sliding
// window over the sorted streams (never all-pairs). Stream a may be scanned
// in parallel segments; per-segment histograms add associatively, so the
// result is identical to the single-threaded scan.

#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "antibunch/errors.hpp"
#include "antibunch/tag_stream.hpp"

namespace antibunch {

struct CorrelationHistogram {
    int64_t bin_width_ps = 1;
    int64_t max_lag_ps = 0;
    std::vector<uint64_t> counts;
    uint64_t n_a = 0;
    uint64_t n_b = 0;
    uint64_t duration_ps = 0;

    size_t n_bins() const { return counts.size(); }
    int64_t bin_lo_ps(size_t k) const {
        return -max_lag_ps + static_cast<int64_t>(k) * bin_width_ps;
    }
    double bin_center_ps(size_t k) const {
        return double(bin_lo_ps(k)) + 0.5 * double(bin_width_ps);
    }
    uint64_t total_counts() const {
        uint64_t s = 0;
        for (uint64_t c : counts) s += c;
        return s;
    }
};

inline CorrelationHistogram cross_correlate(const TagStream& a, const TagStream& b,
                                            int64_t bin_width_ps, int64_t max_lag_ps,
                                            int threads = 1) {
    if (bin_width_ps < 1) throw parameter_error("cross_correlate: bin_width_ps must be >= 1");
    if (max_lag_ps <= 0) throw parameter_error("cross_correlate: max_lag_ps must be > 0");
    if ((2 * max_lag_ps) % bin_width_ps != 0)
        throw parameter_error("cross_correlate: bin_width_ps must divide 2 * max_lag_ps");
    if (!a.sorted()) throw ordering_error("cross_correlate: stream a is not sorted");
    if (!b.sorted()) throw ordering_error("cross_correlate: stream b is not sorted");
    if (double(a.records.size()) * double(b.records.size()) > 1.8e19)
        throw capacity_error("cross_correlate: pair count could overflow 64-bit bins");

    const size_t n_bins = static_cast<size_t>((2 * max_lag_ps) / bin_width_ps);
    CorrelationHistogram hist;
    hist.bin_width_ps = bin_width_ps;
    hist.max_lag_ps = max_lag_ps;
    hist.counts.assign(n_bins, 0);
    hist.n_a = a.records.size();
    hist.n_b = b.records.size();
    hist.duration_ps = std::max(a.duration_ps, b.duration_ps);
    if (a.records.empty() || b.records.empty()) return hist;

    const auto scan_segment = [&](size_t i_begin, size_t i_end,
                                  std::vector<uint64_t>& bins) {
        const auto& bb = b.records;
        const size_t nb = bb.size();
        // window start for the first a in this segment
        const int64_t first_lo = static_cast<int64_t>(a.records[i_begin].timestamp_ps) -
                                 max_lag_ps;
        size_t lo = std::lower_bound(bb.begin(), bb.end(), first_lo,
                                     [](const TagRecord& r, int64_t t) {
                                         return static_cast<int64_t>(r.timestamp_ps) < t;
                                     }) -
                    bb.begin();
        size_t hi = lo;
        for (size_t i = i_begin; i < i_end; ++i) {
            const int64_t ta = static_cast<int64_t>(a.records[i].timestamp_ps);
            const int64_t t_min = ta - max_lag_ps;
            const int64_t t_max = ta + max_lag_ps;  // exclusive
            while (lo < nb && static_cast<int64_t>(bb[lo].timestamp_ps) < t_min) ++lo;
            if (hi < lo) hi = lo;
            while (hi < nb && static_cast<int64_t>(bb[hi].timestamp_ps) < t_max) ++hi;
            for (size_t j = lo; j < hi; ++j) {
                const int64_t tau = static_cast<int64_t>(bb[j].timestamp_ps) - ta;
                bins[static_cast<size_t>((tau + max_lag_ps) / bin_width_ps)] += 1;
            }
        }
    };

    const size_t na = a.records.size();
    const size_t n_segments =
        std::min<size_t>(std::max(threads, 1), std::max<size_t>(na / 4096, 1));
    if (n_segments <= 1) {
        scan_segment(0, na, hist.counts);
        return hist;
    }
    std::vector<std::vector<uint64_t>> partial(n_segments,
                                               std::vector<uint64_t>(n_bins, 0));
    std::vector<std::thread> pool;
    pool.reserve(n_segments);
    for (size_t s = 0; s < n_segments; ++s) {
        const size_t i_begin = na * s / n_segments;
        const size_t i_end = na * (s + 1) / n_segments;
        pool.emplace_back([&, s, i_begin, i_end]() {
            scan_segment(i_begin, i_end, partial[s]);
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& bins : partial) {
        for (size_t k = 0; k < n_bins; ++k) hist.counts[k] += bins[k];
    }
    return hist;
}

}  // namespace antibunch
