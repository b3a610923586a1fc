// Monte-Carlo generation of detection-event streams for the four source
// kinds, through a common detector model (efficiency, jitter, dark counts,
// dead time) and a 50:50 split onto two detectors.
//
// Determinism contract: a SourceConfig (seed included) fixes the output
// byte-for-byte, for any thread count. Work is partitioned into chunks with
// a schedule that depends only on the config; chunk c draws from the derived
// stream (seed, kChunkStreamBase + c). Threads only change which core runs a
// chunk, never what it produces. Phase drift across chunk boundaries is
// pre-sampled sequentially, then each chunk fills its interior with a
// Brownian bridge, which reproduces the Wiener law exactly.
//
// Mode-based sources (antibunched, path_entangled) do not loop over the
// (possibly 1e10+) temporal modes. Occupied modes are reached directly by
// geometric jumps under a phase-independent envelope q_env >= 1 - p_0(phi),
// followed by an acceptance draw with the exact per-mode vacuum probability;
// this reproduces the per-mode photon-number law exactly while costing
// O(detected events). The pairs/coherent generators similarly draw the
// post-efficiency (thinned) Poisson processes directly.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "antibunch/fock.hpp"
#include "antibunch/phase.hpp"
#include "antibunch/rng.hpp"
#include "antibunch/source_config.hpp"
#include "antibunch/tag_stream.hpp"

namespace antibunch {

struct SimOptions {
    int threads = 1;
    uint64_t max_events = uint64_t(1) << 28;  ///< cap on expected detected events
};

/// FWHM of a Gaussian = this constant times sigma.
inline constexpr double kFwhmPerSigma = 2.3548200450309493;

/// Truncation used for the per-mode photon-number distribution.
inline constexpr int kModeDim = 8;

namespace detail {

inline int64_t ps_round(double x) { return static_cast<int64_t>(std::floor(x + 0.5)); }

struct ChunkEvents {
    std::vector<uint64_t> channel[2];
};

/// Jitter, bounds check, append. Efficiency thinning happens at the caller
/// (it differs per source kind).
struct Emitter {
    Rng* rng;
    ChunkEvents* out;
    double jitter_sigma_ps;
    int64_t duration_ps;

    void emit(int channel, int64_t t_ps) {
        if (jitter_sigma_ps > 0.0) t_ps += ps_round(rng->normal() * jitter_sigma_ps);
        if (t_ps < 0 || t_ps > duration_ps) return;
        out->channel[channel].push_back(static_cast<uint64_t>(t_ps));
    }
};

/// Dark counts are uniform in time and never jittered (they carry no optical
/// timing); drawn after the photon events of the chunk.
inline void add_dark_counts(Rng& rng, ChunkEvents& out, double dark_rate,
                            uint64_t t0_ps, uint64_t span_ps) {
    if (dark_rate <= 0.0 || span_ps == 0) return;
    const double span_sec = double(span_ps) * 1e-12;
    for (int ch = 0; ch < 2; ++ch) {
        const uint64_t n = rng.poisson(dark_rate * span_sec);
        for (uint64_t i = 0; i < n; ++i) {
            out.channel[ch].push_back(t0_ps + rng.uniform_below(span_ps));
        }
    }
}

template <typename Worker>
void run_chunks(uint64_t n_chunks, int threads, Worker&& worker) {
    threads = std::max(threads, 1);
    if (threads == 1 || n_chunks <= 1) {
        for (uint64_t c = 0; c < n_chunks; ++c) worker(c);
        return;
    }
    std::atomic<uint64_t> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min<uint64_t>(threads, n_chunks);
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) {
        pool.emplace_back([&]() {
            for (uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
                worker(c);
            }
        });
    }
    for (auto& t : pool) t.join();
}

/// Merge chunk outputs in chunk order, sort each channel, apply dead time.
inline std::pair<TagStream, TagStream> assemble_streams(
    std::vector<ChunkEvents>& chunks, uint64_t duration_ps, const DetectorModel& det) {
    const int64_t dead_ps = ps_round(det.dead_time * 1e12);
    std::pair<TagStream, TagStream> result;
    TagStream* streams[2] = {&result.first, &result.second};
    for (int ch = 0; ch < 2; ++ch) {
        size_t total = 0;
        for (const auto& c : chunks) total += c.channel[ch].size();
        std::vector<uint64_t> times;
        times.reserve(total);
        for (auto& c : chunks) {
            times.insert(times.end(), c.channel[ch].begin(), c.channel[ch].end());
            c.channel[ch].clear();
            c.channel[ch].shrink_to_fit();
        }
        std::sort(times.begin(), times.end());

        TagStream& s = *streams[ch];
        s.duration_ps = duration_ps;
        s.records.reserve(times.size());
        int64_t last_kept = 0;
        for (uint64_t t : times) {
            if (dead_ps > 0 && !s.records.empty() &&
                static_cast<int64_t>(t) - last_kept < dead_ps) {
                continue;
            }
            s.records.push_back({t, static_cast<uint32_t>(ch)});
            last_kept = static_cast<int64_t>(t);
        }
    }
    return result;
}

inline void check_capacity(double expected_events, const SimOptions& opts) {
    if (!(expected_events <= double(opts.max_events))) {
        throw capacity_error("simulation would generate ~" +
                             std::to_string(uint64_t(expected_events)) +
                             " events, above the cap of " +
                             std::to_string(opts.max_events));
    }
}

inline uint64_t duration_to_ps(double duration) {
    return static_cast<uint64_t>(ps_round(duration * 1e12));
}

inline double wrap_two_pi(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    return phi;
}

}  // namespace detail

/// SPDC pair source. Pairs arrive as a Poisson process; the two photons of a
/// pair are separated by a Gaussian delay of FWHM = coherence_time and each
/// is routed 50:50 onto the two detectors. The thinned (post-efficiency)
/// processes are drawn directly, which is distribution-identical to thinning
/// each generated photon.
inline std::pair<TagStream, TagStream> simulate_pairs(const SourceConfig& config,
                                                      const SimOptions& opts = {}) {
    if (config.source_kind != SourceKind::pairs)
        throw parameter_error("simulate_pairs: source_kind must be 'pairs'");
    validate_source_config(config);

    const uint64_t duration_ps = detail::duration_to_ps(config.duration);
    const double e0 = config.detector.efficiency[0];
    const double e1 = config.detector.efficiency[1];
    const double p_drop = 1.0 - 0.5 * (e0 + e1);  // per photon: lost entirely
    const double expected = config.pair_rate * config.duration * (e0 + e1) +
                            2.0 * config.detector.dark_rate * config.duration;
    detail::check_capacity(expected, opts);

    const double sigma_pair_ps =
        config.coherence_time * 1e12 / kFwhmPerSigma;  // FWHM = T_c
    const double jitter_ps = config.detector.jitter_sigma * 1e12;

    const uint64_t n_chunks = std::clamp<uint64_t>(
        static_cast<uint64_t>(expected / 4e6) + 1, 1, uint64_t(1) << 16);
    std::vector<detail::ChunkEvents> chunks(n_chunks);

    detail::run_chunks(n_chunks, opts.threads, [&](uint64_t c) {
        Rng rng(config.seed, kChunkStreamBase + c);
        const uint64_t lo = duration_ps / n_chunks * c + std::min(c, duration_ps % n_chunks);
        const uint64_t hi =
            duration_ps / n_chunks * (c + 1) + std::min(c + 1, duration_ps % n_chunks);
        const uint64_t span = hi - lo;
        if (span == 0) return;
        const double span_sec = double(span) * 1e-12;
        const double lam_pairs = config.pair_rate * span_sec;
        detail::Emitter emitter{&rng, &chunks[c], jitter_ps,
                                static_cast<int64_t>(duration_ps)};

        // photon-level survival categories of one pair (Poisson splitting):
        // first photon at the emission time, second offset by the pair delay
        const double pa[2] = {0.5 * e0, 0.5 * e1};
        struct Category {
            int ch_first;   // -1 if the first photon is lost
            int ch_second;  // -1 if the second photon is lost
            double prob;
        };
        const Category categories[8] = {
            {0, 0, pa[0] * pa[0]}, {0, 1, pa[0] * pa[1]},
            {1, 0, pa[1] * pa[0]}, {1, 1, pa[1] * pa[1]},
            {0, -1, pa[0] * p_drop}, {1, -1, pa[1] * p_drop},
            {-1, 0, p_drop * pa[0]}, {-1, 1, p_drop * pa[1]},
        };
        for (const auto& cat : categories) {
            const uint64_t n = rng.poisson(lam_pairs * cat.prob);
            for (uint64_t i = 0; i < n; ++i) {
                const int64_t t_first =
                    static_cast<int64_t>(lo + rng.uniform_below(span));
                if (cat.ch_first >= 0) emitter.emit(cat.ch_first, t_first);
                if (cat.ch_second >= 0) {
                    const int64_t delay = detail::ps_round(rng.normal() * sigma_pair_ps);
                    emitter.emit(cat.ch_second, t_first + delay);
                }
            }
        }
        detail::add_dark_counts(rng, chunks[c], config.detector.dark_rate, lo, span);
    });
    return detail::assemble_streams(chunks, duration_ps, config.detector);
}

/// Attenuated laser: homogeneous Poisson process split 50:50.
inline std::pair<TagStream, TagStream> simulate_coherent(const SourceConfig& config,
                                                         const SimOptions& opts = {}) {
    if (config.source_kind != SourceKind::coherent)
        throw parameter_error("simulate_coherent: source_kind must be 'coherent'");
    validate_source_config(config);

    const uint64_t duration_ps = detail::duration_to_ps(config.duration);
    const double e0 = config.detector.efficiency[0];
    const double e1 = config.detector.efficiency[1];
    const double expected = config.coherent_rate * config.duration * 0.5 * (e0 + e1) +
                            2.0 * config.detector.dark_rate * config.duration;
    detail::check_capacity(expected, opts);
    const double jitter_ps = config.detector.jitter_sigma * 1e12;

    const uint64_t n_chunks = std::clamp<uint64_t>(
        static_cast<uint64_t>(expected / 4e6) + 1, 1, uint64_t(1) << 16);
    std::vector<detail::ChunkEvents> chunks(n_chunks);

    detail::run_chunks(n_chunks, opts.threads, [&](uint64_t c) {
        Rng rng(config.seed, kChunkStreamBase + c);
        const uint64_t lo = duration_ps / n_chunks * c + std::min(c, duration_ps % n_chunks);
        const uint64_t hi =
            duration_ps / n_chunks * (c + 1) + std::min(c + 1, duration_ps % n_chunks);
        const uint64_t span = hi - lo;
        if (span == 0) return;
        const double span_sec = double(span) * 1e-12;
        detail::Emitter emitter{&rng, &chunks[c], jitter_ps,
                                static_cast<int64_t>(duration_ps)};
        for (int ch = 0; ch < 2; ++ch) {
            const double lam =
                config.coherent_rate * span_sec * 0.5 * config.detector.efficiency[ch];
            const uint64_t n = rng.poisson(lam);
            for (uint64_t i = 0; i < n; ++i) {
                emitter.emit(ch, static_cast<int64_t>(lo + rng.uniform_below(span)));
            }
        }
        detail::add_dark_counts(rng, chunks[c], config.detector.dark_rate, lo, span);
    });
    return detail::assemble_streams(chunks, duration_ps, config.detector);
}

namespace detail {

/// Per-mode photon statistics tabulated over the drift phase. Entry i holds
/// the populations of S(|eta| e^{i(phi_i + offset)}) |alpha> for
/// phi_i = 2 pi i / n_grid; the last entry duplicates the first so linear
/// interpolation can wrap.
struct ModeTable {
    int n_grid = 0;
    std::vector<double> p;  // (n_grid + 1) x kModeDim populations
    double q_env = 0.0;     // >= 1 - p0(phi) for all phi (exact for the lerp)
    double max_mean = 0.0;  // max over grid of mean photons per mode

    const double* row(int i) const { return p.data() + size_t(i) * kModeDim; }
};

inline ModeTable build_mode_table(double alpha, double eta_mag, double phase_offset,
                                  bool drifting) {
    ModeTable table;
    table.n_grid = drifting ? 2048 : 1;
    table.p.resize(size_t(table.n_grid + 1) * kModeDim);
    for (int i = 0; i <= table.n_grid; ++i) {
        const double phi =
            drifting ? (2.0 * std::numbers::pi * (i % table.n_grid)) / table.n_grid : 0.0;
        const complexd eta = std::polar(eta_mag, phi + phase_offset);
        const FockVector state = squeeze_apply(eta, coherent_state(alpha, kModeDim));
        const double norm = state.norm_squared();
        double mean = 0.0;
        for (int m = 0; m < kModeDim; ++m) {
            const double pm = std::norm(state.amplitudes[m]) / norm;
            table.p[size_t(i) * kModeDim + m] = pm;
            mean += m * pm;
        }
        table.q_env = std::max(table.q_env, 1.0 - table.row(i)[0]);
        table.max_mean = std::max(table.max_mean, mean);
    }
    return table;
}

/// Occupied-mode walker shared by the mode-based sources. For each chunk of
/// modes, jumps between candidate modes geometrically under q_env, samples
/// the drift phase at candidate modes only (Brownian bridge against the
/// pre-sampled chunk-boundary phases), and calls `place(k, phi, rng)` for
/// each accepted mode with at least one photon.
template <typename AcceptFn>
void walk_modes(const SourceConfig& config, const SimOptions& opts, uint64_t n_modes,
                uint64_t tc_ps, uint64_t duration_ps, double q_env, AcceptFn&& place_mode,
                std::vector<ChunkEvents>& chunks, uint64_t modes_per_chunk) {
    const double tc_sec = double(tc_ps) * 1e-12;
    const uint64_t n_chunks = chunks.size();
    const bool drifting = config.phase_diffusion > 0.0;

    std::vector<double> boundary_phase;
    if (drifting) {
        boundary_phase.resize(n_chunks + 1);
        boundary_phase[0] = 0.0;
        Rng brng(config.seed, kPhaseBoundaryStream);
        for (uint64_t c = 0; c < n_chunks; ++c) {
            const uint64_t m0 = c * modes_per_chunk;
            const uint64_t m1 = std::min(n_modes, m0 + modes_per_chunk);
            const double var = config.phase_diffusion * double(m1 - m0) * tc_sec;
            boundary_phase[c + 1] = boundary_phase[c] + std::sqrt(var) * brng.normal();
        }
    }

    run_chunks(n_chunks, opts.threads, [&](uint64_t c) {
        Rng rng(config.seed, kChunkStreamBase + c);
        const uint64_t m0 = c * modes_per_chunk;
        const uint64_t m1 = std::min(n_modes, m0 + modes_per_chunk);
        BrownianBridge bridge(config.phase_diffusion, double(m0) * tc_sec,
                              drifting ? boundary_phase[c] : 0.0, double(m1) * tc_sec,
                              drifting ? boundary_phase[c + 1] : 0.0);
        if (q_env > 0.0) {
            uint64_t k = m0;
            const uint64_t first_skip = rng.geometric_skips(q_env);
            k = (first_skip > m1 - m0) ? m1 : m0 + first_skip;
            while (k < m1) {
                const double phi =
                    drifting ? bridge.sample_at(double(k) * tc_sec, rng) : 0.0;
                place_mode(c, k, phi, rng);
                const uint64_t skip = rng.geometric_skips(q_env);
                if (skip >= m1 - k) break;
                k += 1 + skip;
            }
        }
        // dark counts; the final chunk also covers the trailing partial mode
        const uint64_t span_lo = m0 * tc_ps;
        const uint64_t span_hi = (c + 1 == n_chunks) ? duration_ps : m1 * tc_ps;
        add_dark_counts(rng, chunks[c], config.detector.dark_rate, span_lo,
                        span_hi - span_lo);
    });
}

}  // namespace detail

/// Interfered anti-bunched field. Time is partitioned into contiguous modes
/// of length coherence_time. Mode k carries eta_k = |eta| e^{i(phi(t_k) +
/// phase_offset)}; its photon number is drawn from the exact populations of
/// S(eta_k)|alpha>, photons are placed uniformly within the mode and split
/// 50:50. With matched = true, alpha solves the two-photon cancellation for
/// |eta| = sqrt(pair_rate * coherence_time); otherwise |alpha|^2 =
/// coherent_rate * coherence_time.
inline std::pair<TagStream, TagStream> simulate_antibunched(const SourceConfig& config,
                                                            const SimOptions& opts = {}) {
    if (config.source_kind != SourceKind::antibunched)
        throw parameter_error("simulate_antibunched: source_kind must be 'antibunched'");
    validate_source_config(config);

    const double pairs_per_mode = config.pair_rate * config.coherence_time;
    const double eta_mag = std::sqrt(pairs_per_mode);
    if (eta_mag > 0.25)
        throw parameter_error("simulate_antibunched: |eta| = " + std::to_string(eta_mag) +
                              " exceeds the matching validity window (0.25)");
    const double alpha =
        config.matched ? match_alpha(eta_mag).real()
                       : std::sqrt(config.coherent_rate * config.coherence_time);
    if (alpha > 0.3)
        throw parameter_error("simulate_antibunched: |alpha| = " + std::to_string(alpha) +
                              " exceeds the per-mode truncation validity window (0.3)");

    const uint64_t duration_ps = detail::duration_to_ps(config.duration);
    const uint64_t tc_ps = std::max<uint64_t>(detail::duration_to_ps(config.coherence_time), 1);
    const uint64_t n_modes = duration_ps / tc_ps;  // trailing partial mode is empty
    const bool drifting = config.phase_diffusion > 0.0;

    const detail::ModeTable table =
        detail::build_mode_table(alpha, eta_mag, config.phase_offset, drifting);
    const double mean_eff =
        0.5 * (config.detector.efficiency[0] + config.detector.efficiency[1]);
    detail::check_capacity(double(n_modes) * table.max_mean * mean_eff +
                               2.0 * config.detector.dark_rate * config.duration,
                           opts);

    const uint64_t modes_per_chunk = uint64_t(1) << 22;
    const uint64_t n_chunks = n_modes == 0 ? 1 : (n_modes + modes_per_chunk - 1) / modes_per_chunk;
    std::vector<detail::ChunkEvents> chunks(n_chunks);
    const double jitter_ps = config.detector.jitter_sigma * 1e12;

    detail::walk_modes(
        config, opts, n_modes, tc_ps, duration_ps, table.q_env,
        [&](uint64_t c, uint64_t k, double phi, Rng& rng) {
            // interpolate populations at this mode's phase
            const double x = detail::wrap_two_pi(phi) / (2.0 * std::numbers::pi) *
                             table.n_grid;
            const int i = std::min(int(x), table.n_grid - 1);
            const double frac = x - i;
            const double* lo = table.row(i);
            const double* hi = table.row(i + 1);
            auto pm = [&](int m) { return lo[m] + frac * (hi[m] - lo[m]); };

            const double occupied = 1.0 - pm(0);
            if (!(rng.uniform() * table.q_env < occupied)) return;

            int m = 1;
            double u = rng.uniform() * occupied;
            double acc = 0.0;
            for (; m < kModeDim - 1; ++m) {
                acc += pm(m);
                if (u < acc) break;
            }
            detail::Emitter emitter{&rng, &chunks[c], jitter_ps,
                                    static_cast<int64_t>(duration_ps)};
            for (int j = 0; j < m; ++j) {
                const int64_t t = static_cast<int64_t>(k * tc_ps + rng.uniform_below(tc_ps));
                const int ch = static_cast<int>(rng.next_u64() >> 63);
                if (rng.uniform() < config.detector.efficiency[ch]) emitter.emit(ch, t);
            }
        },
        chunks, modes_per_chunk);

    return detail::assemble_streams(chunks, duration_ps, config.detector);
}

/// Path-entangled variant: the pair source feeds two separate modes a, b
/// (detector channels 0, 1), each mixed with its own coherent beam. Per mode
/// the joint (m_a, n_b) is drawn from the truncated product state with
/// eta_k = -|eta| e^{i(phi(t_k) + phase_offset)} (destructive at zero
/// offset). matched = true sets alpha = beta = sqrt(|eta|).
inline std::pair<TagStream, TagStream> simulate_path_entangled(
    const SourceConfig& config, const SimOptions& opts = {}) {
    if (config.source_kind != SourceKind::path_entangled)
        throw parameter_error(
            "simulate_path_entangled: source_kind must be 'path_entangled'");
    validate_source_config(config);

    const double pairs_per_mode = config.pair_rate * config.coherence_time;
    const double eta_mag = std::sqrt(pairs_per_mode);
    const double alpha =
        config.matched ? std::sqrt(eta_mag)
                       : std::sqrt(config.coherent_rate * config.coherence_time);
    if (eta_mag > 0.3 || alpha > 0.3)
        throw parameter_error("simulate_path_entangled: amplitudes exceed the truncated "
                              "two-photon expansion validity window (0.3)");
    const double a = alpha * alpha;  // |alpha|^2 = |beta|^2

    const uint64_t duration_ps = detail::duration_to_ps(config.duration);
    const uint64_t tc_ps = std::max<uint64_t>(detail::duration_to_ps(config.coherence_time), 1);
    const uint64_t n_modes = duration_ps / tc_ps;

    // unnormalized weights: |1,0>=a, |0,1>=a, |1,1>=|ab - eta|^2 with the
    // drift phase inside, |2,0>=|0,2>=a^2/2
    const double p11_max = (a + eta_mag) * (a + eta_mag);
    const double norm_max = 1.0 + 2.0 * a + p11_max + 0.5 * a * a + 0.5 * a * a;
    const double q_env = (norm_max - 1.0) / norm_max;
    const double mean_eff =
        0.5 * (config.detector.efficiency[0] + config.detector.efficiency[1]);
    detail::check_capacity(double(n_modes) * 2.0 * (a + eta_mag * eta_mag) * mean_eff +
                               2.0 * config.detector.dark_rate * config.duration,
                           opts);

    const uint64_t modes_per_chunk = uint64_t(1) << 22;
    const uint64_t n_chunks = n_modes == 0 ? 1 : (n_modes + modes_per_chunk - 1) / modes_per_chunk;
    std::vector<detail::ChunkEvents> chunks(n_chunks);
    const double jitter_ps = config.detector.jitter_sigma * 1e12;

    detail::walk_modes(
        config, opts, n_modes, tc_ps, duration_ps, q_env,
        [&](uint64_t c, uint64_t k, double phi, Rng& rng) {
            const complexd eta = -std::polar(eta_mag, phi + config.phase_offset);
            const double p11 = std::norm(eta + complexd(a, 0.0));
            const double norm = 1.0 + 2.0 * a + p11 + a * a;
            const double occupied = (norm - 1.0) / norm;
            if (!(rng.uniform() * q_env < occupied)) return;

            // joint occupation, conditioned on not vacuum
            struct Outcome {
                int ma, nb;
                double weight;
            };
            const Outcome outcomes[5] = {{1, 0, a},
                                         {0, 1, a},
                                         {1, 1, p11},
                                         {2, 0, 0.5 * a * a},
                                         {0, 2, 0.5 * a * a}};
            double u = rng.uniform() * (norm - 1.0);
            int pick = 4;
            double acc = 0.0;
            for (int i = 0; i < 5; ++i) {
                acc += outcomes[i].weight;
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
            detail::Emitter emitter{&rng, &chunks[c], jitter_ps,
                                    static_cast<int64_t>(duration_ps)};
            const int counts[2] = {outcomes[pick].ma, outcomes[pick].nb};
            for (int ch = 0; ch < 2; ++ch) {
                for (int j = 0; j < counts[ch]; ++j) {
                    const int64_t t =
                        static_cast<int64_t>(k * tc_ps + rng.uniform_below(tc_ps));
                    if (rng.uniform() < config.detector.efficiency[ch]) emitter.emit(ch, t);
                }
            }
        },
        chunks, modes_per_chunk);

    return detail::assemble_streams(chunks, duration_ps, config.detector);
}

inline std::pair<TagStream, TagStream> simulate(const SourceConfig& config,
                                                const SimOptions& opts = {}) {
    switch (config.source_kind) {
        case SourceKind::pairs: return simulate_pairs(config, opts);
        case SourceKind::coherent: return simulate_coherent(config, opts);
        case SourceKind::antibunched: return simulate_antibunched(config, opts);
        case SourceKind::path_entangled: return simulate_path_entangled(config, opts);
    }
    throw parameter_error("simulate: unknown source kind");
}

}  // namespace antibunch
