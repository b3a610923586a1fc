// Deterministic random number generation.
//
// The simulator promises byte-identical output for a given seed, including
// across platforms and across single- vs multi-threaded runs. The standard
// <random> distributions are implementation-defined, so the generator and
// every sampling routine used by the simulator live here.
//
// Generator: xoshiro256++ seeded through splitmix64. Independent streams are
// derived from (seed, stream index) so that work can be partitioned into
// chunks whose substreams never overlap in practice.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace antibunch {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    Rng() : Rng(0, 0) {}

    /// Stream `stream_index` of the family identified by `seed`.
    Rng(uint64_t seed, uint64_t stream_index) {
        uint64_t sm = seed ^ (stream_index * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL);
        for (auto& word : state_) word = splitmix64(sm);
        have_cached_normal_ = false;
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 significant bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Multiply-shift; bias is O(n / 2^64).
    uint64_t uniform_below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller. The second deviate is cached.
    double normal() {
        if (have_cached_normal_) {
            have_cached_normal_ = false;
            return cached_normal_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double phi = 2.0 * std::numbers::pi * uniform();
        cached_normal_ = r * std::sin(phi);
        have_cached_normal_ = true;
        return r * std::cos(phi);
    }

    double exponential() { return -std::log(uniform_pos()); }

    /// Poisson deviate. Knuth multiplication below lambda = 30, PTRS
    /// (Hoermann's transformed rejection) above.
    uint64_t poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        if (lambda < 30.0) return poisson_knuth(lambda);
        return poisson_ptrs(lambda);
    }

    /// Geometric number of failures before the first success, P(success) = p.
    /// Used to jump between occupied temporal modes.
    uint64_t geometric_skips(double p) {
        if (p >= 1.0) return 0;
        if (p <= 0.0) return UINT64_MAX;
        const double g = std::log(uniform_pos()) / std::log1p(-p);
        if (g >= 9.0e18) return UINT64_MAX;
        return static_cast<uint64_t>(g);
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t poisson_knuth(double lambda) {
        const double limit = std::exp(-lambda);
        uint64_t k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }

    uint64_t poisson_ptrs(double lambda) {
        const double slam = std::sqrt(lambda);
        const double loglam = std::log(lambda);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        while (true) {
            const double u = uniform() - 0.5;
            const double v = uniform_pos();
            const double us = 0.5 - std::abs(u);
            const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
            if (us >= 0.07 && v <= vr) return static_cast<uint64_t>(k);
            if (k < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
                k * loglam - lambda - std::lgamma(k + 1.0)) {
                return static_cast<uint64_t>(k);
            }
        }
    }

    uint64_t state_[4];
    double cached_normal_ = 0.0;
    bool have_cached_normal_;
};

}  // namespace antibunch
