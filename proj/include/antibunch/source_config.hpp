// Simulation run parameters: one source, one detector pair.

#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "antibunch/errors.hpp"

namespace antibunch {

enum class SourceKind { pairs, coherent, antibunched, path_entangled };

inline std::string to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::pairs: return "pairs";
        case SourceKind::coherent: return "coherent";
        case SourceKind::antibunched: return "antibunched";
        case SourceKind::path_entangled: return "path_entangled";
    }
    return "?";
}

struct DetectorModel {
    std::array<double, 2> efficiency{1.0, 1.0};
    double jitter_sigma = 0.0;  ///< s, Gaussian timestamp smearing per detection
    double dark_rate = 0.0;     ///< s^-1 per channel, uniform in time
    double dead_time = 0.0;     ///< s, per-channel paralyzable-free recovery
};

struct SourceConfig {
    SourceKind source_kind = SourceKind::pairs;
    double pair_rate = 0.0;       ///< generated pairs per second (before losses)
    double coherent_rate = 0.0;   ///< generated coherent photons per second
    double coherence_time = 5e-9; ///< s; temporal-mode length and pair-correlation width
    double phase_diffusion = 0.0; ///< rad^2/s, Wiener strength of the pump-injection phase
    double phase_offset = 0.0;    ///< rad, static offset from the cancellation phase
    double duration = 1.0;        ///< s
    uint64_t seed = 1;
    DetectorModel detector;
    bool matched = false;  ///< derive |alpha|^2 = |eta| from the pair rate
};

inline void validate_source_config(const SourceConfig& config) {
    if (config.pair_rate < 0.0) throw parameter_error("source: pair_rate must be >= 0");
    if (config.coherent_rate < 0.0)
        throw parameter_error("source: coherent_rate must be >= 0");
    if (config.coherence_time <= 0.0)
        throw parameter_error("source: coherence_time must be > 0");
    if (config.duration <= 0.0) throw parameter_error("source: duration must be > 0");
    if (config.phase_diffusion < 0.0)
        throw parameter_error("source: phase_diffusion must be >= 0");
    for (double eff : config.detector.efficiency) {
        if (eff < 0.0 || eff > 1.0)
            throw parameter_error("detector: efficiency must be within [0, 1]");
    }
    if (config.detector.jitter_sigma < 0.0)
        throw parameter_error("detector: jitter_sigma must be >= 0");
    if (config.detector.dark_rate < 0.0)
        throw parameter_error("detector: dark_rate must be >= 0");
    if (config.detector.dead_time < 0.0)
        throw parameter_error("detector: dead_time must be >= 0");
}

}  // namespace antibunch
