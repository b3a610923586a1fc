// Rate scaling of the interference scheme: the matched coherent amplitude is
// tied to the pair rate through |alpha|^2 = |eta| and |eta|^2 = pairs per
// temporal mode, so the single-photon rate grows as the square root of the
// pair rate over the coherence time.

#pragma once

#include <cmath>

#include "antibunch/errors.hpp"

namespace antibunch {

struct RateParams {
    double pair_rate;       ///< detected pairs per second
    double coherence_time;  ///< seconds
};

struct RateLawResult {
    double r1ph;      ///< achievable single-photon rate, s^-1
    double alpha_sq;  ///< matched |alpha|^2 = mean photons per mode
    double g2_floor;  ///< higher-order g2 estimate at matching
};

inline RateLawResult rate_law(const RateParams& rates) {
    if (rates.pair_rate <= 0.0 || rates.coherence_time <= 0.0)
        throw parameter_error("rate_law: pair_rate and coherence_time must be positive");
    RateLawResult result;
    result.r1ph = std::sqrt(rates.pair_rate / rates.coherence_time);
    result.alpha_sq = std::sqrt(rates.pair_rate * rates.coherence_time);
    result.g2_floor = result.alpha_sq;
    return result;
}

}  // namespace antibunch
