// Two-mode truncated states for the path-entangled variant: a pair source
// feeding modes a and b through highly transmissive taps, each mixed with its
// own weak coherent beam.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "antibunch/errors.hpp"
#include "antibunch/fock.hpp"

namespace antibunch {

struct TwoModeState {
    std::vector<complexd> amplitudes;  // row-major over |m_a, n_b>
    int dim = 0;                       // per-mode truncation

    complexd& amplitude(int m, int n) { return amplitudes[m * dim + n]; }
    const complexd& amplitude(int m, int n) const { return amplitudes[m * dim + n]; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return s;
    }
};

/// |eta>_si x |alpha>_a x |beta>_b expanded to two photons total,
/// unnormalized (vacuum amplitude 1):
///   |0,0> = 1, |1,0> = alpha, |0,1> = beta, |1,1> = eta + alpha beta,
///   |2,0> = alpha^2/sqrt(2), |0,2> = beta^2/sqrt(2).
/// Only the transmissivity -> 1 limit of the tap beam splitters is
/// implemented; the general reflectivity dependence is not modeled.
inline TwoModeState path_entangled_state(complexd alpha, complexd beta, complexd eta,
                                         int dim, double transmissivity = 1.0) {
    if (dim < 3) throw invalid_dimension_error("path_entangled_state: dim must be >= 3");
    if (std::abs(alpha) > 0.3 || std::abs(beta) > 0.3 || std::abs(eta) > 0.3)
        throw parameter_error("path_entangled_state: amplitudes must be <= 0.3");
    if (transmissivity != 1.0)
        throw parameter_error(
            "path_entangled_state: only the transmissivity -> 1 limit is implemented");

    TwoModeState state;
    state.dim = dim;
    state.amplitudes.assign(static_cast<size_t>(dim) * dim, complexd(0.0, 0.0));
    state.amplitude(0, 0) = 1.0;
    state.amplitude(1, 0) = alpha;
    state.amplitude(0, 1) = beta;
    state.amplitude(1, 1) = eta + alpha * beta;
    state.amplitude(2, 0) = alpha * alpha / std::sqrt(2.0);
    state.amplitude(0, 2) = beta * beta / std::sqrt(2.0);
    return state;
}

/// Probability that both modes hold at least one photon.
inline double two_mode_coincidence_prob(const TwoModeState& state) {
    const double norm = state.norm_squared();
    if (norm <= 0.0)
        throw undefined_statistic_error("two_mode_coincidence_prob: zero-norm state");
    double s = 0.0;
    for (int m = 1; m < state.dim; ++m)
        for (int n = 1; n < state.dim; ++n) s += std::norm(state.amplitude(m, n));
    return s / norm;
}

}  // namespace antibunch
