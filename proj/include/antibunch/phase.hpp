// Relative-phase drift between the pump and the injected coherent beam,
// modeled as a Wiener process: independent Gaussian increments with variance
// phase_diffusion * dt.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "antibunch/errors.hpp"
#include "antibunch/rng.hpp"

namespace antibunch {

// Derived-stream indices of a seed's RNG family. Chunked generation uses
// kChunkStreamBase + chunk_index; the low indices are reserved.
inline constexpr uint64_t kPhaseBoundaryStream = 1;
inline constexpr uint64_t kTrajectoryStream = 2;
inline constexpr uint64_t kChunkStreamBase = 16;

struct PhaseTrajectory {
    std::vector<double> times;   ///< seconds
    std::vector<double> phases;  ///< radians
};

inline PhaseTrajectory phase_trajectory(double phase_diffusion, double duration,
                                        double dt, uint64_t seed) {
    if (dt <= 0.0) throw parameter_error("phase_trajectory: dt must be > 0");
    if (duration <= 0.0) throw parameter_error("phase_trajectory: duration must be > 0");
    if (phase_diffusion < 0.0)
        throw parameter_error("phase_trajectory: phase_diffusion must be >= 0");

    const size_t steps = static_cast<size_t>(duration / dt);
    PhaseTrajectory traj;
    traj.times.resize(steps + 1);
    traj.phases.resize(steps + 1);
    traj.times[0] = 0.0;
    traj.phases[0] = 0.0;

    Rng rng(seed, kTrajectoryStream);
    const double step_sigma = std::sqrt(phase_diffusion * dt);
    for (size_t k = 1; k <= steps; ++k) {
        traj.times[k] = k * dt;
        traj.phases[k] =
            traj.phases[k - 1] + (step_sigma > 0.0 ? step_sigma * rng.normal() : 0.0);
    }
    return traj;
}

namespace detail {

/// Sequential Brownian-bridge sampler on [t_start, t_end] with pinned
/// endpoint value. Exact conditional law of a Wiener path given both ends.
class BrownianBridge {
  public:
    BrownianBridge(double diffusion, double t_start, double phi_start, double t_end,
                   double phi_end)
        : diffusion_(diffusion), t_cur_(t_start), phi_cur_(phi_start), t_end_(t_end),
          phi_end_(phi_end) {}

    double sample_at(double t, Rng& rng) {
        if (t <= t_cur_) return phi_cur_;
        if (t >= t_end_) return phi_end_;
        const double span = t_end_ - t_cur_;
        const double dt = t - t_cur_;
        const double mean = phi_cur_ + dt / span * (phi_end_ - phi_cur_);
        const double var = diffusion_ * dt * (t_end_ - t) / span;
        phi_cur_ = mean + (var > 0.0 ? std::sqrt(var) * rng.normal() : 0.0);
        t_cur_ = t;
        return phi_cur_;
    }

  private:
    double diffusion_;
    double t_cur_;
    double phi_cur_;
    double t_end_;
    double phi_end_;
};

}  // namespace detail

}  // namespace antibunch
