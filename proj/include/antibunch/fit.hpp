// Weighted Gaussian dip/peak fits on normalized correlation curves.
//
// Model: g2(tau) = 1 + sign * A * exp(-(tau - tau0)^2 / (2 sigma^2)), with
// sign = -1 for the anti-bunching dip (A is the visibility) and +1 for a
// coincidence peak. Levenberg-Marquardt on (A, sigma, tau0) with analytic
// derivatives. Weights are empirical-Poisson in count space,
// 1 / max(counts, 1); zero-count bins keep weight 1.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "antibunch/analysis.hpp"
#include "antibunch/errors.hpp"

namespace antibunch {

struct DipFit {
    double g2_zero = 0.0;     ///< 1 - visibility (model value at the center)
    double sigma_ps = 0.0;
    double visibility = 0.0;
    double center_ps = 0.0;
    double residual = 0.0;    ///< sqrt(weighted chi^2 / dof)
    double visibility_stderr = 0.0;
    double sigma_stderr = 0.0;
    int iterations = 0;
};

struct PeakFit {
    double amplitude = 0.0;
    double sigma_ps = 0.0;
    double center_ps = 0.0;
    double residual = 0.0;
    double amplitude_stderr = 0.0;
    double sigma_stderr = 0.0;
    int iterations = 0;

    double fwhm_ps() const { return 2.3548200450309493 * sigma_ps; }
};

namespace detail {

struct GaussFitResult {
    double amplitude, sigma, center, residual, amplitude_stderr, sigma_stderr;
    int iterations;
};

inline GaussFitResult fit_gaussian(const G2Curve& curve, double sign) {
    const size_t n = curve.g2.size();
    if (n < 10) throw parameter_error("gaussian fit: need at least 10 bins");
    const double bin = n > 1 ? double(curve.lags_ps[1] - curve.lags_ps[0]) : 1.0;

    // initial guess from the extremum of a lightly smoothed curve (+-2 bins),
    // which keeps the seed stable on low-count data
    std::vector<double> smooth(n);
    for (size_t i = 0; i < n; ++i) {
        const size_t lo_i = i >= 2 ? i - 2 : 0;
        const size_t hi_i = std::min(i + 2, n - 1);
        double s = 0.0;
        for (size_t j = lo_i; j <= hi_i; ++j) s += curve.g2[j];
        smooth[i] = s / double(hi_i - lo_i + 1);
    }
    // strongest deviation from the unit baseline, either direction (the dip
    // model fits inverted features with negative visibility and vice versa)
    size_t i_ext = 0;
    for (size_t i = 1; i < n; ++i) {
        if (std::abs(smooth[i] - 1.0) > std::abs(smooth[i_ext] - 1.0)) i_ext = i;
    }
    const double dev = smooth[i_ext] - 1.0;
    double amp0 = sign * dev;
    if (std::abs(amp0) < 0.05) amp0 = 0.05;
    const auto beyond_half = [&](size_t i) {
        return (smooth[i] - 1.0) * (dev >= 0.0 ? 1.0 : -1.0) > std::abs(dev) * 0.5;
    };
    size_t lo = i_ext, hi = i_ext;
    while (lo > 0 && beyond_half(lo - 1)) --lo;
    while (hi + 1 < n && beyond_half(hi + 1)) ++hi;
    double sigma0 =
        std::max(double(curve.lags_ps[hi] - curve.lags_ps[lo]) / 2.0, 2.5 * bin) /
        1.1774;  // HWHM -> sigma
    double center0 = double(curve.lags_ps[i_ext]);

    // contract precondition: enough bins to constrain the initial guess
    size_t in_window = 0;
    for (size_t i = 0; i < n; ++i) {
        if (std::abs(double(curve.lags_ps[i]) - center0) <= 5.0 * sigma0) ++in_window;
    }
    if (in_window < 10)
        throw parameter_error("gaussian fit: fewer than 10 bins inside the +-5 sigma "
                              "initial window");

    std::vector<double> w(n);  // weight on the g2-space residual, absolute scale
    for (size_t i = 0; i < n; ++i) {
        const double c = double(std::max<uint64_t>(curve.counts[i], 1));
        w[i] = curve.baseline * curve.baseline / c;  // = 1/Var(g2_i), clamped
    }

    const auto cost_of = [&](double amp, double sigma, double center) {
        double chi2 = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double dx = (double(curve.lags_ps[i]) - center) / sigma;
            const double model = 1.0 + sign * amp * std::exp(-0.5 * dx * dx);
            const double r = model - curve.g2[i];
            chi2 += w[i] * r * r;
        }
        return chi2;
    };

    double amp = amp0, sigma = sigma0, center = center0;
    double chi2 = cost_of(amp, sigma, center);
    double lambda = 1e-3;
    int iterations = 0;
    bool converged = false;
    const double sigma_floor = bin / 4.0;

    for (int iter = 0; iter < 200 && !converged; ++iter) {
        iterations = iter + 1;
        Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
        Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
        for (size_t i = 0; i < n; ++i) {
            const double dx = double(curve.lags_ps[i]) - center;
            const double e = std::exp(-0.5 * dx * dx / (sigma * sigma));
            const double model = 1.0 + sign * amp * e;
            const double r = model - curve.g2[i];
            Eigen::Vector3d j;
            j[0] = sign * e;                                      // d/dA
            j[1] = sign * amp * e * dx * dx / (sigma * sigma * sigma);  // d/dsigma
            j[2] = sign * amp * e * dx / (sigma * sigma);         // d/dtau0
            jtj.noalias() += w[i] * j * j.transpose();
            jtr.noalias() += w[i] * j * r;
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 24; ++attempt) {
            Eigen::Matrix3d damped = jtj;
            for (int d = 0; d < 3; ++d) {
                damped(d, d) += lambda * std::max(jtj(d, d), 1e-30);
            }
            const Eigen::Vector3d delta = damped.ldlt().solve(-jtr);
            const double amp_new = amp + delta[0];
            const double sigma_new =
                std::max(std::abs(sigma + delta[1]), sigma_floor);
            const double center_new = center + delta[2];
            const double chi2_new = cost_of(amp_new, sigma_new, center_new);
            if (chi2_new <= chi2) {
                const double rel = std::max({
                    std::abs(amp_new - amp) / std::max(std::abs(amp_new), 1e-12),
                    std::abs(sigma_new - sigma) / std::max(std::abs(sigma_new), 1e-12),
                    std::abs(center_new - center) /
                        std::max(std::abs(center_new), std::max(sigma_new, 1.0)),
                });
                amp = amp_new;
                sigma = sigma_new;
                center = center_new;
                chi2 = chi2_new;
                lambda = std::max(lambda / 3.0, 1e-12);
                if (rel < 1e-8) converged = true;
                stepped = true;
                break;
            }
            lambda *= 4.0;
        }
        if (!stepped) {
            // no damped step reduces chi2: stationary to machine precision
            converged = std::isfinite(chi2);
            break;
        }
    }

    const size_t dof = n > 3 ? n - 3 : 1;
    const double residual = std::sqrt(chi2 / double(dof));
    if (!converged) {
        throw fit_error("gaussian fit did not converge", amp, sigma, center, residual);
    }

    // parameter covariance from the weighted normal matrix, scaled by chi2/dof
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    for (size_t i = 0; i < n; ++i) {
        const double dx = double(curve.lags_ps[i]) - center;
        const double e = std::exp(-0.5 * dx * dx / (sigma * sigma));
        Eigen::Vector3d j;
        j[0] = sign * e;
        j[1] = sign * amp * e * dx * dx / (sigma * sigma * sigma);
        j[2] = sign * amp * e * dx / (sigma * sigma);
        jtj.noalias() += w[i] * j * j.transpose();
    }
    double amp_se = 0.0, sigma_se = 0.0;
    const Eigen::Matrix3d cov = jtj.inverse() * std::max(chi2 / double(dof), 1e-30);
    if (cov.allFinite()) {
        amp_se = std::sqrt(std::max(cov(0, 0), 0.0));
        sigma_se = std::sqrt(std::max(cov(1, 1), 0.0));
    }
    return {amp, std::abs(sigma), center, residual, amp_se, sigma_se, iterations};
}

}  // namespace detail

inline DipFit fit_gaussian_dip(const G2Curve& curve) {
    const auto r = detail::fit_gaussian(curve, -1.0);
    DipFit fit;
    fit.visibility = r.amplitude;
    fit.g2_zero = 1.0 - r.amplitude;
    fit.sigma_ps = r.sigma;
    fit.center_ps = r.center;
    fit.residual = r.residual;
    fit.visibility_stderr = r.amplitude_stderr;
    fit.sigma_stderr = r.sigma_stderr;
    fit.iterations = r.iterations;
    return fit;
}

inline PeakFit fit_gaussian_peak(const G2Curve& curve) {
    const auto r = detail::fit_gaussian(curve, +1.0);
    PeakFit fit;
    fit.amplitude = r.amplitude;
    fit.sigma_ps = r.sigma;
    fit.center_ps = r.center;
    fit.residual = r.residual;
    fit.amplitude_stderr = r.amplitude_stderr;
    fit.sigma_stderr = r.sigma_stderr;
    fit.iterations = r.iterations;
    return fit;
}

}  // namespace antibunch
