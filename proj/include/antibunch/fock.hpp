// Truncated-Fock-space states and photon statistics for a single mode.
//
// States are complex amplitude vectors over |0>..|D-1>. The squeezing
// operator is applied as the exact matrix exponential of its truncated
// generator, computed through a Hermitian eigendecomposition done separately
// on the even and odd photon-number sectors (the generator only couples
// m <-> m+-2, so parity is conserved exactly, block by block).

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "antibunch/errors.hpp"

namespace antibunch {

using complexd = std::complex<double>;

struct FockVector {
    std::vector<complexd> amplitudes;

    int dim() const { return static_cast<int>(amplitudes.size()); }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return s;
    }
};

struct SqueezedCoherentParams {
    complexd alpha;  ///< coherent amplitude
    complexd eta;    ///< squeezing parameter
};

struct PerturbativeCoeffs {
    complexd c0, c1, c2, c3;  // unnormalized, c0 = 1
};

/// Poisson probability mass beyond photon number dim-1 at intensity lambda.
inline double poisson_tail(double lambda, int dim) {
    if (lambda <= 0.0) return 0.0;
    // pmf at m = dim, then forward recurrence until negligible
    double log_pmf = -lambda + dim * std::log(lambda) - std::lgamma(dim + 1.0);
    double pmf = std::exp(log_pmf);
    double tail = 0.0;
    for (int m = dim; m < dim + 2000 && pmf > 1e-30; ++m) {
        tail += pmf;
        pmf *= lambda / (m + 1);
    }
    return tail;
}

inline constexpr double kCoherentTailThreshold = 1e-12;

/// |alpha> truncated at dim amplitudes: C_m = e^{-|a|^2/2} a^m / sqrt(m!).
inline FockVector coherent_state(complexd alpha, int dim) {
    if (dim < 2) throw invalid_dimension_error("coherent_state: dim must be >= 2");
    const double lambda = std::norm(alpha);
    const double tail = poisson_tail(lambda, dim);
    if (tail > kCoherentTailThreshold) {
        throw truncation_error("coherent_state: Poisson tail beyond truncation is " +
                                   std::to_string(tail) + "; increase dim",
                               tail);
    }
    FockVector state;
    state.amplitudes.resize(dim);
    state.amplitudes[0] = std::exp(-lambda / 2.0);
    for (int m = 1; m < dim; ++m)
        state.amplitudes[m] = state.amplitudes[m - 1] * alpha / std::sqrt(double(m));
    return state;
}

namespace detail {

/// exp(-i H) v for Hermitian H given as a dense matrix, applied to v.
inline Eigen::VectorXcd unitary_exp_apply(const Eigen::MatrixXcd& h,
                                          const Eigen::VectorXcd& v) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    const Eigen::MatrixXcd& vec = es.eigenvectors();
    Eigen::VectorXcd coeffs = vec.adjoint() * v;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        coeffs[i] *= std::exp(complexd(0.0, -lambda[i]));
    }
    return vec * coeffs;
}

}  // namespace detail

/// Norm tolerance of squeeze_apply per the documented validity window.
/// The eigendecomposition route is unitary to machine precision, so the
/// practical norm drift is ~1e-15 for any dim; 1e-9 is a hard cap.
inline constexpr double kSqueezeNormTolerance = 1e-9;

/// Apply S(eta) = exp[(eta* a^2 - eta a^+2)/2] on the truncated space.
/// Valid for |eta| <= 0.5; parity sectors are propagated independently so a
/// parity eigenstate keeps exact zeros on the opposite sector.
inline FockVector squeeze_apply(complexd eta, const FockVector& input) {
    if (std::abs(eta) > 0.5)
        throw parameter_error("squeeze_apply: |eta| > 0.5 is outside the validity window");
    if (eta == complexd(0.0, 0.0)) return input;

    const int dim = input.dim();
    if (dim < 2) throw invalid_dimension_error("squeeze_apply: dim must be >= 2");
    const double norm_in = input.norm_squared();

    FockVector out;
    out.amplitudes.assign(dim, complexd(0.0, 0.0));

    // H = i G with G = (eta* a^2 - eta a^+2)/2; couples m and m+2:
    //   <m|H|m+2> = i eta* sqrt((m+1)(m+2)) / 2
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<int> idx;
        for (int m = parity; m < dim; m += 2) idx.push_back(m);
        const int n = static_cast<int>(idx.size());
        if (n == 0) continue;

        Eigen::VectorXcd v(n);
        double block_norm = 0.0;
        for (int i = 0; i < n; ++i) {
            v[i] = input.amplitudes[idx[i]];
            block_norm += std::norm(v[i]);
        }
        if (block_norm == 0.0) continue;  // opposite parity stays exactly zero

        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i + 1 < n; ++i) {
            const int m = idx[i];
            const complexd upper = complexd(0.0, 0.5) * std::conj(eta) *
                                   std::sqrt(double(m + 1) * double(m + 2));
            h(i, i + 1) = upper;
            h(i + 1, i) = std::conj(upper);
        }
        const Eigen::VectorXcd w = detail::unitary_exp_apply(h, v);
        for (int i = 0; i < n; ++i) out.amplitudes[idx[i]] = w[i];
    }

    const double norm_out = out.norm_squared();
    if (std::abs(norm_out - norm_in) > kSqueezeNormTolerance) {
        throw truncation_error("squeeze_apply: norm drifted by " +
                                   std::to_string(std::abs(norm_out - norm_in)) +
                                   "; increase dim",
                               std::abs(norm_out - norm_in));
    }
    return out;
}

/// Small-parameter expansion of S(eta)|alpha>, unnormalized (C0 = 1).
inline PerturbativeCoeffs perturbative_coeffs(const SqueezedCoherentParams& p) {
    PerturbativeCoeffs c;
    c.c0 = 1.0;
    c.c1 = p.alpha;
    c.c2 = (p.alpha * p.alpha - p.eta) / std::sqrt(2.0);
    c.c3 = p.alpha * (p.alpha * p.alpha - 3.0 * p.eta) / std::sqrt(6.0);
    return c;
}

/// g2 = sum m(m-1) P_m / (sum m P_m)^2 with P_m the normalized populations.
inline double g2_of_state(const FockVector& state) {
    const double norm = state.norm_squared();
    if (norm <= 0.0)
        throw undefined_statistic_error("g2_of_state: zero-norm state");
    double mean = 0.0;
    double second = 0.0;
    for (int m = 0; m < state.dim(); ++m) {
        const double p = std::norm(state.amplitudes[m]) / norm;
        mean += m * p;
        second += double(m) * double(m - 1) * p;
    }
    if (mean < 1e-15)
        throw undefined_statistic_error(
            "g2_of_state: mean photon number below 1e-15, statistic undefined");
    return second / (mean * mean);
}

inline constexpr int kDefaultFockDim = 20;

/// Coherent amplitude that cancels the exact two-photon amplitude of
/// S(eta)|alpha>: the root of C2(alpha)/C0(alpha) nearest the principal
/// sqrt(eta) (the smaller-|alpha| root), found by complex Newton iteration.
/// In the perturbative window the root satisfies |alpha^2 - eta| <= 1e-4 |eta|.
inline complexd match_alpha(complexd eta, int dim = kDefaultFockDim) {
    if (std::abs(eta) > 0.25)
        throw parameter_error("match_alpha: |eta| > 0.25 is outside the validity window");
    if (eta == complexd(0.0, 0.0)) return complexd(0.0, 0.0);

    const auto c2_ratio = [&](complexd alpha) {
        const FockVector s = squeeze_apply(eta, coherent_state(alpha, dim));
        return s.amplitudes[2] / s.amplitudes[0];
    };

    complexd alpha = std::sqrt(eta);  // principal branch seed
    complexd best = alpha;
    double best_mag = std::abs(c2_ratio(alpha));
    const double scale = std::abs(alpha);

    for (int iter = 0; iter < 60; ++iter) {
        const complexd f = c2_ratio(alpha);
        const double mag = std::abs(f);
        if (mag < best_mag) {
            best = alpha;
            best_mag = mag;
        }
        if (mag < 1e-14 * scale) return alpha;
        const double h = 1e-6 * std::max(std::abs(alpha), 1e-4);
        const complexd df = (c2_ratio(alpha + h) - c2_ratio(alpha - h)) / (2.0 * h);
        if (std::abs(df) == 0.0) break;
        const complexd step = f / df;
        alpha -= step;
        if (std::abs(alpha) > 0.75) break;  // left the physical basin
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(alpha))) {
            return alpha;
        }
    }
    if (best_mag < 1e-10 * std::max(scale, 1e-6)) return best;
    throw optimization_error("match_alpha: Newton iteration did not converge", best,
                             best_mag);
}

}  // namespace antibunch
