#pragma once

#include <cstddef>
#include <limits>

#include "lindet/channel.hpp"
#include "lindet/detection.hpp"
#include "lindet/linalg.hpp"
#include "lindet/rng.hpp"

namespace lindet {

/// Marker for SNRs that diverge (noiseless limits).
inline constexpr double kInfiniteSnr = std::numeric_limits<double>::infinity();

/// Spectral sums feeding the MMSE post-processing SNR.
struct MmseAbc {
    double a; ///< (sum_i s_i^2 / (s_i^2 + v))^2
    double b; ///< sum_i (s_i^2 / (s_i^2 + v))^2
    double c; ///< sum_i s_i^2 / (s_i^2 + v)^2
};

struct CondRatioReport {
    double exact_ratio;  ///< cond(W_mmse) / cond(W_zf)
    double approx_ratio; ///< (1 + v/s_1^2) / (1 + v/s_N^2)
    double cond_w_zf;
    double cond_w_mmse;
};

/// Monte Carlo estimate of signal energy over filtered distortion energy.
struct DistortionEstimate {
    double snr;            ///< kInfiniteSnr when no distortion accumulated
    double standard_error; ///< delta-method standard error of the ratio estimator
    std::size_t trials;
};

/**
 * Sharpest Weyl lower bound on the i-th (1-based) eigenvalue of Sigma + Delta.
 *
 * Maximum over k = 0..N-i of sigma[i+k] + delta[N-k], indices 1-based. Both
 * spectra hold eigenvalues of Hermitian PSD matrices in descending order.
 */
double weyl_lower_bound(std::size_t i, const Spectrum& sigma, const Spectrum& delta);

/// Closed-form approximation of cond(W_mmse) / cond(W_zf) from the extreme singular values of H.
double cond_ratio_approx(double sigma_1, double sigma_n, const NoiseModel& noise);

/// Builds both filters and compares their condition numbers with the approximation.
CondRatioReport cond_ratio_exact(const ComplexMatrix& h, const NoiseModel& noise);

/// N / sum_i (v / s_i^2); kInfiniteSnr for v = 0.
double snr_zf(const Spectrum& spectrum, const NoiseModel& noise);

MmseAbc mmse_abc(const Spectrum& spectrum, const NoiseModel& noise);

/**
 * (a + b) / (v (N + 1) c + N b - a).
 *
 * Denominators at or below 1e-12 (a + b) in magnitude map to kInfiniteSnr;
 * a denominator more negative than that throws FormulaDomainError.
 */
double snr_mmse(const Spectrum& spectrum, const NoiseModel& noise);

/// 10 log10(mmse / zf); kInfiniteSnr if either input is not finite.
double gain_db(double snr_mmse_lin, double snr_zf_lin);

/// Limit law exp(-x - x^2/2) for P[N sigma_N >= x].
double edelman_tail(double x);

/**
 * Signal-to-distortion ratio of a linear filter measured by simulation.
 *
 * Each trial draws a uniform QPSK vector x and noise n from its own
 * substream of `stream` and accumulates ||x||^2 and ||W (H x + n) - x||^2.
 */
DistortionEstimate empirical_distortion_snr(const ComplexMatrix& h, const FilterMatrix& w, const NoiseModel& noise,
                                            std::size_t trials, const RngStream& stream, std::size_t workers = 1);

} // namespace lindet
