#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lindet/channel.hpp"
#include "lindet/result_table.hpp"

namespace lindet {

/**
 * Experiment description shared by all runners.
 *
 * Runners only read the fields they need; ber and condratio use a single
 * dimension (dims must hold exactly one value for them).
 */
struct SimConfig {
    std::vector<std::size_t> dims;
    std::vector<double> snr_grid_db;
    std::size_t trials = 1000;
    std::uint64_t master_seed = 1;
    std::optional<double> sigma_min_floor;
    std::optional<double> cond_target;
    std::vector<double> sigma_min_grid;
    /// 0 uses every hardware thread. Results do not depend on this value.
    std::size_t workers = 1;
};

/// SNR bookkeeping written into every table.
inline constexpr std::string_view kReceiveSnrConvention = "receive_snr=N/sigma_n^2";
inline constexpr std::string_view kInverseNoiseConvention = "snr=1/sigma_n^2";
inline constexpr std::string_view kNoSnrConvention = "none";

/// sigma_n^2 = N / 10^(snr_db / 10).
NoiseModel noise_var_from_snr(double snr_db, std::size_t n);

/// Mean (and standard error) of sigma_N(H) and cond(H) over normalized channels, per N.
ResultTable run_table1(const SimConfig& config);

/// Mean formula-based MMSE-over-ZF gain in dB per (N, receive SNR).
ResultTable run_gain_sweep(const SimConfig& config);

/// Grid of abscissae used for the sigma_N CDF rows.
std::vector<double> cdf_grid();
/// Grid of abscissae used for the tail rows.
std::vector<double> tail_grid();

/**
 * Empirical CDF of sigma_N over normalized channels for every N, plus tail
 * rows for the largest N computed on the same draws before normalization.
 *
 * Row kinds: "cdf" (P[sigma_N < x], normalized), "tail" (P[N sigma_N >= x]
 * against edelman_tail(x)) and "tail_sqrtn" (P[sqrt(N) sigma_N >= x] against
 * exp(-x^2), the exact law for square complex Gaussian matrices).
 */
ResultTable run_min_singular_cdf(const SimConfig& config);

/**
 * Paired ZF/MMSE bit-error sweep over floored N x N channels.
 *
 * Each trial draws one channel, one QPSK vector and one unit-variance noise
 * vector, and reuses them at every SNR point (noise scaled by sigma_n), for
 * both detectors. Rows whose error count is below 100 are flagged
 * low-confidence.
 */
ResultTable run_ber_sweep(const SimConfig& config);

/**
 * Exact cond(W_mmse)/cond(W_zf) over synthesized channels against the
 * closed-form approximation, per spectrum profile and sigma_min. Uses the
 * first SNR grid value under the 1/sigma_n^2 convention.
 */
ResultTable run_cond_ratio_sweep(const SimConfig& config);

/// Minimum bit errors for a BER row to count as reliable.
inline constexpr std::int64_t kMinReliableErrors = 100;

/**
 * SNR at which a detector's BER first falls to `target`, by linear
 * interpolation of log10(BER) between adjacent grid points. Empty when the
 * curve never crosses.
 */
std::optional<double> snr_at_ber(const ResultTable& ber, std::string_view detector, double target);

/**
 * Lowest grid SNR from which on the ZF and MMSE curves coincide: at that
 * point and every higher one, the paired error difference is within 10% of
 * the ZF errors or within 3 paired standard errors (both zero counts).
 */
std::optional<double> coincidence_snr(const ResultTable& ber);

} // namespace lindet
