#include "lindet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lindet/errors.hpp"
#include "lindet/parallel.hpp"
#include "lindet/stats.hpp"

namespace lindet {

namespace {

constexpr double kMmseDenominatorGuard = 1e-12;
// Below this distortion-to-signal ratio the filter output equals x up to round-off.
constexpr double kZeroDistortion = 1e-20;

void require_positive_spectrum(const Spectrum& s, const char* op) {
    if (s.size() == 0) throw InvalidArgumentError(std::string(op) + ": empty spectrum");
    if (!(s.last() > 0.0)) {
        throw SingularMatrixError(std::string(op) + ": spectrum contains a zero singular value", 0.0);
    }
}

} // namespace

double weyl_lower_bound(std::size_t i, const Spectrum& sigma, const Spectrum& delta) {
    const std::size_t n = sigma.size();
    if (delta.size() != n) throw DimensionError("weyl_lower_bound: spectra lengths differ");
    if (i < 1 || i > n) throw InvalidArgumentError("weyl_lower_bound: index out of range");
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= n - i; ++k) {
        best = std::max(best, sigma[i - 1 + k] + delta[n - 1 - k]);
    }
    return best;
}

double cond_ratio_approx(double sigma_1, double sigma_n, const NoiseModel& noise) {
    if (!(sigma_n > 0.0)) throw SingularMatrixError("cond_ratio_approx: sigma_N must be positive", 0.0);
    if (sigma_1 < sigma_n) throw InvalidArgumentError("cond_ratio_approx: expected sigma_1 >= sigma_N");
    const double v = noise.variance();
    return (1.0 + v / (sigma_1 * sigma_1)) / (1.0 + v / (sigma_n * sigma_n));
}

CondRatioReport cond_ratio_exact(const ComplexMatrix& h, const NoiseModel& noise) {
    const Spectrum s = singular_values(h);
    require_positive_spectrum(s, "cond_ratio_exact");
    const FilterMatrix zf = zf_filter(h);
    const FilterMatrix mmse = mmse_filter(h, noise);
    CondRatioReport report{};
    report.cond_w_zf = condition_number(zf.matrix);
    report.cond_w_mmse = condition_number(mmse.matrix);
    report.exact_ratio = report.cond_w_mmse / report.cond_w_zf;
    report.approx_ratio = cond_ratio_approx(s.first(), s.last(), noise);
    return report;
}

double snr_zf(const Spectrum& spectrum, const NoiseModel& noise) {
    require_positive_spectrum(spectrum, "snr_zf");
    const double v = noise.variance();
    if (v == 0.0) return kInfiniteSnr;
    double denom = 0.0;
    for (double s : spectrum.values()) denom += v / (s * s);
    return static_cast<double>(spectrum.size()) / denom;
}

MmseAbc mmse_abc(const Spectrum& spectrum, const NoiseModel& noise) {
    if (spectrum.size() == 0) throw InvalidArgumentError("mmse_abc: empty spectrum");
    const double v = noise.variance();
    double sum_ratio = 0.0;
    MmseAbc out{0.0, 0.0, 0.0};
    for (double s : spectrum.values()) {
        const double s2 = s * s;
        const double d = s2 + v;
        if (d == 0.0) {
            throw SingularMatrixError("mmse_abc: zero singular value with zero noise variance", 0.0);
        }
        const double ratio = s2 / d;
        sum_ratio += ratio;
        out.b += ratio * ratio;
        out.c += s2 / (d * d);
    }
    out.a = sum_ratio * sum_ratio;
    return out;
}

double snr_mmse(const Spectrum& spectrum, const NoiseModel& noise) {
    const MmseAbc abc = mmse_abc(spectrum, noise);
    const double n = static_cast<double>(spectrum.size());
    const double v = noise.variance();
    const double numer = abc.a + abc.b;
    // N b - a = N sum_i (r_i - mean r)^2 with r_i = 1 - q_i, q_i = v / (s_i^2 + v).
    // Evaluating it through the q_i avoids cancelling two nearly equal O(N^2)
    // terms when v is small.
    std::vector<double> q;
    q.reserve(spectrum.size());
    for (double s : spectrum.values()) q.push_back(v / (s * s + v));
    const double q_mean = compensated_sum(q) / n;
    for (double& x : q) x = (x - q_mean) * (x - q_mean);
    const double spread = n * compensated_sum(q);
    const double denom = v * (n + 1.0) * abc.c + spread;
    const double guard = kMmseDenominatorGuard * numer;
    if (std::abs(denom) <= guard) return kInfiniteSnr;
    if (denom < 0.0) throw FormulaDomainError("snr_mmse: negative denominator");
    return numer / denom;
}

double gain_db(double snr_mmse_lin, double snr_zf_lin) {
    if (!std::isfinite(snr_mmse_lin) || !std::isfinite(snr_zf_lin)) return kInfiniteSnr;
    if (!(snr_mmse_lin > 0.0) || !(snr_zf_lin > 0.0)) {
        throw InvalidArgumentError("gain_db: SNRs must be positive");
    }
    return 10.0 * std::log10(snr_mmse_lin / snr_zf_lin);
}

double edelman_tail(double x) {
    if (!(x >= 0.0)) throw InvalidArgumentError("edelman_tail: x must be nonnegative");
    return std::exp(-x - 0.5 * x * x);
}

DistortionEstimate empirical_distortion_snr(const ComplexMatrix& h, const FilterMatrix& w, const NoiseModel& noise,
                                            std::size_t trials, const RngStream& stream, std::size_t workers) {
    if (trials == 0) throw InvalidArgumentError("empirical_distortion_snr: trials must be >= 1");
    const std::size_t n = h.rows();
    if (!h.is_square() || w.matrix.rows() != n || w.matrix.cols() != n) {
        throw DimensionError("empirical_distortion_snr: filter and channel dimensions differ");
    }

    std::vector<double> signal(trials);
    std::vector<double> distortion(trials);
    parallel_for(trials, workers, [&](std::size_t, std::size_t t) {
        Rng rng(stream.substream(t));
        const ComplexVector x = qpsk_modulate(BitBlock::random(n, rng));
        const ComplexVector noise_sample = sample_noise(n, noise, rng);
        const ComplexVector y = w.matrix * transmit(h, x, noise_sample);
        double e = 0.0;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            e += std::norm(y[i] - x[i]);
            s += std::norm(x[i]);
        }
        signal[t] = s;
        distortion[t] = e;
    });

    const double total_signal = compensated_sum(signal);
    const double total_distortion = compensated_sum(distortion);
    DistortionEstimate out{kInfiniteSnr, 0.0, trials};
    if (total_distortion <= kZeroDistortion * total_signal) return out;

    const double ratio = total_signal / total_distortion;
    out.snr = ratio;
    if (trials > 1) {
        // Ratio estimator: var(S - R D) / (T mean(D)^2).
        const double tn = static_cast<double>(trials);
        const double mean_d = total_distortion / tn;
        std::vector<double> residual(trials);
        for (std::size_t t = 0; t < trials; ++t) {
            const double r = signal[t] - ratio * distortion[t];
            residual[t] = r * r;
        }
        const double var = compensated_sum(residual) / (tn - 1.0);
        out.standard_error = std::sqrt(var / tn) / mean_d;
    }
    return out;
}

} // namespace lindet
