#include "lindet/properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "lindet/analysis.hpp"
#include "lindet/channel.hpp"
#include "lindet/detection.hpp"
#include "lindet/experiments.hpp"
#include "lindet/linalg.hpp"

namespace lindet {

namespace {

constexpr std::size_t kMatrixDims[] = {2, 4, 8};

RngStream suite_stream(std::uint64_t seed, std::string_view check) {
    return RngStream{seed, 0}.substream(stream_tag("props")).substream(stream_tag(check));
}

PropertyCheck make_check(std::string name, bool passed, std::size_t samples, double worst,
                         std::string_view worst_label) {
    std::ostringstream detail;
    detail << "samples=" << samples << " " << worst_label << "=" << format_real(worst);
    return {std::move(name), passed, detail.str()};
}

Spectrum random_spectrum(Rng& rng, std::size_t n) {
    std::uniform_real_distribution<double> log_s2(-8.0, 4.0);
    std::vector<double> s(n);
    for (double& v : s) v = std::sqrt(std::exp(log_s2(rng.engine())));
    std::sort(s.begin(), s.end(), std::greater<>());
    return Spectrum(std::move(s));
}

double random_noise_variance(Rng& rng) {
    std::uniform_real_distribution<double> log_v(-14.0, 4.0);
    return std::exp(log_v(rng.engine()));
}

double identity_residual(const ComplexMatrix& q) {
    return (q.adjoint() * q - ComplexMatrix::identity(q.cols())).frobenius_norm();
}

PropertyCheck check_svd(std::uint64_t seed) {
    const RngStream base = suite_stream(seed, "svd");
    double worst = 0.0;
    bool ok = true;
    constexpr std::size_t samples = 200;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(base.substream(t));
        const std::size_t n = kMatrixDims[t % 3];
        const ComplexMatrix a = sample_standard_gaussian(n, rng);
        const SvdResult f = svd(a);
        const double recon = (f.left_basis * ComplexMatrix::diagonal(f.spectrum.values()) * f.right_basis.adjoint() - a)
                                 .frobenius_norm() /
                             a.frobenius_norm();
        const double unit = std::max(identity_residual(f.left_basis), identity_residual(f.right_basis)) /
                            static_cast<double>(n);
        worst = std::max({worst, recon, unit});
        ok = ok && recon <= 1e-10 && unit <= 1e-10;
    }
    return make_check("svd_reconstruction_unitarity", ok, samples, worst, "worst_residual");
}

PropertyCheck check_gram_spectrum(std::uint64_t seed) {
    const RngStream base = suite_stream(seed, "gram");
    double worst = 0.0;
    constexpr std::size_t samples = 200;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(base.substream(t));
        const ComplexMatrix h = sample_standard_gaussian(kMatrixDims[t % 3], rng);
        const Spectrum squared = svd(h).spectrum.squared();
        const std::vector<double> eig = hermitian_eigenvalues(gram(h));
        for (std::size_t i = 0; i < eig.size(); ++i) {
            worst = std::max(worst, std::abs(eig[i] - squared[i]) / squared[i]);
        }
    }
    return make_check("gram_eigenvalues_are_squared_singular_values", worst <= 1e-8, samples, worst,
                      "worst_relative_error");
}

PropertyCheck check_inverse_condition(std::uint64_t seed) {
    const RngStream base = suite_stream(seed, "inverse");
    double worst = 0.0;
    constexpr std::size_t samples = 200;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(base.substream(t));
        const ComplexMatrix a = sample_standard_gaussian(kMatrixDims[t % 3], rng);
        const double c = condition_number(a);
        worst = std::max(worst, std::abs(condition_number(inverse(a)) - c) / c);
    }
    return make_check("cond_of_inverse_equals_cond", worst <= 1e-8, samples, worst, "worst_relative_error");
}

PropertyCheck check_weyl(std::uint64_t seed) {
    const RngStream base = suite_stream(seed, "weyl");
    constexpr std::size_t samples = 1000;
    std::size_t violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(base.substream(t));
        const std::size_t n = 2 + t % 7;
        const ComplexMatrix sigma = gram(sample_standard_gaussian(n, rng));
        const ComplexMatrix delta = gram(sample_standard_gaussian(n, rng) * Complex(std::exp(rng.standard_normal())));
        const auto clamp = [](std::vector<double> v) {
            for (double& x : v) x = std::max(x, 0.0);
            return Spectrum(std::move(v));
        };
        const Spectrum s_sigma = clamp(hermitian_eigenvalues(sigma));
        const Spectrum s_delta = clamp(hermitian_eigenvalues(delta));
        const std::vector<double> gamma = hermitian_eigenvalues(sigma + delta);
        for (std::size_t i = 1; i <= n; ++i) {
            const double margin = gamma[i - 1] - weyl_lower_bound(i, s_sigma, s_delta);
            worst_margin = std::min(worst_margin, margin);
            if (margin < -1e-9) ++violations;
        }
    }
    return make_check("weyl_lower_bound_valid", violations == 0, samples, worst_margin, "smallest_margin");
}

PropertyCheck check_identity_shift(std::uint64_t seed) {
    const RngStream base = suite_stream(seed, "shift");
    constexpr std::size_t samples = 200;
    double worst = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(base.substream(t));
        const std::size_t n = kMatrixDims[t % 3];
        const double v = random_noise_variance(rng);
        const ComplexMatrix sigma = gram(sample_standard_gaussian(n, rng));
        const std::vector<double> s = hermitian_eigenvalues(sigma);
        const std::vector<double> g =
            hermitian_eigenvalues(sigma + ComplexMatrix::identity(n) * Complex(v));
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(g[i] - (s[i] + v)));
    }
    return make_check("identity_shift_is_tight", worst <= 1e-9, samples, worst, "worst_abs_error");
}

PropertyCheck check_mmse_zero_noise(std::uint64_t seed) {
    const RngStream base = suite_stream(seed, "mmse0");
    constexpr std::size_t samples = 200;
    double worst = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(base.substream(t));
        const ComplexMatrix h = normalize(sample_standard_gaussian(kMatrixDims[t % 3], rng)).matrix;
        const ComplexMatrix zf = zf_filter(h).matrix;
        const ComplexMatrix mmse = mmse_filter(h, NoiseModel(0.0)).matrix;
        worst = std::max(worst, (mmse - zf).frobenius_norm() / zf.frobenius_norm());
    }
    return make_check("mmse_with_zero_noise_equals_zf", worst <= 1e-9, samples, worst, "worst_relative_error");
}

PropertyCheck check_snr_ordering(std::uint64_t seed) {
    const RngStream base = suite_stream(seed, "snr_order");
    constexpr std::size_t samples = 500;
    double worst = std::numeric_limits<double>::infinity();
    bool abc_ok = true;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(base.substream(t));
        const Spectrum s = random_spectrum(rng, 1 + t % 16);
        const NoiseModel noise(random_noise_variance(rng));
        const MmseAbc abc = mmse_abc(s, noise);
        abc_ok = abc_ok && abc.a >= abc.b * (1.0 - 1e-12);
        worst = std::min(worst, snr_mmse(s, noise) / snr_zf(s, noise));
    }
    return make_check("snr_mmse_at_least_snr_zf_and_a_ge_b", abc_ok && worst >= 1.0 - 1e-9, samples, worst,
                      "smallest_ratio");
}

PropertyCheck check_snr_limit(std::uint64_t seed) {
    // Spectra with sigma_i^2 in [1e-2, 1e2], so that 1e-6 is far below every sigma_i^2.
    const RngStream base = suite_stream(seed, "snr_limit");
    constexpr std::size_t samples = 200;
    const double sweep[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    std::uniform_real_distribution<double> log_s2(std::log(1e-2), std::log(1e2));
    double worst = 0.0;
    bool ok = true;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(base.substream(t));
        std::vector<double> values(2 + t % 15);
        for (double& v : values) v = std::sqrt(std::exp(log_s2(rng.engine())));
        std::sort(values.begin(), values.end(), std::greater<>());
        const Spectrum s(std::move(values));
        double previous = std::numeric_limits<double>::infinity();
        for (double v : sweep) {
            const NoiseModel noise(v);
            const double ratio = snr_mmse(s, noise) / snr_zf(s, noise);
            ok = ok && ratio >= 1.0 - 1e-9 && ratio <= previous * (1.0 + 1e-9);
            previous = ratio;
        }
        worst = std::max(worst, previous - 1.0);
        ok = ok && previous <= 1.0 + 1e-4;
    }
    return make_check("snr_ratio_tends_to_one", ok, samples, worst, "largest_excess_at_1e-6");
}

PropertyCheck check_cond_ratio(std::uint64_t seed) {
    const RngStream base = suite_stream(seed, "cond_ratio");
    constexpr std::size_t samples = 200;
    const double variances[] = {1e-3, 1e-2, 1e-1, 1.0, 10.0};
    double worst = 0.0;
    bool approx_ok = true;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(base.substream(t));
        const ComplexMatrix h = normalize(sample_standard_gaussian(kMatrixDims[t % 3], rng)).matrix;
        const CondRatioReport r = cond_ratio_exact(h, NoiseModel(variances[t % 5]));
        worst = std::max(worst, r.exact_ratio);
        approx_ok = approx_ok && r.approx_ratio <= 1.0;
    }
    return make_check("mmse_never_worsens_conditioning", approx_ok && worst <= 1.0 + 1e-9, samples, worst,
                      "largest_exact_ratio");
}

PropertyCheck check_distortion_oracle(std::uint64_t seed, std::size_t workers) {
    const RngStream base = suite_stream(seed, "distortion");
    constexpr std::size_t channels = 5;
    constexpr std::size_t trials = 20000;
    const NoiseModel noise(0.1);
    double worst = 0.0;
    for (std::size_t t = 0; t < channels; ++t) {
        Rng rng(base.substream(t));
        const ChannelRealization c = normalize(sample_standard_gaussian(4, rng));
        const DistortionEstimate e =
            empirical_distortion_snr(c.matrix, zf_filter(c.matrix), noise, trials, base.substream(1000 + t), workers);
        worst = std::max(worst, std::abs(e.snr - snr_zf(c.spectrum, noise)) / e.standard_error);
    }
    return make_check("zf_distortion_oracle_matches_closed_form", worst <= 3.0, channels, worst,
                      "largest_z_score");
}

PropertyCheck check_worked_example(std::uint64_t seed, std::size_t workers) {
    // sigma^2 = (3, 1), sigma_n^2 = 0.1
    const Spectrum s({std::sqrt(3.0), 1.0});
    const NoiseModel noise(0.1);
    const double zf = snr_zf(s, noise);
    const double mmse = snr_mmse(s, noise);
    const ComplexMatrix h = ComplexMatrix::diagonal(s.values());
    const DistortionEstimate oracle = empirical_distortion_snr(h, mmse_filter(h, noise), noise, 100000,
                                                               suite_stream(seed, "worked_example"), workers);
    const bool ok = std::abs(zf - 15.0) <= 5e-4 * 15.0 && std::abs(mmse - 15.319) <= 5e-4 * 15.319 &&
                    std::abs(oracle.snr - 16.24) <= 0.02 * 16.24;
    std::ostringstream detail;
    detail << "snr_zf=" << format_real(zf) << " snr_mmse=" << format_real(mmse)
           << " mmse_distortion_oracle=" << format_real(oracle.snr);
    return {"worked_example_values", ok, detail.str()};
}

PropertyCheck check_cdf_dominance(std::uint64_t seed, std::size_t workers) {
    SimConfig config;
    config.dims = {2, 4, 8};
    config.trials = 10000;
    config.master_seed = seed;
    config.workers = workers;
    const ResultTable table = run_min_singular_cdf(config);

    // cdf[N][x-index] = (value, se)
    std::map<std::int64_t, std::vector<std::pair<double, double>>> cdf;
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        if (table.text(r, "kind") != "cdf") continue;
        cdf[static_cast<std::int64_t>(table.number(r, "N"))].emplace_back(table.number(r, "value"),
                                                                           table.number(r, "se"));
    }
    double worst = std::numeric_limits<double>::infinity();
    std::size_t points = 0;
    for (auto small = cdf.begin(); small != cdf.end(); ++small) {
        for (auto large = std::next(small); large != cdf.end(); ++large) {
            for (std::size_t k = 0; k < small->second.size(); ++k) {
                const auto [ps, ss] = small->second[k];
                const auto [pl, sl] = large->second[k];
                const double slack = 3.0 * std::sqrt(ss * ss + sl * sl);
                worst = std::min(worst, pl - ps + slack);
                ++points;
            }
        }
    }
    return make_check("min_singular_cdf_dominance", worst >= 0.0, points, worst, "smallest_margin");
}

PropertyCheck check_ber_ordering(std::uint64_t seed, std::size_t workers) {
    SimConfig config;
    config.dims = {4};
    config.snr_grid_db = {0, 5, 10, 15, 20, 25, 30};
    config.trials = 20000;
    config.master_seed = seed;
    config.workers = workers;
    const ResultTable table = run_ber_sweep(config);

    std::map<std::string, std::vector<std::pair<double, double>>> curves;
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        curves[table.text(r, "detector")].emplace_back(table.number(r, "ber"), table.number(r, "se_ber"));
    }
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& [name, curve] : curves) {
        for (std::size_t k = 1; k < curve.size(); ++k) {
            const double slack = 3.0 * std::hypot(curve[k].second, curve[k - 1].second);
            worst = std::min(worst, curve[k - 1].first - curve[k].first + slack);
        }
    }
    const auto& zf = curves["zf"];
    const auto& mmse = curves["mmse"];
    for (std::size_t k = 0; k < zf.size(); ++k) {
        const double slack = 3.0 * std::hypot(zf[k].second, mmse[k].second);
        worst = std::min(worst, zf[k].first - mmse[k].first + slack);
    }
    return make_check("ber_monotone_and_mmse_dominant", worst >= 0.0, config.snr_grid_db.size(), worst,
                      "smallest_margin");
}

} // namespace

bool PropertyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

ResultTable PropertyReport::table(std::uint64_t seed) const {
    ResultTable t("props", {"check", "passed", "detail"}, seed, checks.size(), std::string(kNoSnrConvention));
    for (const auto& c : checks) t.add_row({c.name, std::int64_t{c.passed ? 1 : 0}, c.detail});
    return t;
}

PropertyReport run_property_suite(std::uint64_t seed, std::size_t workers) {
    PropertyReport report;
    report.checks.push_back(check_svd(seed));
    report.checks.push_back(check_gram_spectrum(seed));
    report.checks.push_back(check_inverse_condition(seed));
    report.checks.push_back(check_weyl(seed));
    report.checks.push_back(check_identity_shift(seed));
    report.checks.push_back(check_mmse_zero_noise(seed));
    report.checks.push_back(check_snr_ordering(seed));
    report.checks.push_back(check_snr_limit(seed));
    report.checks.push_back(check_cond_ratio(seed));
    report.checks.push_back(check_distortion_oracle(seed, workers));
    report.checks.push_back(check_worked_example(seed, workers));
    report.checks.push_back(check_cdf_dominance(seed, workers));
    report.checks.push_back(check_ber_ordering(seed, workers));
    return report;
}

} // namespace lindet
