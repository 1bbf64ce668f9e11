#include "lindet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lindet/analysis.hpp"
#include "lindet/detection.hpp"
#include "lindet/errors.hpp"
#include "lindet/parallel.hpp"
#include "lindet/stats.hpp"

namespace lindet {

namespace {

constexpr double kCoincidenceRelative = 0.10;
constexpr double kCoincidenceSigmas = 3.0;

RngStream experiment_stream(std::uint64_t seed, std::string_view tag, std::size_t n) {
    return RngStream{seed, 0}.substream(stream_tag(tag)).substream(n);
}

void require_trials(const SimConfig& c, const char* op) {
    if (c.trials < 1) throw InvalidArgumentError(std::string(op) + ": trials must be >= 1");
}

void require_dims(const SimConfig& c, const char* op) {
    if (c.dims.empty()) throw InvalidArgumentError(std::string(op) + ": dims must not be empty");
    for (std::size_t n : c.dims) {
        if (n < 2) throw InvalidArgumentError(std::string(op) + ": every dimension must be >= 2");
    }
}

std::size_t require_single_dim(const SimConfig& c, const char* op) {
    require_dims(c, op);
    if (c.dims.size() != 1) throw InvalidArgumentError(std::string(op) + ": expects exactly one dimension");
    return c.dims.front();
}

void require_snr_grid(const SimConfig& c, const char* op) {
    if (c.snr_grid_db.empty()) throw InvalidArgumentError(std::string(op) + ": SNR grid must not be empty");
    for (double s : c.snr_grid_db) {
        if (!std::isfinite(s)) throw InvalidArgumentError(std::string(op) + ": SNR values must be finite");
    }
}

std::string join(const std::vector<std::size_t>& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    return out.str();
}

std::string join(const std::vector<double>& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << format_real(v[i]);
    return out.str();
}

Cell integer(std::size_t v) {
    return static_cast<std::int64_t>(v);
}

std::vector<double> linear_grid(double start, double stop, double step) {
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
    return out;
}

} // namespace

NoiseModel noise_var_from_snr(double snr_db, std::size_t n) {
    if (n < 1) throw InvalidArgumentError("noise_var_from_snr: n must be >= 1");
    return NoiseModel(static_cast<double>(n) / std::pow(10.0, snr_db / 10.0));
}

ResultTable run_table1(const SimConfig& config) {
    require_dims(config, "run_table1");
    require_trials(config, "run_table1");
    ResultTable table("table1", {"N", "mean_sigma_min", "se_sigma_min", "mean_cond", "se_cond"},
                      config.master_seed, config.trials, std::string(kNoSnrConvention));
    table.set_parameter("dims", join(config.dims));

    for (std::size_t n : config.dims) {
        const RngStream base = experiment_stream(config.master_seed, "table1", n);
        std::vector<double> sigma_min(config.trials);
        std::vector<double> cond(config.trials);
        parallel_for(config.trials, config.workers, [&](std::size_t, std::size_t t) {
            Rng rng(base.substream(t));
            const ChannelRealization c = normalize(sample_standard_gaussian(n, rng));
            sigma_min[t] = c.spectrum.last();
            cond[t] = c.spectrum.first() / c.spectrum.last();
        });
        const MeanEstimate s = estimate_mean(sigma_min);
        const MeanEstimate k = estimate_mean(cond);
        table.add_row({integer(n), s.mean, s.standard_error, k.mean, k.standard_error});
    }
    return table;
}

ResultTable run_gain_sweep(const SimConfig& config) {
    require_dims(config, "run_gain_sweep");
    require_trials(config, "run_gain_sweep");
    require_snr_grid(config, "run_gain_sweep");
    ResultTable table("gain",
                      {"N", "snr_db", "noise_variance", "mean_gain_db", "se_gain_db", "finite_count", "flag"},
                      config.master_seed, config.trials, std::string(kReceiveSnrConvention));
    table.set_parameter("dims", join(config.dims));
    table.set_parameter("snr_db", join(config.snr_grid_db));

    const std::size_t points = config.snr_grid_db.size();
    for (std::size_t n : config.dims) {
        const RngStream base = experiment_stream(config.master_seed, "gain", n);
        std::vector<NoiseModel> noise;
        for (double snr : config.snr_grid_db) noise.push_back(noise_var_from_snr(snr, n));

        // gains[t * points + k]; NaN marks an infinite (excluded) gain.
        std::vector<double> gains(config.trials * points);
        parallel_for(config.trials, config.workers, [&](std::size_t, std::size_t t) {
            Rng rng(base.substream(t));
            const ChannelRealization c = normalize(sample_standard_gaussian(n, rng));
            for (std::size_t k = 0; k < points; ++k) {
                const double g = gain_db(snr_mmse(c.spectrum, noise[k]), snr_zf(c.spectrum, noise[k]));
                gains[t * points + k] = std::isfinite(g) ? g : std::numeric_limits<double>::quiet_NaN();
            }
        });

        for (std::size_t k = 0; k < points; ++k) {
            std::vector<double> finite;
            finite.reserve(config.trials);
            for (std::size_t t = 0; t < config.trials; ++t) {
                const double g = gains[t * points + k];
                if (!std::isnan(g)) finite.push_back(g);
            }
            const MeanEstimate e = estimate_mean(finite);
            const bool excluded = finite.size() != config.trials;
            table.add_row({integer(n), config.snr_grid_db[k], noise[k].variance(),
                           finite.empty() ? Cell{} : Cell{e.mean}, finite.size() < 2 ? Cell{} : Cell{e.standard_error},
                           integer(finite.size()), std::string(excluded ? "infinite_excluded" : "")});
        }
    }
    return table;
}

std::vector<double> cdf_grid() {
    return linear_grid(0.0, 1.5, 0.01);
}

std::vector<double> tail_grid() {
    return linear_grid(0.0, 3.0, 0.1);
}

ResultTable run_min_singular_cdf(const SimConfig& config) {
    require_dims(config, "run_min_singular_cdf");
    require_trials(config, "run_min_singular_cdf");
    ResultTable table("cdf", {"kind", "N", "x", "value", "se", "reference"}, config.master_seed, config.trials,
                      std::string(kNoSnrConvention));
    table.set_parameter("dims", join(config.dims));

    const std::size_t largest = *std::max_element(config.dims.begin(), config.dims.end());
    const std::vector<double> xs = cdf_grid();
    const std::vector<double> tail_xs = tail_grid();
    const auto trials = static_cast<double>(config.trials);

    for (std::size_t n : config.dims) {
        const RngStream base = experiment_stream(config.master_seed, "cdf", n);
        std::vector<double> raw_min(config.trials);
        std::vector<double> normalized_min(config.trials);
        parallel_for(config.trials, config.workers, [&](std::size_t, std::size_t t) {
            Rng rng(base.substream(t));
            const ComplexMatrix h = sample_standard_gaussian(n, rng);
            const double s_min = singular_values(h).last();
            raw_min[t] = s_min;
            normalized_min[t] = s_min * static_cast<double>(n) / h.frobenius_norm();
        });

        std::sort(normalized_min.begin(), normalized_min.end());
        for (double x : xs) {
            const auto below = static_cast<std::size_t>(
                std::lower_bound(normalized_min.begin(), normalized_min.end(), x) - normalized_min.begin());
            const double p = static_cast<double>(below) / trials;
            table.add_row({std::string("cdf"), integer(n), x, p, binomial_standard_error(p, config.trials), Cell{}});
        }

        if (n != largest) continue;
        std::sort(raw_min.begin(), raw_min.end());
        const auto count_at_least = [&](double threshold) {
            const auto it = std::lower_bound(raw_min.begin(), raw_min.end(), threshold);
            return static_cast<double>(raw_min.end() - it) / trials;
        };
        const auto dn = static_cast<double>(n);
        for (double x : tail_xs) {
            const double p = count_at_least(x / dn);
            table.add_row({std::string("tail"), integer(n), x, p, binomial_standard_error(p, config.trials),
                           edelman_tail(x)});
        }
        for (double x : tail_xs) {
            const double p = count_at_least(x / std::sqrt(dn));
            table.add_row({std::string("tail_sqrtn"), integer(n), x, p, binomial_standard_error(p, config.trials),
                           std::exp(-x * x)});
        }
    }
    return table;
}

ResultTable run_ber_sweep(const SimConfig& config) {
    const std::size_t n = require_single_dim(config, "run_ber_sweep");
    require_trials(config, "run_ber_sweep");
    require_snr_grid(config, "run_ber_sweep");
    const double floor = config.sigma_min_floor.value_or(0.0);
    if (!(floor >= 0.0)) throw InvalidArgumentError("run_ber_sweep: sigma_min floor must be nonnegative");

    ResultTable table("ber",
                      {"detector", "snr_db", "noise_variance", "ber", "se_ber", "bit_errors", "bits",
                       "low_confidence", "paired_diff_sq", "sigma_min_floor"},
                      config.master_seed, config.trials, std::string(kReceiveSnrConvention));
    table.set_parameter("n", std::to_string(n));
    table.set_parameter("snr_db", join(config.snr_grid_db));
    table.set_parameter("sigma_min_floor", format_real(floor));

    const std::size_t points = config.snr_grid_db.size();
    std::vector<double> sigma_n;
    std::vector<NoiseModel> noise;
    for (double snr : config.snr_grid_db) {
        noise.push_back(noise_var_from_snr(snr, n));
        sigma_n.push_back(std::sqrt(noise.back().variance()));
    }

    struct Counts {
        std::vector<std::int64_t> zf, mmse, diff_sq;
    };
    const std::size_t workers = effective_workers(config.workers, config.trials);
    std::vector<Counts> per_worker(workers, Counts{std::vector<std::int64_t>(points), std::vector<std::int64_t>(points),
                                                   std::vector<std::int64_t>(points)});

    const RngStream base = experiment_stream(config.master_seed, "ber", n);
    const NoiseModel unit_noise(1.0);
    parallel_for(config.trials, workers, [&](std::size_t w, std::size_t t) {
        Rng rng(base.substream(t));
        const ChannelRealization channel = sample_floored(n, floor, rng);
        const BitBlock bits = BitBlock::random(n, rng);
        const ComplexVector x = qpsk_modulate(bits);
        const ComplexVector unit = sample_noise(n, unit_noise, rng);
        const FilterMatrix zf = zf_filter(channel.matrix);

        ComplexVector scaled(n);
        Counts& acc = per_worker[w];
        for (std::size_t k = 0; k < points; ++k) {
            for (std::size_t i = 0; i < n; ++i) scaled[i] = sigma_n[k] * unit[i];
            const ComplexVector r = transmit(channel.matrix, x, scaled);
            const auto e_zf = static_cast<std::int64_t>(count_bit_errors(bits, equalize_and_slice(zf, r)));
            const FilterMatrix mmse = mmse_filter(channel.matrix, noise[k]);
            const auto e_mmse = static_cast<std::int64_t>(count_bit_errors(bits, equalize_and_slice(mmse, r)));
            acc.zf[k] += e_zf;
            acc.mmse[k] += e_mmse;
            acc.diff_sq[k] += (e_zf - e_mmse) * (e_zf - e_mmse);
        }
    });

    Counts total{std::vector<std::int64_t>(points), std::vector<std::int64_t>(points), std::vector<std::int64_t>(points)};
    for (const Counts& c : per_worker) {
        for (std::size_t k = 0; k < points; ++k) {
            total.zf[k] += c.zf[k];
            total.mmse[k] += c.mmse[k];
            total.diff_sq[k] += c.diff_sq[k];
        }
    }

    const auto bits = static_cast<std::int64_t>(2 * n * config.trials);
    const auto emit = [&](const char* name, const std::vector<std::int64_t>& errors) {
        for (std::size_t k = 0; k < points; ++k) {
            const double ber = static_cast<double>(errors[k]) / static_cast<double>(bits);
            table.add_row({std::string(name), config.snr_grid_db[k], noise[k].variance(), ber,
                           binomial_standard_error(ber, static_cast<std::size_t>(bits)), errors[k], bits,
                           std::int64_t{errors[k] < kMinReliableErrors ? 1 : 0}, total.diff_sq[k], floor});
        }
    };
    emit("zf", total.zf);
    emit("mmse", total.mmse);
    return table;
}

ResultTable run_cond_ratio_sweep(const SimConfig& config) {
    const std::size_t n = require_single_dim(config, "run_cond_ratio_sweep");
    require_trials(config, "run_cond_ratio_sweep");
    require_snr_grid(config, "run_cond_ratio_sweep");
    const double cond = config.cond_target.value_or(15.0);
    if (!(cond >= 1.0)) throw InvalidArgumentError("run_cond_ratio_sweep: cond target must be >= 1");
    if (config.sigma_min_grid.empty()) throw InvalidArgumentError("run_cond_ratio_sweep: sigma_min grid is empty");
    for (double s : config.sigma_min_grid) {
        if (!(s > 0.0)) throw InvalidArgumentError("run_cond_ratio_sweep: sigma_min values must be positive");
    }

    const double snr_db = config.snr_grid_db.front();
    const NoiseModel noise(std::pow(10.0, -snr_db / 10.0));
    ResultTable table("condratio",
                      {"profile", "sigma_min", "noise_variance", "mean_exact_ratio", "se_exact_ratio", "approx_ratio",
                       "approx_rel_error", "mean_cond_w_mmse", "se_cond_w_mmse", "mean_cond_w_zf"},
                      config.master_seed, config.trials, std::string(kInverseNoiseConvention));
    table.set_parameter("n", std::to_string(n));
    table.set_parameter("cond", format_real(cond));
    table.set_parameter("snr_db", format_real(snr_db));
    table.set_parameter("sigma_min", join(config.sigma_min_grid));

    const std::pair<SpectrumProfile, const char*> profiles[] = {{SpectrumProfile::two_level, "two_level"},
                                                                 {SpectrumProfile::geometric, "geometric"}};
    for (const auto& [profile, name] : profiles) {
        for (std::size_t g = 0; g < config.sigma_min_grid.size(); ++g) {
            const double sigma_min = config.sigma_min_grid[g];
            const RngStream base = experiment_stream(config.master_seed, "condratio", n).substream(g);
            std::vector<double> ratio(config.trials);
            std::vector<double> cond_mmse(config.trials);
            std::vector<double> cond_zf(config.trials);
            parallel_for(config.trials, config.workers, [&](std::size_t, std::size_t t) {
                Rng rng(base.substream(t));
                const ChannelRealization c = synthesize_spectrum(n, cond, sigma_min, rng, profile);
                const CondRatioReport r = cond_ratio_exact(c.matrix, noise);
                ratio[t] = r.exact_ratio;
                cond_mmse[t] = r.cond_w_mmse;
                cond_zf[t] = r.cond_w_zf;
            });
            const MeanEstimate er = estimate_mean(ratio);
            const MeanEstimate em = estimate_mean(cond_mmse);
            const MeanEstimate ez = estimate_mean(cond_zf);
            const double approx = cond_ratio_approx(cond * sigma_min, sigma_min, noise);
            table.add_row({std::string(name), sigma_min, noise.variance(), er.mean, er.standard_error, approx,
                           std::abs(approx - er.mean) / er.mean, em.mean, em.standard_error, ez.mean});
        }
    }
    return table;
}

std::optional<double> snr_at_ber(const ResultTable& ber, std::string_view detector, double target) {
    std::vector<std::pair<double, double>> curve;
    for (std::size_t r = 0; r < ber.row_count(); ++r) {
        if (ber.text(r, "detector") == detector) curve.emplace_back(ber.number(r, "snr_db"), ber.number(r, "ber"));
    }
    std::sort(curve.begin(), curve.end());
    if (curve.empty() || curve.front().second <= target) return std::nullopt;
    for (std::size_t k = 1; k < curve.size(); ++k) {
        const auto [s0, b0] = curve[k - 1];
        const auto [s1, b1] = curve[k];
        if (b1 > target) continue;
        if (b1 <= 0.0) return s0 + (s1 - s0) * (b0 - target) / (b0 - b1);
        const double l0 = std::log10(b0);
        const double l1 = std::log10(b1);
        if (l0 == l1) return s1;
        return s0 + (s1 - s0) * (l0 - std::log10(target)) / (l0 - l1);
    }
    return std::nullopt;
}

std::optional<double> coincidence_snr(const ResultTable& ber) {
    struct Point {
        double zf = 0, mmse = 0, diff_sq = 0;
    };
    std::map<double, Point> points;
    for (std::size_t r = 0; r < ber.row_count(); ++r) {
        Point& p = points[ber.number(r, "snr_db")];
        const std::string det = ber.text(r, "detector");
        if (det == "zf") p.zf = ber.number(r, "bit_errors");
        if (det == "mmse") p.mmse = ber.number(r, "bit_errors");
        p.diff_sq = ber.number(r, "paired_diff_sq");
    }
    const auto trials = static_cast<double>(ber.trials());
    const auto coincident = [&](const Point& p) {
        const double diff = p.zf - p.mmse;
        if (std::abs(diff) <= kCoincidenceRelative * p.zf) return true;
        const double var = trials > 1 ? (p.diff_sq - diff * diff / trials) / (trials - 1.0) : p.diff_sq;
        const double se_total = std::sqrt(std::max(var, 0.0) * trials);
        return std::abs(diff) <= kCoincidenceSigmas * se_total;
    };

    std::optional<double> result;
    for (auto it = points.rbegin(); it != points.rend(); ++it) {
        if (!coincident(it->second)) break;
        result = it->first;
    }
    return result;
}

} // namespace lindet
