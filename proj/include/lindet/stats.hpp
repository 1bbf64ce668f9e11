#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace lindet {

/// Neumaier-compensated sum, evaluated in index order.
inline double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    return sum + carry;
}

struct MeanEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t count = 0;
};

/// Sample mean with standard error s / sqrt(n) (unbiased sample variance).
inline MeanEstimate estimate_mean(std::span<const double> values) {
    MeanEstimate e;
    e.count = values.size();
    if (values.empty()) return e;
    const double n = static_cast<double>(values.size());
    e.mean = compensated_sum(values) / n;
    if (values.size() < 2) return e;
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.standard_error = std::sqrt(ss / (n - 1.0) / n);
    return e;
}

/// Binomial standard error sqrt(p (1 - p) / n).
inline double binomial_standard_error(double p, std::size_t n) {
    return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

} // namespace lindet
