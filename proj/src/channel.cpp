#include "lindet/channel.hpp"

#include <cmath>
#include <sstream>

#include "lindet/errors.hpp"

namespace lindet {

NoiseModel::NoiseModel(double variance) : variance_(variance) {
    if (!std::isfinite(variance) || variance < 0.0) {
        throw InvalidArgumentError("NoiseModel: variance must be finite and nonnegative");
    }
}

ComplexMatrix sample_standard_gaussian(std::size_t n, Rng& rng) {
    if (n == 0) throw InvalidArgumentError("sample_standard_gaussian: n must be >= 1");
    ComplexMatrix h(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) h(r, c) = rng.complex_normal();
    }
    return h;
}

ComplexMatrix sample_standard_gaussian(std::size_t n, const RngStream& stream) {
    Rng rng(stream);
    return sample_standard_gaussian(n, rng);
}

ChannelRealization normalize(const ComplexMatrix& h) {
    if (!h.is_square() || h.rows() == 0) throw DimensionError("normalize: channel must be square");
    if (!h.all_finite()) throw InvalidArgumentError("normalize: channel has non-finite entries");
    const double norm = h.frobenius_norm();
    if (norm == 0.0) throw DegenerateInputError("normalize: all-zero channel");
    ComplexMatrix scaled = h * Complex(static_cast<double>(h.rows()) / norm);
    Spectrum s = singular_values(scaled);
    return {std::move(scaled), std::move(s), provenance::Normalized{}};
}

ChannelRealization sample_floored(std::size_t n, double sigma_min, Rng& rng, std::size_t max_attempts,
                                  std::size_t* attempts_used) {
    if (!(sigma_min >= 0.0) || !std::isfinite(sigma_min)) {
        throw InvalidArgumentError("sample_floored: sigma_min must be finite and nonnegative");
    }
    if (max_attempts == 0) throw InvalidArgumentError("sample_floored: max_attempts must be >= 1");
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        ChannelRealization c = normalize(sample_standard_gaussian(n, rng));
        if (c.spectrum.last() >= sigma_min) {
            c.provenance = provenance::Floored{sigma_min};
            if (attempts_used) *attempts_used = attempt + 1;
            return c;
        }
    }
    std::ostringstream msg;
    msg << "sample_floored: no " << n << "x" << n << " channel with sigma_min >= " << sigma_min << " in "
        << max_attempts << " attempts";
    throw SamplingExhaustedError(msg.str());
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
    const ComplexMatrix z = sample_standard_gaussian(n, rng);
    Eigen::HouseholderQR<ComplexMatrix::Storage> qr(z.eigen());
    ComplexMatrix::Storage q = qr.householderQ();
    const ComplexMatrix::Storage& r = qr.matrixQR();
    // Q R = Q D D^{-1} R with D = diag(phase(r_ii)); Q D has a positive-diagonal R factor.
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const double mag = std::abs(r(i, i));
        const Complex phase = mag > 0.0 ? r(i, i) / mag : Complex(1.0);
        q.col(i) *= phase;
    }
    return ComplexMatrix(std::move(q));
}

Spectrum designed_spectrum(std::size_t n, double cond, double sigma_min, SpectrumProfile profile) {
    if (n < 2) throw InvalidArgumentError("synthesize_spectrum: n must be >= 2");
    if (!(cond >= 1.0) || !std::isfinite(cond)) throw InvalidArgumentError("synthesize_spectrum: cond must be >= 1");
    if (!(sigma_min > 0.0) || !std::isfinite(sigma_min)) {
        throw InvalidArgumentError("synthesize_spectrum: sigma_min must be positive");
    }
    const double top = cond * sigma_min;
    std::vector<double> s(n);
    switch (profile) {
    case SpectrumProfile::geometric:
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(n - 1 - i) / static_cast<double>(n - 1);
            s[i] = sigma_min * std::pow(cond, t);
        }
        break;
    case SpectrumProfile::two_level:
        for (std::size_t i = 0; i < n; ++i) s[i] = i < (n + 1) / 2 ? top : sigma_min;
        break;
    }
    s.front() = top;
    s.back() = sigma_min;
    return Spectrum(std::move(s));
}

ChannelRealization synthesize_spectrum(std::size_t n, double cond, double sigma_min, Rng& rng,
                                       SpectrumProfile profile) {
    Spectrum s = designed_spectrum(n, cond, sigma_min, profile);
    const ComplexMatrix u = haar_unitary(n, rng);
    const ComplexMatrix v = haar_unitary(n, rng);
    ComplexMatrix h = u * ComplexMatrix::diagonal(s.values()) * v.adjoint();
    return {std::move(h), std::move(s), provenance::Synthesized{cond, sigma_min}};
}

ComplexVector sample_noise(std::size_t n, const NoiseModel& noise, Rng& rng) {
    ComplexVector out(n);
    if (noise.variance() == 0.0) return out;
    for (Complex& z : out) z = rng.complex_normal(noise.variance());
    return out;
}

ComplexVector transmit(const ComplexMatrix& h, std::span<const Complex> x, std::span<const Complex> noise) {
    if (noise.size() != h.rows()) throw DimensionError("transmit: noise length differs from receive antennas");
    ComplexVector r = h * x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += noise[i];
    return r;
}

} // namespace lindet
