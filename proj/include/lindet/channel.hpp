#pragma once

#include <cstddef>
#include <variant>

#include "lindet/linalg.hpp"
#include "lindet/rng.hpp"

namespace lindet {

namespace provenance {
struct Raw {};
/// Scaled so that sum_i sigma_i^2 = N^2.
struct Normalized {};
/// Normalized and accepted only when sigma_N >= sigma_min.
struct Floored {
    double sigma_min;
};
/// U diag(sigma) V^H with a prescribed spectrum; not normalized.
struct Synthesized {
    double cond;
    double sigma_min;
};
} // namespace provenance

using Provenance =
    std::variant<provenance::Raw, provenance::Normalized, provenance::Floored, provenance::Synthesized>;

/// A sampled channel together with its cached singular values.
struct ChannelRealization {
    ComplexMatrix matrix;
    Spectrum spectrum;
    Provenance provenance;

    std::size_t dimension() const noexcept { return matrix.rows(); }
};

/// Additive noise with E[n n^H] = variance * I.
class NoiseModel {
public:
    /// Throws InvalidArgumentError for negative or non-finite variance.
    explicit NoiseModel(double variance);

    double variance() const noexcept { return variance_; }

private:
    double variance_;
};

inline constexpr std::size_t kDefaultMaxAttempts = 1'000'000;

/// Interior singular-value layout used by synthesize_spectrum.
enum class SpectrumProfile {
    /// sigma_i geometrically spaced between cond*sigma_min and sigma_min.
    geometric,
    /// First ceil(n/2) values at cond*sigma_min, the rest at sigma_min.
    two_level,
};

/// n x n matrix of i.i.d. CN(0, 1) entries (real and imaginary parts each of variance 1/2).
ComplexMatrix sample_standard_gaussian(std::size_t n, Rng& rng);
ComplexMatrix sample_standard_gaussian(std::size_t n, const RngStream& stream);

/// Scales H by N / ||H||_F so that its squared Frobenius norm is N^2.
ChannelRealization normalize(const ComplexMatrix& h);

/**
 * Rejection sampler over normalized Gaussian channels.
 *
 * Draws, normalizes and accepts the first realization whose smallest singular
 * value is at least sigma_min. Throws SamplingExhaustedError after
 * max_attempts rejections. When attempts_used is given it receives the
 * number of draws consumed, including the accepted one.
 */
ChannelRealization sample_floored(std::size_t n, double sigma_min, Rng& rng,
                                  std::size_t max_attempts = kDefaultMaxAttempts, std::size_t* attempts_used = nullptr);

/// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

/// H = U diag(sigma) V^H with sigma_1 = cond * sigma_min and sigma_n = sigma_min.
ChannelRealization synthesize_spectrum(std::size_t n, double cond, double sigma_min, Rng& rng,
                                       SpectrumProfile profile = SpectrumProfile::geometric);

/// The singular values synthesize_spectrum would impose, descending.
Spectrum designed_spectrum(std::size_t n, double cond, double sigma_min, SpectrumProfile profile);

ComplexVector sample_noise(std::size_t n, const NoiseModel& noise, Rng& rng);

/// r = H x + n.
ComplexVector transmit(const ComplexMatrix& h, std::span<const Complex> x, std::span<const Complex> noise);

} // namespace lindet
