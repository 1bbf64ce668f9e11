#include "lindet/detection.hpp"

#include <cmath>

#include "lindet/errors.hpp"

namespace lindet {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

FilterMatrix regularized_filter(const ComplexMatrix& h, double noise_variance, FilterKind kind) {
    if (!h.is_square() || h.rows() == 0) throw DimensionError("filter: channel must be square");
    const ComplexMatrix h_adj = h.adjoint();
    ComplexMatrix g = gram(h);
    if (noise_variance > 0.0) g += ComplexMatrix::identity(h.rows()) * Complex(noise_variance);
    return {kind, noise_variance, inverse(g) * h_adj};
}

} // namespace

BitBlock::BitBlock(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.size() % 2 != 0) throw FramingError("BitBlock: QPSK needs an even number of bits");
    for (std::uint8_t b : bits_) {
        if (b > 1) throw InvalidArgumentError("BitBlock: bits must be 0 or 1");
    }
}

BitBlock BitBlock::random(std::size_t symbols, Rng& rng) {
    std::vector<std::uint8_t> bits(2 * symbols);
    for (auto& b : bits) b = rng.bit();
    return BitBlock(std::move(bits));
}

ComplexVector qpsk_modulate(const BitBlock& bits) {
    ComplexVector x(bits.symbol_count());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double re = 1.0 - 2.0 * bits[2 * i];
        const double im = 1.0 - 2.0 * bits[2 * i + 1];
        x[i] = {re * kInvSqrt2, im * kInvSqrt2};
    }
    return x;
}

BitBlock qpsk_slice(std::span<const Complex> y) {
    std::vector<std::uint8_t> bits(2 * y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        bits[2 * i] = y[i].real() < 0.0 ? 1 : 0;
        bits[2 * i + 1] = y[i].imag() < 0.0 ? 1 : 0;
    }
    return BitBlock(std::move(bits));
}

FilterMatrix zf_filter(const ComplexMatrix& h) {
    return regularized_filter(h, 0.0, FilterKind::zero_forcing);
}

FilterMatrix mmse_filter(const ComplexMatrix& h, const NoiseModel& noise) {
    return regularized_filter(h, noise.variance(), FilterKind::mmse);
}

BitBlock equalize_and_slice(const FilterMatrix& w, std::span<const Complex> r) {
    const ComplexVector y = w.matrix * r;
    return qpsk_slice(y);
}

std::size_t count_bit_errors(const BitBlock& sent, const BitBlock& received) {
    if (sent.size() != received.size()) throw DimensionError("count_bit_errors: block lengths differ");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) errors += sent[i] != received[i] ? 1 : 0;
    return errors;
}

} // namespace lindet
