#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lindet/channel.hpp"
#include "lindet/linalg.hpp"

namespace lindet {

/// Bits carried by one channel use; two per QPSK symbol.
class BitBlock {
public:
    BitBlock() = default;
    /// Throws FramingError for odd length, InvalidArgumentError for values other than 0/1.
    explicit BitBlock(std::vector<std::uint8_t> bits);

    static BitBlock random(std::size_t symbols, Rng& rng);

    std::size_t size() const noexcept { return bits_.size(); }
    std::size_t symbol_count() const noexcept { return bits_.size() / 2; }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    friend bool operator==(const BitBlock&, const BitBlock&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

enum class FilterKind { zero_forcing, mmse };

/// Linear receive filter. noise_variance is 0 for zero forcing.
struct FilterMatrix {
    FilterKind kind;
    double noise_variance;
    ComplexMatrix matrix;
};

/// (b_I, b_Q) -> ((1 - 2 b_I) + j (1 - 2 b_Q)) / sqrt(2).
ComplexVector qpsk_modulate(const BitBlock& bits);

/// Sign decisions per axis; a zero component decides bit 0.
BitBlock qpsk_slice(std::span<const Complex> y);

/// W = (H^H H)^{-1} H^H.
FilterMatrix zf_filter(const ComplexMatrix& h);

/// W = (H^H H + sigma_n^2 I)^{-1} H^H.
FilterMatrix mmse_filter(const ComplexMatrix& h, const NoiseModel& noise);

/// qpsk_slice(W r).
BitBlock equalize_and_slice(const FilterMatrix& w, std::span<const Complex> r);

/// Hamming distance.
std::size_t count_bit_errors(const BitBlock& sent, const BitBlock& received);

} // namespace lindet
