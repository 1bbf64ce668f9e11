#include "lindet/rng.hpp"

#include <array>
#include <cmath>

namespace lindet {

namespace {

std::mt19937_64 seeded_engine(const RngStream& stream) {
    const std::uint64_t a = splitmix64(stream.master_seed ^ 0xD1B54A32D192ED03ULL);
    const std::uint64_t b = splitmix64(a ^ stream.stream_index);
    const std::uint64_t c = splitmix64(b + stream.stream_index);
    std::array<std::uint32_t, 4> words{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                                       static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

} // namespace

Rng::Rng(const RngStream& stream) : engine_(seeded_engine(stream)) {}

Complex Rng::complex_normal(double variance) {
    const double scale = std::sqrt(0.5 * variance);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {scale * re, scale * im};
}

std::uint8_t Rng::bit() {
    if (bits_left_ == 0) {
        bit_buffer_ = engine_();
        bits_left_ = 64;
    }
    const auto b = static_cast<std::uint8_t>(bit_buffer_ & 1U);
    bit_buffer_ >>= 1;
    --bits_left_;
    return b;
}

} // namespace lindet
