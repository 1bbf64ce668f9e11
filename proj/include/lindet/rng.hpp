#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "lindet/linalg.hpp"

namespace lindet {

/// SplitMix64 finalizer; used to turn counters into well-mixed seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// FNV-1a hash of an experiment tag, so substreams can be keyed by name.
constexpr std::uint64_t stream_tag(std::string_view name) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/**
 * Address of an independent random substream.
 *
 * The draws produced from a stream depend only on (master_seed, stream_index),
 * never on which worker consumes it or in which order, which is what makes
 * the Monte Carlo runners worker-count invariant.
 */
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    /// Child stream addressed by an extra key (experiment tag, dimension, trial index).
    constexpr RngStream substream(std::uint64_t key) const noexcept {
        return {master_seed, splitmix64(stream_index ^ splitmix64(key + 0x632BE59BD9B4E019ULL))};
    }

    friend constexpr bool operator==(const RngStream&, const RngStream&) = default;
};

/// Stateful generator materialized from an RngStream.
class Rng {
public:
    explicit Rng(const RngStream& stream);

    double standard_normal() { return normal_(engine_); }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    Complex complex_normal(double variance = 1.0);

    /// Uniform bit.
    std::uint8_t bit();

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uint64_t bit_buffer_ = 0;
    int bits_left_ = 0;
};

} // namespace lindet
