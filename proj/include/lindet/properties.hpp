#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lindet/result_table.hpp"

namespace lindet {

struct PropertyCheck {
    std::string name;
    bool passed;
    /// Sample count and worst observed deviation.
    std::string detail;
};

struct PropertyReport {
    std::vector<PropertyCheck> checks;

    bool all_passed() const;
    ResultTable table(std::uint64_t seed) const;
};

/**
 * Seeded invariant suite over the whole library: SVD factor quality, Gram
 * and inverse spectral identities, Weyl bounds, filter limits, SNR formula
 * ordering, distortion oracle agreement, CDF dominance across N and BER
 * monotonicity/dominance on a short paired sweep.
 */
PropertyReport run_property_suite(std::uint64_t seed, std::size_t workers = 1);

} // namespace lindet
