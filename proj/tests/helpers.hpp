#pragma once

// Shared fixtures and generators for the test suites.

#include <algorithm>
#include <random>
#include <vector>

#include "zpred/bitkey.hpp"
#include "zpred/index.hpp"

namespace zpred::testing {

inline BitString bits(const std::string& s) { return *parse_bits(s); }

/// The running example: {0010, 0100, 0111, 1101} at w = 4.
inline std::vector<uint64_t> four_keys() { return {0b0010, 0b0100, 0b0111, 0b1101}; }

/// A w = 15 set realizing the z-fast map entries 0010 -> 001001 and
/// 00100110 -> 00100110100100 (root extent 001001, right child extent of
/// fourteen bits, skip interval starting at 7).
inline std::vector<uint64_t> figure_keys() {
    return {0b001001000000000, 0b001001101001000, 0b001001101001001};
}

inline std::vector<uint64_t> random_set(std::mt19937_64& rng, size_t n, int width) {
    uint64_t mask = low_mask(width);
    std::vector<uint64_t> keys;
    while (keys.size() < n) {
        keys.push_back(rng() & mask);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    }
    return keys;
}

inline PredIndex make_index(std::vector<uint64_t> keys, int width,
                            FnMode mode = FnMode::exact, uint64_t seed = 0x5eed) {
    BuildOptions opts;
    opts.mode = mode;
    opts.seed = seed;
    return PredIndex::build(std::move(keys), width, opts);
}

}  // namespace zpred::testing
