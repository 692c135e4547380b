#pragma once

// Globally sensitive predecessor search by universe reduction: keys are
// grouped by their top ceil(log n) bits, each group carrying a long-distance
// index over the remaining low bits.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "zpred/bitkey.hpp"
#include "zpred/static_fn.hpp"
#include "zpred/trace.hpp"

namespace zpred {

struct SearchCore;
class PredIndex;

struct GlobalIndex {
    int bucket_bits = 0;
    std::vector<int64_t> offsets;  // rank of the first key of each bucket; length 2^bits + 1
    // One search core per bucket holding >= 2 keys (over width w - bucket_bits);
    // null for empty and singleton buckets.
    std::vector<std::unique_ptr<SearchCore>> buckets;

    GlobalIndex();
    GlobalIndex(GlobalIndex&&) noexcept;
    GlobalIndex& operator=(GlobalIndex&&) noexcept;
    ~GlobalIndex();
};

/// Largest and smallest gap between consecutive keys.
struct GlobalStats {
    uint64_t delta_max = 0;
    uint64_t delta_min = 0;
};

GlobalIndex build_global_index(std::span<const uint64_t> keys, int width, FnMode mode,
                               uint64_t seed);
GlobalStats global_stats(std::span<const uint64_t> keys);

int64_t pred_global(const PredIndex& index, Key x, QueryTrace* trace = nullptr);

}  // namespace zpred
