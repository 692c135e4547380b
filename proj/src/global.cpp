#include "zpred/global.hpp"

#include <cassert>
#include <stdexcept>

#include "zpred/distsearch.hpp"
#include "zpred/index.hpp"

namespace zpred {

GlobalIndex::GlobalIndex() = default;
GlobalIndex::GlobalIndex(GlobalIndex&&) noexcept = default;
GlobalIndex& GlobalIndex::operator=(GlobalIndex&&) noexcept = default;
GlobalIndex::~GlobalIndex() = default;

GlobalIndex build_global_index(std::span<const uint64_t> keys, int width, FnMode mode,
                               uint64_t seed) {
    if (keys.size() < 2) throw std::invalid_argument("global index: requires n >= 2");

    GlobalIndex gi;
    gi.bucket_bits = ceil_log2(keys.size());
    assert(gi.bucket_bits <= width);
    int shift = width - gi.bucket_bits;
    size_t bucket_count = size_t{1} << gi.bucket_bits;

    gi.offsets.assign(bucket_count + 1, 0);
    for (uint64_t k : keys) ++gi.offsets[size_t(k >> shift) + 1];
    for (size_t b = 1; b <= bucket_count; ++b) gi.offsets[b] += gi.offsets[b - 1];

    gi.buckets.resize(bucket_count);
    for (size_t b = 0; b < bucket_count; ++b) {
        int64_t lo = gi.offsets[b], hi = gi.offsets[b + 1];
        if (hi - lo < 2) continue;  // answered through the offsets alone
        assert(shift >= 1);
        std::vector<uint64_t> low(keys.begin() + lo, keys.begin() + hi);
        for (uint64_t& k : low) k &= low_mask(shift);
        gi.buckets[b] = std::make_unique<SearchCore>(
            build_core(low, shift, mode, mix64(seed ^ (uint64_t(b) + 0x9e37))));
    }
    return gi;
}

GlobalStats global_stats(std::span<const uint64_t> keys) {
    if (keys.size() < 2) throw std::invalid_argument("global stats: requires n >= 2");
    GlobalStats stats{0, ~uint64_t{0}};
    for (size_t i = 1; i < keys.size(); ++i) {
        uint64_t gap = keys[i] - keys[i - 1];
        stats.delta_max = std::max(stats.delta_max, gap);
        stats.delta_min = std::min(stats.delta_min, gap);
    }
    return stats;
}

int64_t pred_global(const PredIndex& index, Key x, QueryTrace* trace) {
    if (!index.has_global()) throw std::logic_error("pred_global: global index not built");
    const GlobalIndex& gi = index.global();
    const SearchCore& core = index.core();
    int shift = index.width() - gi.bucket_bits;
    size_t b = size_t(shift >= 64 ? 0 : x.value >> shift);
    int64_t lo = gi.offsets[b], hi = gi.offsets[b + 1];
    if (lo == core.n()) return core.n() - 1;               // past every key
    if (core.keys[size_t(lo)] >= x.value) return lo - 1;   // at/below the bucket; covers empty
    if (core.keys[size_t(hi - 1)] < x.value) return hi - 1;  // above every key of the bucket
    // Strictly inside a bucket with at least two keys: search the reduced
    // universe and translate the rank back.
    const SearchCore* bucket = gi.buckets[b].get();
    assert(bucket != nullptr && shift >= 1);
    int64_t inner = pred_long(*bucket, Key{x.value & low_mask(shift), shift}, trace);
    assert(inner >= 0);
    return lo + inner;
}

}  // namespace zpred
