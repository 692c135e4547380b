#pragma once

// Range locator: node name -> (left, right) leaf ranks of the keys prefixed
// by the name. Weak contract: genuine names get the exact block, anything
// else gets an arbitrary in-range pair (Lossy) or the whole-set block
// (Exact miss), so downstream extent computations always land on real keys.

#include <cstdint>
#include <unordered_map>
#include <utility>

#include "zpred/bitkey.hpp"
#include "zpred/static_fn.hpp"

namespace zpred {

using RankRange = std::pair<int64_t, int64_t>;

class RangeLocator {
public:
    RangeLocator() = default;
    RangeLocator(FnMode mode, int64_t key_count, uint64_t seed)
        : mode_(mode), n_(key_count), seed_(seed) {}

    void insert(const BitString& name, int64_t left, int64_t right) {
        map_[name] = {left, right};
    }

    RankRange range(const BitString& name) const {
        auto it = map_.find(name);
        if (it != map_.end()) return it->second;
        if (mode_ == FnMode::exact) return {0, n_ - 1};
        uint64_t h = mix64(BitStringHash{}(name) ^ seed_);
        return {int64_t(h % uint64_t(n_)), int64_t(mix64(h) % uint64_t(n_))};
    }

    bool contains(const BitString& name) const { return map_.count(name) != 0; }
    size_t entries() const { return map_.size(); }
    int64_t key_count() const { return n_; }
    FnMode mode() const { return mode_; }
    uint64_t seed() const { return seed_; }
    int payload_bits() const { return 2 * ceil_log2(uint64_t(n_ < 2 ? 2 : n_)); }

    const std::unordered_map<BitString, RankRange, BitStringHash>& raw() const { return map_; }

private:
    FnMode mode_ = FnMode::exact;
    int64_t n_ = 1;
    uint64_t seed_ = 0;
    std::unordered_map<BitString, RankRange, BitStringHash> map_;
};

}  // namespace zpred
