#pragma once

// Pluggable store for the paper-model static functions (g and the two f
// flavours). Exact mode is the ground-truth associative map and can report
// out-of-domain misses; Lossy mode emulates a succinct function: on-domain
// lookups return the stored payload, off-domain lookups return an arbitrary
// (seeded, adversarially mixed) in-range payload and never trap.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "zpred/bitkey.hpp"

namespace zpred {

enum class FnMode : uint8_t { exact = 0, lossy = 1 };

inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class StaticFn {
public:
    StaticFn() = default;
    StaticFn(FnMode mode, uint32_t payload_limit, uint64_t seed)
        : mode_(mode), limit_(payload_limit), seed_(seed) {}

    void insert(const BitString& key, uint32_t payload) {
        if (payload > limit_) throw std::invalid_argument("StaticFn: payload above limit");
        map_[key] = payload;
    }

    /// Stored payload for domain keys. Off domain: nullopt in Exact mode,
    /// an arbitrary in-range payload in Lossy mode.
    std::optional<uint32_t> lookup(const BitString& key) const {
        auto it = map_.find(key);
        if (it != map_.end()) return it->second;
        if (mode_ == FnMode::exact) return std::nullopt;
        return uint32_t(mix64(BitStringHash{}(key) ^ seed_) % (uint64_t(limit_) + 1));
    }

    bool contains(const BitString& key) const { return map_.count(key) != 0; }
    size_t entries() const { return map_.size(); }
    uint32_t payload_limit() const { return limit_; }
    FnMode mode() const { return mode_; }
    uint64_t seed() const { return seed_; }
    /// Payload width of the paper-model function storing this table.
    int payload_bits() const { return limit_ == 0 ? 1 : ceil_log2(uint64_t(limit_) + 1); }

    const std::unordered_map<BitString, uint32_t, BitStringHash>& raw() const { return map_; }

private:
    FnMode mode_ = FnMode::exact;
    uint32_t limit_ = 0;
    uint64_t seed_ = 0;
    std::unordered_map<BitString, uint32_t, BitStringHash> map_;
};

}  // namespace zpred
