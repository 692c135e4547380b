#pragma once

// Finger predecessor search on top of a weak-prefix layer: left/right/extent
// for arbitrary members of Pref S, with membership settled by one key access.

#include <cstdint>
#include <unordered_map>

#include "zpred/bitkey.hpp"
#include "zpred/locator.hpp"
#include "zpred/trace.hpp"
#include "zpred/trie.hpp"

namespace zpred {

class PredIndex;

/// Map from every prefix of every key to its leaf-rank block. Anything
/// outside Pref S gets an arbitrary in-range answer.
class WeakPrefixIndex {
public:
    WeakPrefixIndex() = default;
    WeakPrefixIndex(FnMode mode, int64_t key_count, uint64_t seed)
        : ranges_(mode, key_count, seed) {}
    explicit WeakPrefixIndex(RangeLocator ranges) : ranges_(std::move(ranges)) {}

    void insert(const BitString& p, int64_t left, int64_t right) { ranges_.insert(p, left, right); }
    RankRange range(const BitString& p) const { return ranges_.range(p); }
    size_t entries() const { return ranges_.entries(); }
    int payload_bits() const { return ranges_.payload_bits(); }
    const RangeLocator& raw() const { return ranges_; }

private:
    RangeLocator ranges_;
};

WeakPrefixIndex build_weak_prefix_index(const CompactedTrie& trie, FnMode mode, uint64_t seed);

/// Number of prefixes the weak-prefix layer would hold, without building it.
uint64_t weak_prefix_entry_count(const CompactedTrie& trie);

/// max{ s : y[0..s)+1 is a prefix of x }, for y < x. Always >= 1.
int cut_point(Key x, Key y);

/// Predecessor rank of x using finger y in S, y < x. Throws when the finger
/// preconditions are violated.
int64_t pred_finger(const PredIndex& index, Key x, Key y, QueryTrace* trace = nullptr);

}  // namespace zpred
