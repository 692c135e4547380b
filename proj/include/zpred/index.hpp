#pragma once

// The queryable bundle: sorted keys plus the auxiliary tables every search
// variant reads. The compacted trie is a construction artifact only; nothing
// here retains it.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "zpred/bitkey.hpp"
#include "zpred/distsearch.hpp"
#include "zpred/finger.hpp"
#include "zpred/global.hpp"
#include "zpred/locator.hpp"
#include "zpred/static_fn.hpp"
#include "zpred/trace.hpp"

namespace zpred {

/// Everything fat binary search and the long-distance loop need: the sorted
/// keys, the range locator, the handle map g behind the z-fast function T,
/// and the long-distance table. Doubles as the per-bucket structure of the
/// global index.
struct SearchCore {
    int width = 0;
    FnMode mode = FnMode::exact;
    uint64_t seed = 0;
    std::vector<uint64_t> keys;
    RangeLocator locator;
    StaticFn handle_g;  // internal handle -> name length
    int root_extent_len = 0;
    LongIndex long_index;

    int64_t n() const { return int64_t(keys.size()); }
    Key key(int64_t rank) const { return Key{keys[size_t(rank)], width}; }

    /// Clamped weak range lookup; never returns ranks outside [0, n).
    RankRange range(const BitString& name) const;

    /// extent(p) = lcp(S[left(p)], S[right(p)]). Genuine names yield the
    /// genuine extent; anything else yields the extent of some node.
    BitString extent_of(const BitString& name) const;

    /// T(h): candidate name h[0..g(h)), then its extent. Total; always
    /// returns an extent of the trie (Exact mode resolves unknown handles
    /// through the root block).
    BitString zfast_map(const BitString& handle, QueryTrace* trace) const;
};

SearchCore build_core(std::span<const uint64_t> sorted_keys, int width, FnMode mode,
                      uint64_t seed);

struct BuildOptions {
    FnMode mode = FnMode::exact;
    uint64_t seed = 0x5eed;
    bool with_global = true;
    bool with_finger = true;
};

struct SpaceTable {
    const char* name;
    uint64_t entries;
    uint64_t bits;  // paper-model payload bits: entries x payload width
};

struct SpaceReport {
    int width = 0;
    int64_t key_count = 0;
    std::vector<SpaceTable> tables;
    uint64_t core_bits = 0;         // locator + g + short + long (+ global)
    uint64_t weak_prefix_entries = 0;
    uint64_t weak_prefix_bits = 0;  // reported separately: O(n w) deviation
};

class PredIndex {
public:
    PredIndex() = default;

    /// Sorts a copy of the keys, rejects duplicates, builds every requested
    /// table.
    static PredIndex build(std::vector<uint64_t> keys, int width, const BuildOptions& opts = {});

    int width() const { return core_.width; }
    int64_t n() const { return core_.n(); }
    Key key(int64_t rank) const { return core_.key(rank); }
    FnMode mode() const { return core_.mode; }
    uint64_t seed() const { return core_.seed; }
    std::span<const uint64_t> keys() const { return core_.keys; }

    const SearchCore& core() const { return core_; }
    const ShortIndex& short_index() const { return short_; }
    bool has_global() const { return global_ != nullptr; }
    const GlobalIndex& global() const { return *global_; }
    bool has_finger() const { return weak_prefix_ != nullptr; }
    const WeakPrefixIndex& weak_prefix() const { return *weak_prefix_; }
    uint64_t weak_prefix_entry_count() const { return weak_prefix_entry_count_; }

    /// Rank of the strict predecessor of x (-1 when none). The successor is
    /// rank + 1.
    int64_t predecessor(Key x, QueryTrace* trace = nullptr) const;
    int64_t pred_short(Key x, QueryTrace* trace = nullptr) const;
    int64_t pred_long(Key x, QueryTrace* trace = nullptr) const;
    int64_t pred_combined(Key x, QueryTrace* trace = nullptr) const;
    int64_t pred_global(Key x, QueryTrace* trace = nullptr) const;
    int64_t pred_finger(Key x, Key finger, QueryTrace* trace = nullptr) const;

    bool contains(Key x) const;

    SpaceReport space_report() const;

private:
    friend PredIndex assemble_index(SearchCore core, ShortIndex short_index,
                                    std::unique_ptr<GlobalIndex> global,
                                    std::unique_ptr<WeakPrefixIndex> weak,
                                    uint64_t weak_entry_count);

    SearchCore core_;
    ShortIndex short_;
    std::shared_ptr<GlobalIndex> global_;
    std::shared_ptr<WeakPrefixIndex> weak_prefix_;
    uint64_t weak_prefix_entry_count_ = 0;
};

/// Used by the deserializer; takes ownership of already-built tables.
PredIndex assemble_index(SearchCore core, ShortIndex short_index,
                         std::unique_ptr<GlobalIndex> global,
                         std::unique_ptr<WeakPrefixIndex> weak, uint64_t weak_entry_count);

}  // namespace zpred
