#include "zpred/index.hpp"

#include <algorithm>
#include <stdexcept>

#include "zpred/trie.hpp"
#include "zpred/zfast.hpp"

namespace zpred {

RankRange SearchCore::range(const BitString& name) const {
    auto [l, r] = locator.range(name);
    int64_t hi = n() - 1;
    if (l < 0) l = 0;
    if (l > hi) l = hi;
    if (r < 0) r = 0;
    if (r > hi) r = hi;
    return {l, r};
}

BitString SearchCore::extent_of(const BitString& name) const {
    auto [l, r] = range(name);
    return lcp(key(l), key(r));
}

BitString SearchCore::zfast_map(const BitString& handle, QueryTrace* trace) const {
    if (trace) ++trace->probes;
    uint32_t g = handle_g.lookup(handle).value_or(0);
    int t = int(g) <= handle.len ? int(g) : handle.len;
    return extent_of(prefix(handle, t));
}

SearchCore build_core(std::span<const uint64_t> sorted_keys, int width, FnMode mode,
                      uint64_t seed) {
    CompactedTrie trie(sorted_keys, width);

    SearchCore core;
    core.width = width;
    core.mode = mode;
    core.seed = seed;
    core.keys.assign(sorted_keys.begin(), sorted_keys.end());
    core.locator = RangeLocator(mode, int64_t(sorted_keys.size()), mix64(seed ^ 1));
    core.handle_g = StaticFn(mode, uint32_t(width), mix64(seed ^ 2));
    core.root_extent_len = trie.root().extent.len;

    for (const TrieNode& node : trie.nodes()) {
        core.locator.insert(node.name(), node.left_leaf, node.right_leaf);
        if (!node.is_leaf()) core.handle_g.insert(node.handle, uint32_t(node.name_len));
    }
    core.long_index = build_long_index(trie, mode, mix64(seed ^ 3));
    return core;
}

PredIndex PredIndex::build(std::vector<uint64_t> keys, int width, const BuildOptions& opts) {
    if (keys.empty()) throw std::invalid_argument("index: key set must be nonempty");
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        throw std::invalid_argument("index: duplicate keys");

    PredIndex index;
    index.core_ = build_core(keys, width, opts.mode, opts.seed);

    CompactedTrie trie(index.core_.keys, width);
    index.short_ = build_short_index(trie, opts.mode, mix64(opts.seed ^ 4));
    if (opts.with_global && keys.size() >= 2) {
        index.global_ = std::make_shared<GlobalIndex>(
            build_global_index(index.core_.keys, width, opts.mode, mix64(opts.seed ^ 5)));
    }
    index.weak_prefix_entry_count_ = zpred::weak_prefix_entry_count(trie);
    if (opts.with_finger) {
        index.weak_prefix_ = std::make_shared<WeakPrefixIndex>(
            build_weak_prefix_index(trie, opts.mode, mix64(opts.seed ^ 6)));
    }
    return index;
}

PredIndex assemble_index(SearchCore core, ShortIndex short_index,
                         std::unique_ptr<GlobalIndex> global,
                         std::unique_ptr<WeakPrefixIndex> weak, uint64_t weak_entry_count) {
    PredIndex index;
    index.core_ = std::move(core);
    index.short_ = std::move(short_index);
    index.global_ = std::move(global);
    index.weak_prefix_ = std::move(weak);
    index.weak_prefix_entry_count_ = weak_entry_count;
    return index;
}

int64_t PredIndex::predecessor(Key x, QueryTrace* trace) const {
    return baseline_pred(core_, x, trace);
}

int64_t PredIndex::pred_short(Key x, QueryTrace* trace) const {
    return zpred::pred_short(*this, x, trace);
}

int64_t PredIndex::pred_long(Key x, QueryTrace* trace) const {
    if (n() == 1) return key(0).value < x.value ? 0 : -1;
    return zpred::pred_long(core_, x, trace);
}

int64_t PredIndex::pred_combined(Key x, QueryTrace* trace) const {
    return zpred::pred_combined(*this, x, trace);
}

int64_t PredIndex::pred_global(Key x, QueryTrace* trace) const {
    return zpred::pred_global(*this, x, trace);
}

int64_t PredIndex::pred_finger(Key x, Key finger, QueryTrace* trace) const {
    return zpred::pred_finger(*this, x, finger, trace);
}

bool PredIndex::contains(Key x) const {
    return std::binary_search(core_.keys.begin(), core_.keys.end(), x.value);
}

SpaceReport PredIndex::space_report() const {
    SpaceReport report;
    report.width = width();
    report.key_count = n();

    auto add = [&report](const char* name, uint64_t entries, uint64_t bits_per_entry) {
        report.tables.push_back({name, entries, entries * bits_per_entry});
        report.core_bits += entries * bits_per_entry;
    };
    add("locator", core_.locator.entries(), uint64_t(core_.locator.payload_bits()));
    add("zfast_g", core_.handle_g.entries(), uint64_t(core_.handle_g.payload_bits()));
    add("short_fQ", short_.exit_name_len.entries(),
        uint64_t(short_.exit_name_len.payload_bits()));
    add("short_fPi", short_.level.entries(), uint64_t(short_.level.payload_bits()));
    add("long_fP", core_.long_index.exit_name_len.entries(),
        uint64_t(core_.long_index.exit_name_len.payload_bits()));
    if (global_) {
        uint64_t entries = global_->offsets.size();
        uint64_t bits = entries * uint64_t(ceil_log2(uint64_t(n()) + 1));
        for (const auto& bucket : global_->buckets) {
            if (!bucket) continue;
            entries += bucket->locator.entries() + bucket->handle_g.entries() +
                       bucket->long_index.exit_name_len.entries();
            bits += bucket->locator.entries() * uint64_t(bucket->locator.payload_bits()) +
                    bucket->handle_g.entries() * uint64_t(bucket->handle_g.payload_bits()) +
                    bucket->long_index.exit_name_len.entries() *
                        uint64_t(bucket->long_index.exit_name_len.payload_bits());
        }
        report.tables.push_back({"global", entries, bits});
        report.core_bits += bits;
    }
    report.weak_prefix_entries = weak_prefix_entry_count_;
    report.weak_prefix_bits =
        weak_prefix_entry_count_ * 2 * uint64_t(ceil_log2(uint64_t(n() < 2 ? 2 : n())));
    return report;
}

}  // namespace zpred
