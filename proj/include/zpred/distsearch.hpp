#pragma once

// Distance-sensitive prefix tables and the short/long/combined predecessor
// queries. The short table stores, for every key, its prefixes cut at
// lengths w - 2^2^i; the long table cuts every node extent at the smallest
// power of two inside its skip interval.

#include <cstdint>
#include <optional>
#include <vector>

#include "zpred/bitkey.hpp"
#include "zpred/static_fn.hpp"
#include "zpred/trace.hpp"
#include "zpred/trie.hpp"

namespace zpred {

struct SearchCore;
class PredIndex;

/// Tables behind the short-distance query: cut lengths w - 2^2^i for the
/// levels with 2^2^i <= w/2, the per-node shortest cut map fQ, and the
/// level map fPi.
struct ShortIndex {
    std::vector<int> cut_lengths;  // indexed by level i
    StaticFn exit_name_len;        // fQ: Q -> |n_exit|
    StaticFn level;                // fPi: P -> smallest level whose cut is in Q

    bool empty() const { return cut_lengths.empty(); }
};

/// Table behind the long-distance query: fP maps each node's extent cut at
/// the smallest power of two in its skip interval to the node's name length.
struct LongIndex {
    StaticFn exit_name_len;  // fP
};

std::vector<int> short_cut_lengths(int width);
ShortIndex build_short_index(const CompactedTrie& trie, FnMode mode, uint64_t seed);
LongIndex build_long_index(const CompactedTrie& trie, FnMode mode, uint64_t seed);

/// Patched prefix lookup: accepts f(p) only when t <= |p| and p extends into
/// the extent of the candidate node, so anything outside Pref S certainly
/// maps to nullopt whatever f returned.
std::optional<int> fhat(const SearchCore& core, const StaticFn& f, const BitString& p,
                        QueryTrace* trace = nullptr);

/// The two-map form used by the short-distance search: the level table picks
/// the stored cut of p, the cut indexes the name-length table.
std::optional<int> fhat_short(const PredIndex& index, const BitString& p,
                              QueryTrace* trace = nullptr);

int64_t pred_short(const PredIndex& index, Key x, QueryTrace* trace = nullptr);
int64_t pred_long(const SearchCore& core, Key x, QueryTrace* trace = nullptr);
int64_t pred_combined(const PredIndex& index, Key x, QueryTrace* trace = nullptr);

/// Incremental forms used by the dovetailed combination: each step performs
/// one loop iteration or one fat-binary-search split.
class ShortSearch {
public:
    ShortSearch(const PredIndex& index, Key x, QueryTrace* trace);
    std::optional<int64_t> step();

private:
    std::optional<int64_t> loop_step();
    std::optional<int64_t> fbs_step();

    const PredIndex& index_;
    Key x_;
    QueryTrace* trace_;
    enum class Phase { loop, fbs, done } phase_ = Phase::loop;
    size_t level_ = 0;
    int fbs_a_ = 0, fbs_b_ = 0;
    size_t fbs_record_ = 0;
    std::optional<int64_t> result_;
};

class LongSearch {
public:
    LongSearch(const SearchCore& core, Key x, QueryTrace* trace);
    std::optional<int64_t> step();

private:
    std::optional<int64_t> loop_step();
    std::optional<int64_t> fbs_step();

    const SearchCore& core_;
    Key x_;
    QueryTrace* trace_;
    enum class Phase { loop, fbs, done } phase_ = Phase::loop;
    int a_ = 0;
    int fbs_a_ = 0, fbs_b_ = 0;
    size_t fbs_record_ = 0;
    std::optional<int64_t> result_;
};

}  // namespace zpred
