#pragma once

// Build-time compacted trie over a sorted key set. Only the builders touch
// it; the query structures are extracted from it and it is then discarded.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zpred/bitkey.hpp"

namespace zpred {

struct TrieNode {
    BitString extent;             // e: longest common prefix of the leaves below
    int name_len = 0;             // |n|; name = extent[0..name_len)
    int skip_lo = 0, skip_hi = 0; // [lo..hi], lo = |n| (1 for the root), hi = |e|
    BitString handle;             // prefix of e of 2-fattest length in the skip
                                  // interval; empty when the interval is empty
    int left_leaf = 0, right_leaf = 0;  // rank range of the subtended keys
    int child[2] = {-1, -1};            // node ids; internal nodes have both

    bool is_leaf() const { return child[0] < 0; }
    BitString name() const { return prefix(extent, name_len); }
    BitString compacted_path() const { return slice(extent, name_len, extent.len); }
};

struct InternalEntry {
    BitString handle;
    BitString extent;
    int name_len;
};

class CompactedTrie {
public:
    CompactedTrie(std::span<const uint64_t> keys, int width);

    int width() const { return width_; }
    int key_count() const { return key_count_; }
    int node_count() const { return int(nodes_.size()); }
    const TrieNode& node(int id) const { return nodes_[size_t(id)]; }
    const TrieNode& root() const { return nodes_[size_t(root_)]; }
    const std::vector<TrieNode>& nodes() const { return nodes_; }

    /// (handle, extent, name length) per internal node; the domain of the
    /// z-fast map.
    std::vector<InternalEntry> internal_extents() const;

    /// Exit node of p: the unique node whose name prefixes p and whose
    /// extent either equals p or is not a prefix of p.
    const TrieNode& exit_node(const BitString& p) const;

    std::string to_dot() const;

private:
    int build(std::span<const uint64_t> keys, int lo, int hi, int name_len);

    std::vector<TrieNode> nodes_;
    int root_ = 0;
    int key_count_ = 0;
    int width_ = 0;
};

}  // namespace zpred
