#include "zpred/trie.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace zpred {

CompactedTrie::CompactedTrie(std::span<const uint64_t> keys, int width) : width_(width) {
    if (keys.empty()) throw std::invalid_argument("trie: key set must be nonempty");
    if (width < 1 || width > 64) throw std::invalid_argument("trie: width must be in [1,64]");
    for (size_t i = 0; i < keys.size(); ++i) {
        if (width < 64 && (keys[i] >> width) != 0)
            throw std::invalid_argument("trie: key does not fit width");
        if (i > 0 && keys[i] <= keys[i - 1])
            throw std::invalid_argument("trie: keys must be strictly increasing");
    }
    key_count_ = int(keys.size());
    nodes_.reserve(2 * keys.size() - 1);
    root_ = build(keys, 0, key_count_ - 1, 0);
}

int CompactedTrie::build(std::span<const uint64_t> keys, int lo, int hi, int name_len) {
    TrieNode node;
    node.extent = lcp(Key{keys[size_t(lo)], width_}, Key{keys[size_t(hi)], width_});
    node.name_len = name_len;
    node.left_leaf = lo;
    node.right_leaf = hi;
    node.skip_lo = name_len == 0 ? 1 : name_len;  // the root's interval starts at 1
    node.skip_hi = node.extent.len;
    if (node.skip_lo <= node.skip_hi)
        node.handle = prefix(node.extent, two_fattest(node.skip_lo - 1, node.skip_hi));

    int id = int(nodes_.size());
    nodes_.push_back(node);

    if (lo < hi) {
        // Children split at the bit just past the extent; the left child's
        // keys carry a 0 there, so the boundary is the first key with a 1.
        int split = node.extent.len;
        assert(split < width_);
        int mid = lo;
        while (Key{keys[size_t(mid)], width_}.as_bits().bit(split) == 0) ++mid;
        assert(mid > lo && mid <= hi);
        int left = build(keys, lo, mid - 1, split + 1);
        int right = build(keys, mid, hi, split + 1);
        nodes_[size_t(id)].child[0] = left;
        nodes_[size_t(id)].child[1] = right;
    }
    return id;
}

std::vector<InternalEntry> CompactedTrie::internal_extents() const {
    std::vector<InternalEntry> out;
    for (const TrieNode& n : nodes_)
        if (!n.is_leaf()) out.push_back({n.handle, n.extent, n.name_len});
    return out;
}

const TrieNode& CompactedTrie::exit_node(const BitString& p) const {
    const TrieNode* cur = &root();
    while (is_proper_prefix(cur->extent, p)) {
        assert(!cur->is_leaf());
        cur = &node(cur->child[p.bit(cur->extent.len)]);
    }
    return *cur;
}

std::string CompactedTrie::to_dot() const {
    std::ostringstream os;
    os << "digraph trie {\n  node [shape=box fontname=monospace];\n";
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const TrieNode& n = nodes_[i];
        os << "  n" << i << " [label=\"name=" << to_string(n.name())
           << "\\nextent=" << to_string(n.extent) << "\\nskip=[" << n.skip_lo << ".."
           << n.skip_hi << "] handle=" << to_string(n.handle) << "\\nleaves=[" << n.left_leaf
           << ".." << n.right_leaf << "]\"];\n";
        for (int c = 0; c < 2; ++c)
            if (n.child[c] >= 0) os << "  n" << i << " -> n" << n.child[c] << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace zpred
