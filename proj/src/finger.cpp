#include "zpred/finger.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

#include "zpred/index.hpp"
#include "zpred/zfast.hpp"

namespace zpred {

WeakPrefixIndex build_weak_prefix_index(const CompactedTrie& trie, FnMode mode, uint64_t seed) {
    WeakPrefixIndex wpi(mode, trie.key_count(), seed);
    // The name-to-extent spans of the nodes partition Pref S.
    for (const TrieNode& node : trie.nodes())
        for (int len = node.name_len; len <= node.extent.len; ++len)
            wpi.insert(prefix(node.extent, len), node.left_leaf, node.right_leaf);
    return wpi;
}

uint64_t weak_prefix_entry_count(const CompactedTrie& trie) {
    uint64_t count = 0;
    for (const TrieNode& node : trie.nodes())
        count += uint64_t(node.extent.len - node.name_len + 1);
    return count;
}

int cut_point(Key x, Key y) {
    if (x.width != y.width) throw std::invalid_argument("cut_point: width mismatch");
    if (y.value >= x.value) throw std::invalid_argument("cut_point: requires y < x");
    int w = x.width;
    int j = lcp(x, y).len;  // x[j] = 1, y[j] = 0
    // Carry run: positions after j where y reads 1 and x reads 0; adding one
    // to the y prefix keeps matching x for exactly that long.
    int rem = w - j - 1;
    uint64_t broken = (~y.value | x.value) & low_mask(rem);
    int run = broken == 0 ? rem : rem - std::bit_width(broken);
    return j + 1 + run;
}

namespace {

struct WeakLayer {
    const SearchCore& core;
    const WeakPrefixIndex& wpi;

    RankRange range(const BitString& p) const { return wpi.range(p); }

    BitString extent(const BitString& p) const {
        auto [l, r] = range(p);
        return lcp(core.key(l), core.key(r));
    }

    // One access to the key set settles membership whatever the weak answer.
    bool in_pref(const BitString& p) const {
        auto [l, r] = range(p);
        (void)r;
        return is_prefix(p, core.key(l).as_bits());
    }

    // pred(x, t) extended to every t with x[0..t) in Pref S.
    int64_t pred(Key x, int t) const {
        BitString p = prefix(x, t);
        auto [l, r] = range(p);
        BitString e = lcp(core.key(l), core.key(r));
        BitString xb = x.as_bits();
        if (is_prefix(xb, e)) return l - 1;
        BitString common = lcp(xb, e);
        if (common.len >= e.len || xb.bit(common.len) == 0) return l - 1;
        return r;
    }
};

}  // namespace

int64_t pred_finger(const PredIndex& index, Key x, Key y, QueryTrace* trace) {
    if (!index.has_finger()) throw std::logic_error("pred_finger: finger tables not built");
    if (x.width != index.width() || y.width != index.width())
        throw std::invalid_argument("pred_finger: width mismatch");
    if (y.value >= x.value) throw std::invalid_argument("pred_finger: requires y < x");
    if (!index.contains(y)) throw std::invalid_argument("pred_finger: finger not in the set");
    if (index.n() == 1) return 0;

    const SearchCore& core = index.core();
    WeakLayer weak{core, index.weak_prefix()};
    const int w = x.width;

    int t = cut_point(x, y);
    BitString yt = prefix(y, t);
    BitString target = *succ_prefix(yt);  // defined by the choice of t; equals x[0..t)
    BitString e = weak.extent(target);
    if (!is_prefix(target, e)) return weak.range(yt).second;  // y[0..t)+1 not in Pref S
    if (!is_proper_prefix(e, x.as_bits())) return weak.pred(x, t);  // x exits at that node

    // Long-distance search over the reduced universe of keys extending e;
    // every length is offset by |e|.
    const int ext = e.len;
    if (trace) {
        trace->ext_len = ext;
        trace->entered_loop = true;
    }
    int a = 0;
    while (2 * a < w - ext) {
        int m = int(std::bit_ceil(uint64_t(a) + 1));
        if (m >= w - ext) break;  // (a..w-|e|) holds no power of two
        if (trace) ++trace->loop_iterations;
        BitString p = prefix(x, m + ext);
        if (!weak.in_pref(p)) return fbs_pred(core, x, a + ext, m + ext, trace);
        auto [l, r] = weak.range(p);
        if (core.key(l).value >= x.value) return l - 1;
        if (core.key(r).value < x.value) return r;
        int next = weak.extent(p).len - ext;  // a valid extent prefixing x
        assert(next > a);
        a = next;
    }
    return fbs_pred(core, x, a + ext, w, trace);
}

}  // namespace zpred
