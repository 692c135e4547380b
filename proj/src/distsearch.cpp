#include "zpred/distsearch.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

#include "zpred/index.hpp"
#include "zpred/zfast.hpp"

namespace zpred {

namespace {

// Membership patch behind both fhat flavours: a candidate name length is
// accepted only when the probed prefix extends into the extent of the
// candidate node, so anything outside Pref S is certainly rejected.
std::optional<int> patch_name_len(const SearchCore& core, const BitString& p,
                                  std::optional<uint32_t> raw) {
    if (!raw) return std::nullopt;
    int t = int(*raw);
    if (t > p.len) return std::nullopt;
    if (!is_prefix(p, core.extent_of(prefix(p, t)))) return std::nullopt;
    return t;
}

}  // namespace

std::optional<int> fhat(const SearchCore& core, const StaticFn& f, const BitString& p,
                        QueryTrace* trace) {
    if (trace) ++trace->probes;
    return patch_name_len(core, p, f.lookup(p));
}

std::optional<int> fhat_short(const PredIndex& index, const BitString& p, QueryTrace* trace) {
    const ShortIndex& si = index.short_index();
    if (si.empty()) return std::nullopt;
    if (trace) ++trace->probes;
    auto level = si.level.lookup(p);
    if (!level) return std::nullopt;
    size_t i = std::min(size_t(*level), si.cut_lengths.size() - 1);
    int cut = si.cut_lengths[i];
    if (cut > p.len) return std::nullopt;
    if (trace) ++trace->probes;
    return patch_name_len(index.core(), p, si.exit_name_len.lookup(prefix(p, cut)));
}

std::vector<int> short_cut_lengths(int width) {
    std::vector<int> cuts;
    for (int i = 0; i < 6; ++i) {
        uint64_t tower = uint64_t{1} << (uint64_t{1} << i);  // 2^2^i
        if (2 * tower > uint64_t(width)) break;
        cuts.push_back(width - int(tower));
    }
    return cuts;
}

ShortIndex build_short_index(const CompactedTrie& trie, FnMode mode, uint64_t seed) {
    const int width = trie.width();
    ShortIndex si;
    si.cut_lengths = short_cut_lengths(width);
    size_t levels = si.cut_lengths.size();
    si.exit_name_len = StaticFn(mode, uint32_t(width), mix64(seed ^ 0x51));
    si.level = StaticFn(mode, levels == 0 ? 0 : uint32_t(levels - 1), mix64(seed ^ 0x52));
    if (levels == 0) return si;

    // Per node, the shortest cut between its name and extent; cut lengths
    // decrease with the level, so scan levels from the top.
    std::vector<int> node_level(size_t(trie.node_count()), -1);
    for (int id = 0; id < trie.node_count(); ++id) {
        const TrieNode& node = trie.node(id);
        for (int i = int(levels) - 1; i >= 0; --i) {
            int cut = si.cut_lengths[size_t(i)];
            if (cut >= node.name_len && cut <= node.extent.len) {
                node_level[size_t(id)] = i;
                BitString q = prefix(node.extent, cut);
                assert(!si.exit_name_len.contains(q));
                si.exit_name_len.insert(q, uint32_t(node.name_len));
                break;
            }
        }
    }
    // P holds every key cut at every level; map each element to the level of
    // the shortest cut within its exit node.
    for (const TrieNode& leaf : trie.nodes()) {
        if (!leaf.is_leaf()) continue;
        for (size_t i = 0; i < levels; ++i) {
            BitString p = prefix(leaf.extent, si.cut_lengths[i]);
            const TrieNode& exit = trie.exit_node(p);
            int lvl = node_level[size_t(&exit - &trie.node(0))];
            assert(lvl >= 0);
            si.level.insert(p, uint32_t(lvl));
        }
    }
    return si;
}

LongIndex build_long_index(const CompactedTrie& trie, FnMode mode, uint64_t seed) {
    LongIndex li;
    li.exit_name_len = StaticFn(mode, uint32_t(trie.width()), seed);
    for (const TrieNode& node : trie.nodes()) {
        if (node.skip_lo > node.skip_hi) continue;  // only an empty-extent root
        int cut = int(std::bit_ceil(uint64_t(node.skip_lo)));  // least power of two >= lo
        if (cut <= node.skip_hi)
            li.exit_name_len.insert(prefix(node.extent, cut), uint32_t(node.name_len));
    }
    return li;
}

// ---------------------------------------------------------------------------
// Short-distance search (probes prefixes of lengths w - 2^2^i, then their
// lexicographic neighbours).

ShortSearch::ShortSearch(const PredIndex& index, Key x, QueryTrace* trace)
    : index_(index), x_(x), trace_(trace) {}

std::optional<int64_t> ShortSearch::step() {
    if (phase_ == Phase::done) return result_;
    if (phase_ == Phase::loop) return loop_step();
    return fbs_step();
}

std::optional<int64_t> ShortSearch::loop_step() {
    const SearchCore& core = index_.core();
    const ShortIndex& si = index_.short_index();
    auto finish = [this](int64_t r) {
        phase_ = Phase::done;
        result_ = r;
        return result_;
    };
    auto begin_fbs = [this](int a, int b) {
        fbs_a_ = a;
        fbs_b_ = b;
        if (trace_) {
            trace_->fbs.push_back({a, b, 0});
            fbs_record_ = trace_->fbs.size() - 1;
        }
        phase_ = Phase::fbs;
    };

    if (level_ >= si.cut_lengths.size()) {
        begin_fbs(0, x_.width);  // no prefix long enough: standard search
        return std::nullopt;
    }
    if (trace_) ++trace_->loop_iterations;
    BitString p = prefix(x_, si.cut_lengths[level_]);
    if (auto t = fhat_short(index_, p, trace_)) {
        BitString e = core.extent_of(prefix(x_.as_bits(), *t));
        if (is_proper_prefix(e, x_.as_bits())) {
            begin_fbs(e.len, x_.width);  // found a long extent
            return std::nullopt;
        }
        return finish(pred_at(core, x_, *t, trace_));  // x exits at the node named x[0..t)
    }
    if (auto above = succ_prefix(p)) {
        if (auto t = fhat_short(index_, *above, trace_))
            return finish(core.range(prefix(*above, *t)).first - 1);  // x- precedes that block
    }
    if (auto below = pred_prefix(p)) {
        if (auto t = fhat_short(index_, *below, trace_))
            return finish(core.range(prefix(*below, *t)).second);  // x- ends that block
    }
    ++level_;
    return std::nullopt;
}

std::optional<int64_t> ShortSearch::fbs_step() {
    const SearchCore& core = index_.core();
    FbsState state{fbs_a_, fbs_b_};
    if (state.step(core, x_, trace_)) {
        fbs_a_ = state.a;
        fbs_b_ = state.b;
        if (trace_) ++trace_->fbs[fbs_record_].iterations;
        if (!state.finished()) return std::nullopt;
    }
    if (trace_) {
        trace_->window_a = state.a;
        trace_->window_b = state.b;
    }
    BitString name = state.result_name(core, x_);
    phase_ = Phase::done;
    result_ = pred_at(core, x_, name.len, trace_);
    return result_;
}

int64_t pred_short(const PredIndex& index, Key x, QueryTrace* trace) {
    if (index.n() == 1) return index.key(0).value < x.value ? 0 : -1;
    ShortSearch search(index, x, trace);
    while (true)
        if (auto r = search.step()) return *r;
}

// ---------------------------------------------------------------------------
// Long-distance search (doubles the probed prefix length).

LongSearch::LongSearch(const SearchCore& core, Key x, QueryTrace* trace)
    : core_(core), x_(x), trace_(trace) {}

std::optional<int64_t> LongSearch::step() {
    if (phase_ == Phase::done) return result_;
    if (phase_ == Phase::loop) return loop_step();
    return fbs_step();
}

std::optional<int64_t> LongSearch::loop_step() {
    const int w = x_.width;
    auto finish = [this](int64_t r) {
        phase_ = Phase::done;
        result_ = r;
        return result_;
    };
    auto begin_fbs = [this](int a, int b) {
        fbs_a_ = a;
        fbs_b_ = b;
        if (trace_) {
            trace_->fbs.push_back({a, b, 0});
            fbs_record_ = trace_->fbs.size() - 1;
        }
        phase_ = Phase::fbs;
    };

    int m = 2 * a_ < w ? int(std::bit_ceil(uint64_t(a_) + 1)) : w;
    if (2 * a_ >= w || m >= w) {  // loop over, or (a..w) holds no power of two
        begin_fbs(a_, w);
        return std::nullopt;
    }
    if (trace_) ++trace_->loop_iterations;
    auto t = fhat(core_, core_.long_index.exit_name_len, prefix(x_, m), trace_);
    if (!t) {
        begin_fbs(a_, m);  // we already hold the longest possible prefix
        return std::nullopt;
    }
    BitString p = prefix(x_, *t);
    auto [l, r] = core_.range(p);
    if (core_.key(l).value >= x_.value) return finish(l - 1);
    if (core_.key(r).value < x_.value) return finish(r);
    int next = core_.extent_of(p).len;  // a valid extent prefixing x
    assert(next > a_);
    a_ = next;
    return std::nullopt;
}

std::optional<int64_t> LongSearch::fbs_step() {
    FbsState state{fbs_a_, fbs_b_};
    if (state.step(core_, x_, trace_)) {
        fbs_a_ = state.a;
        fbs_b_ = state.b;
        if (trace_) ++trace_->fbs[fbs_record_].iterations;
        if (!state.finished()) return std::nullopt;
    }
    if (trace_) {
        trace_->window_a = state.a;
        trace_->window_b = state.b;
    }
    BitString name = state.result_name(core_, x_);
    phase_ = Phase::done;
    result_ = pred_at(core_, x_, name.len, trace_);
    return result_;
}

int64_t pred_long(const SearchCore& core, Key x, QueryTrace* trace) {
    if (core.n() == 1) return core.keys[0] < x.value ? 0 : -1;
    LongSearch search(core, x, trace);
    while (true)
        if (auto r = search.step()) return *r;
}

// Strict round-robin dovetailing; the first search to finish wins, so the
// total work is within a factor two (plus one step) of the cheaper one.
int64_t pred_combined(const PredIndex& index, Key x, QueryTrace* trace) {
    if (index.n() == 1) return index.key(0).value < x.value ? 0 : -1;
    ShortSearch short_search(index, x, trace);
    LongSearch long_search(index.core(), x, trace);
    while (true) {
        if (auto r = short_search.step()) return *r;
        if (auto r = long_search.step()) return *r;
    }
}

}  // namespace zpred
