#include "zpred/zfast.hpp"

#include <cassert>
#include <stdexcept>

#include "zpred/index.hpp"

namespace zpred {

bool FbsState::step(const SearchCore& core, Key x, QueryTrace* trace) {
    if (finished()) return false;
    // Split (a..b) on its 2-fattest number; the open interval maps onto the
    // half-open convention as (a..b-1].
    int f = two_fattest(a, b - 1);
    BitString e = core.zfast_map(prefix(x, f), trace);
    if (f <= e.len && is_proper_prefix(e, x)) {
        a = e.len;
    } else {
        b = f;
    }
    if (trace) ++trace->fbs_iterations;
    return true;
}

BitString FbsState::result_name(const SearchCore& core, Key x) const {
    if (a == 0 && core.root_extent_len != 0) return BitString::empty();
    return prefix(x, a + 1);
}

BitString fat_binary_search(const SearchCore& core, Key x, int a, int b, QueryTrace* trace,
                            const FbsObserver& observer) {
    if (!(0 <= a && a < b && b <= x.width))
        throw std::invalid_argument("fat_binary_search: bad window");
    FbsState state{a, b};
    if (trace) trace->fbs.push_back({a, b, 0});
    size_t record = trace ? trace->fbs.size() - 1 : 0;
    if (observer) observer(state.a, state.b);
    while (state.step(core, x, trace)) {
        if (trace) ++trace->fbs[record].iterations;
        if (observer) observer(state.a, state.b);
    }
    if (trace) {
        trace->window_a = state.a;
        trace->window_b = state.b;
    }
    return state.result_name(core, x);
}

int64_t pred_at(const SearchCore& core, Key x, int t, QueryTrace* trace) {
    (void)trace;
    BitString name = prefix(x, t);
    auto [l, r] = core.range(name);
    BitString e = core.extent_of(name);
    BitString xb = x.as_bits();
    if (is_prefix(xb, e)) return l - 1;  // x == e: x is in S, predecessor is strict
    BitString common = lcp(xb, e);
    assert(common.len < x.width);
    if (common.len >= e.len || xb.bit(common.len) == 0) return l - 1;
    return r;
}

int64_t fbs_pred(const SearchCore& core, Key x, int a, int b, QueryTrace* trace) {
    BitString name = fat_binary_search(core, x, a, b, trace);
    return pred_at(core, x, name.len, trace);
}

int64_t baseline_pred(const SearchCore& core, Key x, QueryTrace* trace) {
    if (core.n() == 1) return core.keys[0] < x.value ? 0 : -1;
    return fbs_pred(core, x, 0, x.width, trace);
}

}  // namespace zpred
