#include "zpred/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zpred::oracle {

int64_t naive_pred(std::span<const uint64_t> keys, uint64_t x) {
    int64_t best = -1;
    for (size_t i = 0; i < keys.size(); ++i)
        if (keys[i] < x) best = int64_t(i);
    return best;
}

int64_t sorted_pred(std::span<const uint64_t> keys, uint64_t x) {
    auto it = std::lower_bound(keys.begin(), keys.end(), x);
    return int64_t(it - keys.begin()) - 1;
}

DistancePair naive_distances(std::span<const uint64_t> keys, uint64_t x) {
    DistancePair out;
    uint64_t below = 0, above = 0;
    for (uint64_t k : keys) {
        if (k < x && (!out.has_pred || x - k < below)) {
            out.has_pred = true;
            below = x - k;
        }
        if (k >= x && (!out.has_succ || k - x < above)) {
            out.has_succ = true;
            above = k - x;
        }
    }
    if (out.has_pred && out.has_succ) {
        out.d = std::min(below, above);
        out.D = std::max(below, above);
    } else if (out.has_pred) {
        out.d = out.D = below;
    } else if (out.has_succ) {
        out.d = out.D = above;
    }
    return out;
}

int naive_two_fattest(int a, int b) {
    if (a < 0 || a >= b) throw std::invalid_argument("naive_two_fattest: empty interval");
    auto trailing = [](int v) {
        int t = 0;
        while (v % 2 == 0) {
            v /= 2;
            ++t;
        }
        return t;
    };
    int best = a + 1;
    for (int v = a + 1; v <= b; ++v)
        if (trailing(v) > trailing(best)) best = v;
    return best;
}

int naive_msb(uint64_t z) {
    if (z == 0) throw std::invalid_argument("naive_msb: argument must be positive");
    int i = -1;
    while (z) {
        z >>= 1;
        ++i;
    }
    return i;
}

BitString naive_lcp(const BitString& u, const BitString& v) {
    int m = std::min(u.len, v.len);
    int l = 0;
    while (l < m && u.bit(l) == v.bit(l)) ++l;
    BitString out;
    for (int i = 0; i < l; ++i) out = BitString{(out.bits << 1) | uint64_t(u.bit(i)), i + 1};
    return out;
}

int naive_cut_point(uint64_t x, uint64_t y, int width) {
    if (y >= x) throw std::invalid_argument("naive_cut_point: requires y < x");
    Key kx{x, width}, ky{y, width};
    int best = -1;
    for (int s = 0; s <= width; ++s) {
        auto up = succ_prefix(prefix(ky, s));
        if (up && is_prefix(*up, kx.as_bits())) best = s;
    }
    return best;
}

bool in_pref(std::span<const uint64_t> keys, int width, const BitString& p) {
    for (uint64_t k : keys)
        if (is_prefix(p, Key{k, width}.as_bits())) return true;
    return false;
}

std::vector<BitString> internal_extents(std::span<const uint64_t> keys, int width) {
    std::vector<BitString> out;
    for (size_t i = 0; i + 1 < keys.size(); ++i) {
        BitString e = naive_lcp(Key{keys[i], width}.as_bits(), Key{keys[i + 1], width}.as_bits());
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
    std::sort(out.begin(), out.end(),
              [](const BitString& a, const BitString& b) { return a.len < b.len; });
    return out;
}

std::vector<BitString> lemma_chain(std::span<const uint64_t> keys, int width, uint64_t x) {
    std::vector<BitString> chain{BitString::empty()};
    for (const BitString& e : internal_extents(keys, width))
        if (is_proper_prefix(e, Key{x, width}.as_bits()) && !(e == BitString::empty()))
            chain.push_back(e);
    return chain;
}

ExitInfo naive_exit(std::span<const uint64_t> keys, int width, const BitString& p) {
    ExitInfo info;
    int longest = -1;
    for (const BitString& e : internal_extents(keys, width))
        if (is_proper_prefix(e, p)) longest = std::max(longest, e.len);
    info.name_len = longest + 1;  // 0 when nothing properly prefixes p: the root

    BitString name = prefix(p, info.name_len);
    info.left = naive_left(keys, width, name);
    info.right = naive_right(keys, width, name);
    info.extent = Key{keys[size_t(info.left)], width}.as_bits();
    for (int64_t i = info.left + 1; i <= info.right; ++i)
        info.extent = naive_lcp(info.extent, Key{keys[size_t(i)], width}.as_bits());
    return info;
}

int64_t naive_left(std::span<const uint64_t> keys, int width, const BitString& p) {
    for (size_t i = 0; i < keys.size(); ++i)
        if (is_prefix(p, Key{keys[i], width}.as_bits())) return int64_t(i);
    return -1;
}

int64_t naive_right(std::span<const uint64_t> keys, int width, const BitString& p) {
    int64_t last = -1;
    for (size_t i = 0; i < keys.size(); ++i)
        if (is_prefix(p, Key{keys[i], width}.as_bits())) last = int64_t(i);
    return last;
}

double paper_log2(double v) { return v < 2.0 ? 1.0 : std::log2(v); }

uint32_t fbs_iteration_bound(int a0, int b0) {
    // ceil(log2(b-a)) splits, plus one when the window contains a multiple
    // of 2^ceil(log2(b-a)): the split chain then starts a level higher.
    // Windows ending at a multiple of that power (in particular at any
    // power of two, so every full, short-restart and doubling window) never
    // pay the extra level.
    uint64_t len = uint64_t(b0 - a0);
    uint32_t c = uint32_t(ceil_log2(len));
    uint64_t top_multiple = (uint64_t(b0 - 1) >> c) << c;
    return c + (top_multiple > uint64_t(a0) ? 1 : 0);
}

bool fbs_iterations_ok(const FbsRecord& record) {
    return record.iterations <= fbs_iteration_bound(record.a0, record.b0);
}

bool short_loop_ok(uint32_t iterations, uint64_t d) {
    // iterations <= max(1, ceil(logloglog d) + 1), checked without floats:
    // for J >= 3 this requires d > 2^2^2^(J-2).
    if (iterations <= 2) return true;
    uint64_t e1 = uint64_t(iterations) - 2;
    if (e1 >= 6) return false;  // 2^2^6 exceeds any 64-bit log
    uint64_t e2 = uint64_t{1} << e1;
    if (e2 >= 64) return false;
    uint64_t e3 = uint64_t{1} << e2;
    if (e3 >= 64) return false;
    return d > (uint64_t{1} << e3);
}

bool short_window_ok(const FbsRecord& record, uint64_t d) {
    int64_t window = record.b0 - record.a0;
    if (window <= 2) return true;
    double bound = paper_log2(double(d));
    return double(window) <= bound * bound;
}

bool long_iterations_ok(uint32_t iterations, int width, uint64_t D) {
    // iterations <= ceil(log2(w - log2 D)) + 1, i.e. for J >= 2 we need
    // 2^(J-2) < w - log2 D, equivalently D < 2^(w - 2^(J-2)).
    if (iterations <= 1) return true;
    if (iterations - 2 >= 63) return false;
    int64_t e = int64_t{1} << (iterations - 2);
    if (D < 2) return e < int64_t(width) - 1;  // log D = 1 by convention
    int64_t s = int64_t(width) - e;
    if (s <= 0) return false;
    if (s >= 64) return true;
    return D < (uint64_t{1} << s);
}

bool long_window_ok(const FbsRecord& record) {
    return record.b0 - record.a0 <= record.a0;
}

bool finger_extent_ok(int width, int ext_len, uint64_t finger_gap) {
    // w - |e| <= log2(gap) + 1, i.e. 2^(w - |e| - 1) <= gap.
    int e = width - ext_len - 1;
    if (e <= 0) return true;
    if (e >= 64) return false;
    return (uint64_t{1} << e) <= finger_gap;
}

}  // namespace zpred::oracle
