#pragma once

// Fixed-width binary strings and the bit arithmetic shared by every index
// layer: prefix slicing, longest common prefix, lexicographic neighbours of
// a prefix, and 2-fattest numbers.

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace zpred {

/// Index of the most significant set bit (0-based). Requires z > 0.
inline int msb(uint64_t z) {
    if (z == 0) throw std::invalid_argument("msb: argument must be positive");
    return std::bit_width(z) - 1;
}

/// Smallest k with 2^k >= t, for t >= 1 (so ceil_log2(1) == 0).
inline int ceil_log2(uint64_t t) {
    if (t == 0) throw std::invalid_argument("ceil_log2: argument must be positive");
    return std::bit_width(t - 1);
}

inline uint64_t low_mask(int len) {
    return len >= 64 ? ~uint64_t{0} : (uint64_t{1} << len) - 1;
}

/// A binary string of length 0..64, stored right-aligned: the integer whose
/// binary expansion (with leading zeros up to `len`) is the string. Equal
/// lengths compare lexicographically as integers.
struct BitString {
    uint64_t bits = 0;
    int len = 0;

    BitString() = default;
    BitString(uint64_t b, int l) : bits(b), len(l) {
        if (l < 0 || l > 64) throw std::invalid_argument("BitString: bad length");
        bits &= low_mask(l);
    }

    static BitString empty() { return BitString{}; }

    bool is_empty() const { return len == 0; }
    /// Bit at string position i (0 = leftmost / most significant).
    int bit(int i) const { return int(bits >> (len - 1 - i)) & 1; }

    friend bool operator==(const BitString& a, const BitString& b) {
        return a.len == b.len && a.bits == b.bits;
    }
};

struct BitStringHash {
    size_t operator()(const BitString& s) const {
        uint64_t z = s.bits * 0x9e3779b97f4a7c15ull + uint64_t(s.len);
        z ^= z >> 30; z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27; z *= 0x94d049bb133111ebull;
        return size_t(z ^ (z >> 31));
    }
};

/// A w-bit key, viewed both as an integer in [0, 2^w) and as a bit sequence.
struct Key {
    uint64_t value = 0;
    int width = 0;

    Key() = default;
    Key(uint64_t v, int w) : value(v), width(w) {
        if (w < 1 || w > 64) throw std::invalid_argument("Key: width must be in [1,64]");
        if (w < 64 && v >> w) throw std::invalid_argument("Key: value does not fit width");
    }

    BitString as_bits() const { return BitString{value, width}; }

    friend bool operator==(const Key& a, const Key& b) {
        return a.value == b.value && a.width == b.width;
    }
};

/// x[a..b): substring by string positions. slice(x, 0, 0) is the empty string.
inline BitString slice(const BitString& x, int a, int b) {
    if (a < 0 || a > b || b > x.len) throw std::out_of_range("slice: indices out of range");
    if (a == b) return BitString::empty();
    return BitString{(x.bits >> (x.len - b)) & low_mask(b - a), b - a};
}

inline BitString slice(const Key& x, int a, int b) { return slice(x.as_bits(), a, b); }

/// x[0..t), the length-t prefix.
inline BitString prefix(const BitString& x, int t) { return slice(x, 0, t); }
inline BitString prefix(const Key& x, int t) { return slice(x.as_bits(), 0, t); }

/// p `is a prefix of` s (prefix order, non-strict).
inline bool is_prefix(const BitString& p, const BitString& s) {
    if (p.len > s.len) return false;
    if (p.len == 0) return true;
    return (s.bits >> (s.len - p.len)) == p.bits;
}

inline bool is_proper_prefix(const BitString& p, const BitString& s) {
    return p.len < s.len && is_prefix(p, s);
}

inline bool is_prefix(const BitString& p, const Key& s) { return is_prefix(p, s.as_bits()); }
inline bool is_proper_prefix(const BitString& p, const Key& s) {
    return is_proper_prefix(p, s.as_bits());
}

/// Longest common prefix of two strings.
inline BitString lcp(const BitString& u, const BitString& v) {
    int m = u.len < v.len ? u.len : v.len;
    if (m == 0) return BitString::empty();
    uint64_t a = u.bits >> (u.len - m);
    uint64_t b = v.bits >> (v.len - m);
    uint64_t x = a ^ b;
    if (x == 0) return BitString{a, m};
    int l = m - 1 - msb(x);
    return BitString{a >> (m - l), l};
}

inline BitString lcp(const Key& u, const Key& v) { return lcp(u.as_bits(), v.as_bits()); }

/// Lexicographic successor of p among strings of length |p|; nullopt when p
/// is all ones (or empty).
inline std::optional<BitString> succ_prefix(const BitString& p) {
    if (p.len == 0 || p.bits == low_mask(p.len)) return std::nullopt;
    return BitString{p.bits + 1, p.len};
}

/// Lexicographic predecessor; nullopt when p is all zeros (or empty).
inline std::optional<BitString> pred_prefix(const BitString& p) {
    if (p.len == 0 || p.bits == 0) return std::nullopt;
    return BitString{p.bits - 1, p.len};
}

/// The 2-fattest number of the half-open interval (a..b]: the unique element
/// divisible by the largest power of two. Closed form -1 << msb(a ^ b) & b.
inline int two_fattest(int a, int b) {
    if (a < 0 || a >= b) throw std::invalid_argument("two_fattest: empty interval");
    uint64_t ua = uint64_t(a), ub = uint64_t(b);
    return int((~uint64_t{0} << msb(ua ^ ub)) & ub);
}

/// Iterative variant: decrease i from ceil(log(b-a)) until a and b differ
/// above bit i; kept behind the same contract for cross-checking.
inline int two_fattest_iterative(int a, int b) {
    if (a < 0 || a >= b) throw std::invalid_argument("two_fattest: empty interval");
    uint64_t ua = uint64_t(a), ub = uint64_t(b);
    for (int i = ceil_log2(ub - ua); i >= 0; --i) {
        uint64_t mask = ~uint64_t{0} << i;
        if ((ua & mask) != (ub & mask)) return int(ub & mask);
    }
    return b;  // unreachable: i == 0 always satisfies the test when a != b
}

inline std::string to_string(const BitString& s) {
    std::string out(size_t(s.len), '0');
    for (int i = 0; i < s.len; ++i) out[size_t(i)] = char('0' + s.bit(i));
    return out;
}

inline std::string to_string(const Key& k) { return to_string(k.as_bits()); }

/// Parses a 0/1 string; nullopt on any other character or length > 64.
inline std::optional<BitString> parse_bits(const std::string& text) {
    if (text.size() > 64) return std::nullopt;
    uint64_t bits = 0;
    for (char c : text) {
        if (c != '0' && c != '1') return std::nullopt;
        bits = (bits << 1) | uint64_t(c - '0');
    }
    return BitString{bits, int(text.size())};
}

}  // namespace zpred
