#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "zpred/bitkey.hpp"
#include "zpred/oracle.hpp"

using namespace zpred;
using zpred::testing::bits;

TEST_CASE("slice extracts substrings") {
    Key x{0b0110, 4};
    CHECK(slice(x, 0, 3) == bits("011"));
    CHECK(slice(x, 0, 0) == BitString::empty());
    CHECK(slice(x, 1, 3) == bits("11"));
    CHECK(slice(x, 4, 4) == BitString::empty());

    // handle of the node with skip interval [7..13]
    Key fig{0b00100110100100, 14};
    CHECK(slice(fig, 0, 8) == bits("00100110"));

    CHECK_THROWS_AS(slice(x, 0, 5), std::out_of_range);
    CHECK_THROWS_AS(slice(x, 3, 2), std::out_of_range);
}

TEST_CASE("lcp examples and properties") {
    CHECK(lcp(bits("0110"), bits("0010")) == bits("0"));
    CHECK(lcp(bits("0100"), bits("0111")) == bits("01"));
    CHECK(lcp(bits("0110"), bits("0110")) == bits("0110"));
    CHECK(lcp(BitString::empty(), bits("101")) == BitString::empty());

    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 2000; ++trial) {
        BitString u{rng(), int(rng() % 65)};
        BitString v{rng(), int(rng() % 65)};
        BitString l = lcp(u, v);
        CHECK(l == lcp(v, u));
        CHECK(l == oracle::naive_lcp(u, v));
        CHECK(lcp(l, u) == l);
        CHECK(is_prefix(l, u));
        CHECK(is_prefix(l, v));
        // |lcp| is the first differing position
        if (l.len < u.len && l.len < v.len) CHECK(u.bit(l.len) != v.bit(l.len));
    }
}

TEST_CASE("two_fattest examples") {
    CHECK(two_fattest(7, 13) == 8);
    CHECK(two_fattest(5, 7) == 6);
    CHECK(two_fattest(0, 1) == 1);
    for (int b : {1, 2, 3, 7, 12, 64, 100})
        CHECK(two_fattest(0, b) == 1 << msb(uint64_t(b)));  // top power of two
    CHECK_THROWS_AS(two_fattest(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(two_fattest(5, 2), std::invalid_argument);
}

TEST_CASE("two_fattest exhaustive against the scan oracle") {
    auto trailing = [](int v) {
        int t = 0;
        while (v % 2 == 0) {
            v /= 2;
            ++t;
        }
        return t;
    };
    for (int a = 0; a < 256; ++a) {
        for (int b = a + 1; b <= 256; ++b) {
            int f = two_fattest(a, b);
            CHECK(f == oracle::naive_two_fattest(a, b));
            CHECK(f == two_fattest_iterative(a, b));
            CHECK(a < f);
            CHECK(f <= b);
            // uniqueness of the maximal trailing-zero count
            for (int v = a + 1; v <= b; ++v)
                if (v != f) CHECK(trailing(v) < trailing(f));
            // splitting property: both sides keep at most one multiple of
            // the next power down
            int step = 1 << std::max(0, trailing(f) - 1);
            int left = 0, right = 0;
            for (int v = a + 1; v <= f - 1; ++v) left += v % step == 0;
            for (int v = f + 1; v <= b; ++v) right += v % step == 0;
            CHECK(left <= 1);
            CHECK(right <= 1);
        }
    }
}

TEST_CASE("prefix successor and predecessor") {
    CHECK(succ_prefix(bits("0011")) == bits("0100"));
    CHECK(!succ_prefix(bits("111")).has_value());
    CHECK(!pred_prefix(bits("000")).has_value());
    CHECK(pred_prefix(bits("0100")) == bits("0011"));
    CHECK(!succ_prefix(BitString::empty()).has_value());
    CHECK(!pred_prefix(BitString::empty()).has_value());

    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 2000; ++trial) {
        BitString p{rng(), 1 + int(rng() % 64)};
        auto up = succ_prefix(p);
        auto down = pred_prefix(p);
        if (up) CHECK(pred_prefix(*up) == p);
        if (down) CHECK(succ_prefix(*down) == p);
    }
}

TEST_CASE("msb") {
    CHECK(msb(1) == 0);
    CHECK(msb(8) == 3);
    CHECK(msb(13) == 3);
    CHECK_THROWS_AS(msb(0), std::invalid_argument);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        uint64_t z = rng() >> (rng() % 64);
        if (z) CHECK(msb(z) == oracle::naive_msb(z));
    }
}

TEST_CASE("bit string text round trip") {
    CHECK(to_string(bits("010011")) == "010011");
    CHECK(to_string(BitString::empty()) == "");
    CHECK(!parse_bits("01x1").has_value());
    CHECK(parse_bits("") == BitString::empty());
}

TEST_CASE("key width validation") {
    CHECK_THROWS_AS(Key(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(Key(0, 0), std::invalid_argument);
    CHECK(Key(0b11, 2).as_bits() == bits("11"));
}
