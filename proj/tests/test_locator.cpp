#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "zpred/distsearch.hpp"
#include "zpred/index.hpp"
#include "zpred/oracle.hpp"
#include "zpred/trie.hpp"
#include "zpred/zfast.hpp"

using namespace zpred;
using zpred::testing::bits;

TEST_CASE("left/right/extent on the four-key set") {
    auto index = zpred::testing::make_index(zpred::testing::four_keys(), 4);
    const SearchCore& core = index.core();

    CHECK(core.range(bits("01")) == RankRange{1, 2});
    CHECK(core.range(BitString::empty()) == RankRange{0, 3});
    CHECK(core.range(bits("011")) == RankRange{2, 2});

    CHECK(core.extent_of(bits("01")) == bits("01"));
    CHECK(core.extent_of(BitString::empty()) == BitString::empty());
    CHECK(core.extent_of(bits("011")) == bits("0111"));
}

TEST_CASE("the z-fast map on the figure fixture") {
    auto index = zpred::testing::make_index(zpred::testing::figure_keys(), 15);
    CHECK(index.core().zfast_map(bits("0010"), nullptr) == bits("001001"));
    CHECK(index.core().zfast_map(bits("00100110"), nullptr) == bits("00100110100100"));
}

TEST_CASE("the z-fast map on the four-key set") {
    auto index = zpred::testing::make_index(zpred::testing::four_keys(), 4);
    CHECK(index.core().zfast_map(bits("01"), nullptr) == bits("01"));
    CHECK(index.core().zfast_map(bits("0"), nullptr) == bits("0"));
    // off-domain probes still land on an extent of the trie
    auto extents = oracle::internal_extents(zpred::testing::four_keys(), 4);
    for (uint64_t v = 0; v < 16; ++v) {
        BitString h{v, 4};
        BitString e = index.core().zfast_map(h, nullptr);
        bool is_extent = e.len == 4;  // a full key (left == right case)
        for (const BitString& x : extents) is_extent = is_extent || e == x;
        CHECK(is_extent);
    }
}

TEST_CASE("locator blocks equal the prefixed key sets") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int width = 4 + int(rng() % 7);
        auto keys = zpred::testing::random_set(rng, 1 + rng() % 30, width);
        auto index = zpred::testing::make_index(keys, width);
        CompactedTrie trie(keys, width);
        for (const TrieNode& node : trie.nodes()) {
            auto [l, r] = index.core().range(node.name());
            CHECK(l == oracle::naive_left(keys, width, node.name()));
            CHECK(r == oracle::naive_right(keys, width, node.name()));
            // T maps every internal handle to its extent
            if (!node.is_leaf())
                CHECK(index.core().zfast_map(node.handle, nullptr) == node.extent);
        }
    }
}

TEST_CASE("patched prefix lookup honours the Thm.-3 contract") {
    std::mt19937_64 rng(13);
    for (FnMode mode : {FnMode::exact, FnMode::lossy}) {
        for (int trial = 0; trial < 12; ++trial) {
            int width = 4 + int(rng() % 5);
            auto keys = zpred::testing::random_set(rng, 2 + rng() % 20, width);
            auto index = zpred::testing::make_index(keys, width, mode, rng());
            const StaticFn& fp = index.core().long_index.exit_name_len;
            // exhaustive over every string of every length
            for (int len = 0; len <= width; ++len) {
                for (uint64_t v = 0; v < (uint64_t{1} << len); ++v) {
                    BitString p{v, len};
                    auto t = fhat(index.core(), fp, p);
                    if (!oracle::in_pref(keys, width, p)) {
                        CHECK(!t.has_value());  // certainly rejected
                    } else if (fp.contains(p)) {
                        REQUIRE(t.has_value());
                        CHECK(*t == oracle::naive_exit(keys, width, p).name_len);
                    }
                }
            }
        }
    }
}

TEST_CASE("fhat examples from the four-key set") {
    auto index = zpred::testing::make_index(zpred::testing::four_keys(), 4);
    // 01 is in the long-distance domain (cut of the node named 01)
    CHECK(fhat(index.core(), index.core().long_index.exit_name_len, bits("01")) == 2);
    CHECK(!fhat(index.core(), index.core().long_index.exit_name_len, bits("10")).has_value());
    // an empty prefix with f(eps) = 0 passes the patch
    StaticFn f(FnMode::exact, 4, 0);
    f.insert(BitString::empty(), 0);
    CHECK(fhat(index.core(), f, BitString::empty()) == 0);
}

TEST_CASE("lossy backends never trap and stay exact on their domain") {
    std::mt19937_64 rng(17);
    StaticFn fn(FnMode::lossy, 9, 42);
    RangeLocator loc(FnMode::lossy, 10, 43);
    for (int i = 0; i < 50; ++i) {
        BitString key{rng(), int(rng() % 20)};
        uint32_t payload = uint32_t(rng() % 10);
        fn.insert(key, payload);
        loc.insert(key, int64_t(payload), int64_t(payload));
        CHECK(fn.lookup(key) == payload);
        CHECK(loc.range(key) == RankRange{payload, payload});
    }
    for (int i = 0; i < 1000; ++i) {
        BitString probe{rng(), 30 + int(rng() % 20)};
        auto v = fn.lookup(probe);
        REQUIRE(v.has_value());
        CHECK(*v <= 9);
        auto [l, r] = loc.range(probe);
        CHECK(0 <= l);
        CHECK(l < 10);
        CHECK(0 <= r);
        CHECK(r < 10);
    }
}

TEST_CASE("fat binary search is insensitive to adversarial off-domain payloads") {
    // Lemma 1 tolerates any off-domain behaviour of T; answers must match
    // between the exact backend and lossy backends under several seeds.
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        int width = 5 + int(rng() % 4);
        auto keys = zpred::testing::random_set(rng, 2 + rng() % 24, width);
        auto exact = zpred::testing::make_index(keys, width, FnMode::exact);
        for (uint64_t seed : {1ull, 77ull, 0xdeadbeefull}) {
            auto lossy = zpred::testing::make_index(keys, width, FnMode::lossy, seed);
            for (uint64_t x = 0; x < (uint64_t{1} << width); ++x) {
                Key k{x, width};
                CHECK(fat_binary_search(exact.core(), k, 0, width) ==
                      fat_binary_search(lossy.core(), k, 0, width));
            }
        }
    }
}
