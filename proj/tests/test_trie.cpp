#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "zpred/oracle.hpp"
#include "zpred/trie.hpp"

using namespace zpred;
using zpred::testing::bits;

namespace {

// Lemma-1 characterization of the exit node, checked against the descent.
const TrieNode* characterized_exit(const CompactedTrie& trie, const BitString& p) {
    const TrieNode* found = nullptr;
    for (const TrieNode& node : trie.nodes()) {
        if (!is_prefix(node.name(), p)) continue;
        if (node.extent == p || !is_prefix(node.extent, p)) {
            REQUIRE(found == nullptr);  // uniqueness
            found = &node;
        }
    }
    return found;
}

}  // namespace

TEST_CASE("four-key trie fields") {
    CompactedTrie trie(zpred::testing::four_keys(), 4);
    CHECK(trie.node_count() == 7);

    std::set<std::string> extents, handles;
    for (const auto& e : trie.internal_extents()) {
        extents.insert(to_string(e.extent));
        handles.insert(to_string(e.handle));
    }
    CHECK(extents == std::set<std::string>{"", "0", "01"});
    CHECK(handles == std::set<std::string>{"", "0", "01"});
    CHECK(trie.internal_extents().size() == 3);  // n - 1 internal nodes

    for (const TrieNode& node : trie.nodes()) {
        // extent = name ++ compacted path, children bracket the leaf range
        CHECK(node.extent.len == node.name_len + node.compacted_path().len);
        CHECK(is_prefix(node.name(), node.extent));
        if (!node.is_leaf()) {
            const TrieNode& l = trie.node(node.child[0]);
            const TrieNode& r = trie.node(node.child[1]);
            CHECK(node.left_leaf == l.left_leaf);
            CHECK(node.right_leaf == r.right_leaf);
            CHECK(l.right_leaf + 1 == r.left_leaf);
            CHECK(node.extent == lcp(l.extent, r.extent));
            CHECK(node.left_leaf < node.right_leaf);
        }
    }
}

TEST_CASE("singleton trie") {
    CompactedTrie trie(std::vector<uint64_t>{0b1010}, 4);
    CHECK(trie.node_count() == 1);
    CHECK(trie.root().is_leaf());
    CHECK(trie.root().extent == bits("1010"));
    CHECK(trie.internal_extents().empty());
}

TEST_CASE("figure fixture: skip interval [7..14] and its handle") {
    CompactedTrie trie(zpred::testing::figure_keys(), 15);
    bool found = false;
    for (const auto& e : trie.internal_extents()) {
        if (e.extent == bits("001001")) CHECK(e.handle == bits("0010"));
        if (e.extent == bits("00100110100100")) {
            found = true;
            CHECK(e.handle == bits("00100110"));
            CHECK(e.name_len == 7);
        }
    }
    CHECK(found);
    // handle length is the 2-fattest number of the skip interval
    for (const TrieNode& node : trie.nodes())
        if (node.skip_lo <= node.skip_hi)
            CHECK(node.handle.len == two_fattest(node.skip_lo - 1, node.skip_hi));
}

TEST_CASE("build rejects bad input") {
    CHECK_THROWS_AS(CompactedTrie(std::vector<uint64_t>{}, 4), std::invalid_argument);
    CHECK_THROWS_AS(CompactedTrie(std::vector<uint64_t>{3, 3}, 4), std::invalid_argument);
    CHECK_THROWS_AS(CompactedTrie(std::vector<uint64_t>{5, 2}, 4), std::invalid_argument);
    CHECK_THROWS_AS(CompactedTrie(std::vector<uint64_t>{1 << 5}, 4), std::invalid_argument);
}

TEST_CASE("random tries: handles, skip intervals, exit nodes") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int width = 4 + int(rng() % 9);
        size_t n = 1 + rng() % 40;
        n = std::min<size_t>(n, uint64_t{1} << width);
        auto keys = zpred::testing::random_set(rng, n, width);
        CompactedTrie trie(keys, width);

        CHECK(trie.node_count() == int(2 * keys.size() - 1));
        std::set<std::pair<uint64_t, int>> handle_set;
        int leaf_rank = 0;
        for (const TrieNode& node : trie.nodes()) {
            if (node.skip_lo <= node.skip_hi)
                CHECK(node.handle.len == two_fattest(node.skip_lo - 1, node.skip_hi));
            else
                CHECK(node.handle == BitString::empty());
            if (!node.is_leaf()) {
                // internal handles must be distinct for the map T
                CHECK(handle_set.insert({node.handle.bits, node.handle.len}).second);
            } else {
                CHECK(node.extent == Key{keys[size_t(leaf_rank)], width}.as_bits());
                ++leaf_rank;
            }
        }

        // descent agrees with the Lemma-1 characterization on every key prefix
        for (uint64_t k : keys) {
            for (int len = 0; len <= width; ++len) {
                BitString p = prefix(Key{k, width}, len);
                const TrieNode* expected = characterized_exit(trie, p);
                REQUIRE(expected != nullptr);
                CHECK(&trie.exit_node(p) == expected);
                // cross-check the oracle's independent computation
                auto info = oracle::naive_exit(keys, width, p);
                CHECK(info.name_len == expected->name_len);
                CHECK(info.left == expected->left_leaf);
                CHECK(info.right == expected->right_leaf);
                CHECK(info.extent == expected->extent);
            }
        }
    }
}

TEST_CASE("dot dump names every node") {
    CompactedTrie trie(zpred::testing::four_keys(), 4);
    std::string dot = trie.to_dot();
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("extent=01") != std::string::npos);
}
