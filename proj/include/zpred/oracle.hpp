#pragma once

// Ground-truth implementations used by the tests and the verify command.
// Deliberately naive and structurally independent of the query paths: linear
// scans, exhaustive interval scans, and definition-level recomputation.

#include <cstdint>
#include <span>
#include <vector>

#include "zpred/bitkey.hpp"
#include "zpred/trace.hpp"

namespace zpred::oracle {

/// Short/long distance of x from the set; the one-sided rule applies when
/// only one neighbour exists.
struct DistancePair {
    uint64_t d = 0;
    uint64_t D = 0;
    bool has_pred = false;
    bool has_succ = false;
};

int64_t naive_pred(std::span<const uint64_t> keys, uint64_t x);       // linear scan
int64_t sorted_pred(std::span<const uint64_t> keys, uint64_t x);      // binary search
DistancePair naive_distances(std::span<const uint64_t> keys, uint64_t x);
int naive_two_fattest(int a, int b);                                  // scan (a..b]
int naive_msb(uint64_t z);                                            // shift loop
BitString naive_lcp(const BitString& u, const BitString& v);          // bit-by-bit
int naive_cut_point(uint64_t x, uint64_t y, int width);               // max-s scan
bool in_pref(std::span<const uint64_t> keys, int width, const BitString& p);

/// All internal extents of the compacted trie, recovered as the pairwise
/// lcps of adjacent keys.
std::vector<BitString> internal_extents(std::span<const uint64_t> keys, int width);

/// p_0 = empty plus the internal extents properly prefixing x, by length.
std::vector<BitString> lemma_chain(std::span<const uint64_t> keys, int width, uint64_t x);

struct ExitInfo {
    int name_len = 0;
    int64_t left = 0, right = 0;  // block of the exit node
    BitString extent;
};

/// Exit node of an arbitrary string p, from first principles.
ExitInfo naive_exit(std::span<const uint64_t> keys, int width, const BitString& p);

int64_t naive_left(std::span<const uint64_t> keys, int width, const BitString& p);
int64_t naive_right(std::span<const uint64_t> keys, int width, const BitString& p);

// ---------------------------------------------------------------------------
// Bound formulas certified by the harness. The checks are integer-exact;
// log x = 1 whenever x < 2 throughout.

double paper_log2(double v);

/// iterations <= ceil(log2(b0 - a0)), plus one level for windows that
/// contain a multiple of 2^ceil(log2(b0 - a0)); windows ending at a power
/// of two never pay the extra level.
bool fbs_iterations_ok(const FbsRecord& record);
uint32_t fbs_iteration_bound(int a0, int b0);

/// loop iterations <= max(1, ceil(log log log d) + 1)
bool short_loop_ok(uint32_t iterations, uint64_t d);

/// triggered-FBS window <= max(2, (log2 d)^2); the floor of 2 is the level-0
/// rung of the 2^2^i ladder, reached whenever d < 4.
bool short_window_ok(const FbsRecord& record, uint64_t d);

/// doubling iterations <= ceil(log2(w - log2 D)) + 1
bool long_iterations_ok(uint32_t iterations, int width, uint64_t D);

/// FBS window of the in-loop bail-out obeys m - a <= a
bool long_window_ok(const FbsRecord& record);

/// w - |e| <= log2|x - y| + 1
bool finger_extent_ok(int width, int ext_len, uint64_t finger_gap);

}  // namespace zpred::oracle
