#pragma once

// Fat binary search over the z-fast map and the rank computations built on
// it: pred_at, windowed FBS-, and the baseline O(log w) predecessor.

#include <cstdint>
#include <functional>

#include "zpred/bitkey.hpp"
#include "zpred/trace.hpp"

namespace zpred {

struct SearchCore;

/// Called after each fat-binary-search iteration with the current window;
/// used by the certification harness to assert the loop invariants.
using FbsObserver = std::function<void(int a, int b)>;

/// Name of the exit node of x, searched over the prefix-length window (a..b).
/// Preconditions: 0 <= a < b <= |x|; a = 0 or x[0..a) is an internal extent;
/// b exceeds the longest internal extent that properly prefixes x.
BitString fat_binary_search(const SearchCore& core, Key x, int a, int b,
                            QueryTrace* trace = nullptr, const FbsObserver& observer = {});

/// Predecessor rank given t = |name of exit(x)| (or any t with x[0..t) in
/// Pref S when the locator is exact on it).
int64_t pred_at(const SearchCore& core, Key x, int t, QueryTrace* trace = nullptr);

/// FBS-(x, a, b): fat binary search then pred_at.
int64_t fbs_pred(const SearchCore& core, Key x, int a, int b, QueryTrace* trace = nullptr);

/// Baseline predecessor: FBS-(x, 0, w), with the single-key set answered by
/// direct comparison.
int64_t baseline_pred(const SearchCore& core, Key x, QueryTrace* trace = nullptr);

/// Shared stepping state so the combined query can dovetail searches.
struct FbsState {
    int a = 0, b = 0;

    bool finished() const { return b - a <= 1; }
    /// One split; returns false once the window cannot shrink further.
    bool step(const SearchCore& core, Key x, QueryTrace* trace);
    BitString result_name(const SearchCore& core, Key x) const;
};

}  // namespace zpred
