#pragma once

// Per-query instrumentation. Caller-owned, one per query; every bound the
// certification harness checks is read off these counters.

#include <cstdint>
#include <vector>

namespace zpred {

/// One fat-binary-search invocation: starting window and iteration count.
struct FbsRecord {
    int a0 = 0, b0 = 0;
    uint32_t iterations = 0;

    friend bool operator==(const FbsRecord&, const FbsRecord&) = default;
};

struct QueryTrace {
    uint32_t loop_iterations = 0;  // algorithm loop bodies entered
    uint32_t fbs_iterations = 0;   // fat-binary-search splits, all invocations
    uint32_t probes = 0;           // static-function lookups (g, fQ, fPi, fP)
    int window_a = 0, window_b = 0;  // final (a,b) of the last search window
    int ext_len = -1;                // finger search: |e| when the loop phase is reached
    bool entered_loop = false;       // finger search: reduced-universe loop entered
    std::vector<FbsRecord> fbs;      // one record per fat-binary-search call

    uint32_t steps() const { return loop_iterations + fbs_iterations; }

    friend bool operator==(const QueryTrace&, const QueryTrace&) = default;
};

}  // namespace zpred
