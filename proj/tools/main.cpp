// Command-line surface: build images from key files, answer queries, verify
// against the oracle, benchmark probe counts by distance, and dump the
// construction trie.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "zpred/index.hpp"
#include "zpred/keyfile.hpp"
#include "zpred/oracle.hpp"
#include "zpred/serialize.hpp"
#include "zpred/trie.hpp"
#include "zpred/zfast.hpp"

using namespace zpred;

namespace {

struct BuildFlags {
    std::string keys_path;
    std::string backend = "exact";
    uint64_t seed = 0x5eed;
    bool hex = false;
    bool no_global = false;
    bool no_finger = false;
};

void add_build_flags(CLI::App* cmd, BuildFlags& flags, bool keys_required) {
    auto* opt = cmd->add_option("--keys", flags.keys_path, "key file (w=<int> header, 0/1 lines)");
    if (keys_required) opt->required();
    cmd->add_option("--backend", flags.backend, "static-function backend")
        ->check(CLI::IsMember({"exact", "lossy"}));
    cmd->add_option("--seed", flags.seed, "seed for lossy off-domain payloads and benchmarks");
    cmd->add_flag("--hex", flags.hex, "keys are hex integers instead of 0/1 lines");
    cmd->add_flag("--no-global", flags.no_global, "skip the globally sensitive tables");
    cmd->add_flag("--no-finger", flags.no_finger, "skip the weak-prefix finger tables");
}

PredIndex build_from_flags(const BuildFlags& flags) {
    KeyFileData data = load_keyfile(flags.keys_path, flags.hex);
    BuildOptions opts;
    opts.mode = flags.backend == "lossy" ? FnMode::lossy : FnMode::exact;
    opts.seed = flags.seed;
    opts.with_global = !flags.no_global;
    opts.with_finger = !flags.no_finger;
    return PredIndex::build(std::move(data.keys), data.width, opts);
}

std::string rank_to_key(const PredIndex& index, int64_t rank) {
    return rank < 0 ? "-" : to_string(index.key(rank));
}

int64_t run_algo(const PredIndex& index, const std::string& algo, Key x,
                 std::optional<Key> finger, QueryTrace* trace) {
    if (algo == "baseline") return index.predecessor(x, trace);
    if (algo == "short") return index.pred_short(x, trace);
    if (algo == "long") return index.pred_long(x, trace);
    if (algo == "combined") return index.pred_combined(x, trace);
    if (algo == "global") return index.pred_global(x, trace);
    if (algo == "finger") {
        if (!finger) throw std::invalid_argument("finger algorithm needs --finger");
        return index.pred_finger(x, *finger, trace);
    }
    throw std::invalid_argument("unknown algorithm: " + algo);
}

// ---------------------------------------------------------------------------

int cmd_build(const BuildFlags& flags, const std::string& out_path) {
    PredIndex index = build_from_flags(flags);
    save_index(index, out_path);
    std::cout << "built index: n=" << index.n() << " w=" << index.width()
              << " backend=" << (index.mode() == FnMode::lossy ? "lossy" : "exact") << " -> "
              << out_path << "\n";
    return 0;
}

int cmd_query(const std::string& image, const std::string& algo,
              const std::string& finger_bits, bool hex, std::vector<std::string> queries) {
    PredIndex index = load_index(image);
    std::optional<Key> finger;
    if (!finger_bits.empty()) {
        auto bits = parse_bits(finger_bits);
        if (!bits || bits->len != index.width())
            throw std::invalid_argument("--finger must be a " + std::to_string(index.width()) +
                                        "-bit 0/1 string");
        finger = Key{bits->bits, index.width()};
    }
    if (queries.empty()) {
        std::string line;
        while (std::getline(std::cin, line))
            if (!line.empty()) queries.push_back(line);
    }
    for (const std::string& q : queries) {
        uint64_t value = 0;
        if (hex) {
            value = std::stoull(q, nullptr, 16);
        } else {
            auto bits = parse_bits(q);
            if (!bits || bits->len != index.width())
                throw std::invalid_argument("query \"" + q + "\" is not a " +
                                            std::to_string(index.width()) + "-bit 0/1 string");
            value = bits->bits;
        }
        Key x{value, index.width()};
        int64_t rank = run_algo(index, algo, x, finger, nullptr);
        std::cout << to_string(x) << "," << rank << "," << rank_to_key(index, rank) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct VerifyStats {
    uint64_t queries = 0;
    uint64_t mismatches = 0;
    uint64_t bound_violations = 0;
};

void verify_one(const PredIndex& index, uint64_t value, VerifyStats& stats,
                std::mt19937_64& rng) {
    const auto keys = index.keys();
    Key x{value, index.width()};
    int64_t expect = oracle::sorted_pred(keys, value);
    auto dist = oracle::naive_distances(keys, value);

    auto check_fbs = [&](const QueryTrace& trace) {
        for (const FbsRecord& rec : trace.fbs)
            if (!oracle::fbs_iterations_ok(rec)) ++stats.bound_violations;
    };
    auto run = [&](auto&& fn) {
        QueryTrace trace;
        ++stats.queries;
        if (fn(&trace) != expect) ++stats.mismatches;
        check_fbs(trace);
        return trace;
    };

    run([&](QueryTrace* t) { return index.predecessor(x, t); });
    QueryTrace short_trace = run([&](QueryTrace* t) { return index.pred_short(x, t); });
    if (!oracle::short_loop_ok(short_trace.loop_iterations, dist.d)) ++stats.bound_violations;
    for (const FbsRecord& rec : short_trace.fbs)
        if (!oracle::short_window_ok(rec, dist.d)) ++stats.bound_violations;

    QueryTrace long_trace = run([&](QueryTrace* t) { return index.pred_long(x, t); });
    if (index.n() > 1 &&
        !oracle::long_iterations_ok(long_trace.loop_iterations, index.width(), dist.D))
        ++stats.bound_violations;

    run([&](QueryTrace* t) { return index.pred_combined(x, t); });
    if (index.has_global()) run([&](QueryTrace* t) { return index.pred_global(x, t); });

    if (index.has_finger()) {
        // Sample fingers strictly below x.
        int64_t below = expect;
        if (below >= 0) {
            for (int trial = 0; trial < 3; ++trial) {
                int64_t yr = below == 0 ? 0 : int64_t(rng() % uint64_t(below + 1));
                Key y = index.key(yr);
                QueryTrace trace = run([&](QueryTrace* t) { return index.pred_finger(x, y, t); });
                if (trace.entered_loop &&
                    !oracle::finger_extent_ok(index.width(), trace.ext_len, value - y.value))
                    ++stats.bound_violations;
                if (trace.entered_loop &&
                    !oracle::long_iterations_ok(trace.loop_iterations,
                                                index.width() - trace.ext_len, dist.D))
                    ++stats.bound_violations;
            }
        }
    }
}

int cmd_verify(const PredIndex& index, bool exhaustive, uint64_t samples, uint64_t seed) {
    VerifyStats stats;
    std::mt19937_64 rng(seed);
    if (exhaustive) {
        if (index.width() > 20) {
            std::cerr << "verify: --exhaustive needs w <= 20 (got w=" << index.width() << ")\n";
            return 2;
        }
        for (uint64_t v = 0; v < (uint64_t{1} << index.width()); ++v)
            verify_one(index, v, stats, rng);
    } else {
        uint64_t mask = low_mask(index.width());
        for (uint64_t i = 0; i < samples; ++i) verify_one(index, rng() & mask, stats, rng);
    }
    std::cout << "verify: queries=" << stats.queries << " mismatches=" << stats.mismatches
              << " bound_violations=" << stats.bound_violations << "\n";
    return (stats.mismatches || stats.bound_violations) ? 1 : 0;
}

// ---------------------------------------------------------------------------

struct BenchRow {
    std::string algo;
    uint64_t query = 0;
    uint64_t d = 0, D = 0;
    uint32_t loop_iters = 0, fbs_iters = 0, probes = 0;
    int64_t nanos = 0;
};

int cmd_bench(const PredIndex& index, const std::string& dist, uint64_t trials, uint64_t seed,
              const std::string& format, const std::string& out_path, unsigned threads) {
    std::mt19937_64 rng(seed);
    const auto keys = index.keys();
    uint64_t mask = low_mask(index.width());

    std::vector<uint64_t> queries;
    queries.reserve(trials);
    for (uint64_t i = 0; i < trials; ++i) {
        uint64_t x = 0;
        if (dist == "uniform") {
            x = rng() & mask;
        } else if (dist == "near-member") {
            uint64_t k = keys[rng() % keys.size()];
            uint64_t off = 1 + rng() % 16;
            x = (rng() & 1) ? (k + off) & mask : (k - off) & mask;
        } else if (dist == "clustered") {
            uint64_t k = keys[rng() % keys.size()];
            int spread_bits = std::max(1, index.width() / 4);
            uint64_t off = rng() & low_mask(spread_bits);
            x = (rng() & 1) ? (k + off) & mask : (k - off) & mask;
        } else {
            // far: midpoint of a uniformly chosen gap
            size_t i0 = keys.size() < 2 ? 0 : rng() % (keys.size() - 1);
            uint64_t lo = keys[i0];
            uint64_t hi = keys.size() < 2 ? mask : keys[i0 + 1];
            x = lo + (hi - lo) / 2;
        }
        queries.push_back(x);
    }

    std::vector<std::string> algos = {"baseline", "short", "long", "combined"};
    if (index.has_global()) algos.push_back("global");

    if (threads == 0) threads = 1;
    std::vector<BenchRow> rows(queries.size() * algos.size());
    auto work = [&](unsigned worker) {
        for (size_t q = worker; q < queries.size(); q += threads) {
            uint64_t x = queries[q];
            auto dp = oracle::naive_distances(keys, x);
            for (size_t a = 0; a < algos.size(); ++a) {
                QueryTrace trace;
                auto start = std::chrono::steady_clock::now();
                run_algo(index, algos[a], Key{x, index.width()}, std::nullopt, &trace);
                auto stop = std::chrono::steady_clock::now();
                BenchRow& row = rows[q * algos.size() + a];
                row.algo = algos[a];
                row.query = x;
                row.d = dp.d;
                row.D = dp.D;
                row.loop_iters = trace.loop_iterations;
                row.fbs_iters = trace.fbs_iterations;
                row.probes = trace.probes;
                row.nanos =
                    std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
            }
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& t : pool) t.join();
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot open output: " + out_path);
        out = &file;
    }
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const BenchRow& r : rows)
            arr.push_back({{"algo", r.algo},
                           {"query", r.query},
                           {"d", r.d},
                           {"D", r.D},
                           {"loop_iters", r.loop_iters},
                           {"fbs_iters", r.fbs_iters},
                           {"probes", r.probes},
                           {"nanos", r.nanos}});
        *out << arr.dump(2) << "\n";
    } else {
        *out << "algo,query,d,D,loop_iters,fbs_iters,probes,nanos\n";
        for (const BenchRow& r : rows)
            *out << r.algo << "," << r.query << "," << r.d << "," << r.D << "," << r.loop_iters
                 << "," << r.fbs_iters << "," << r.probes << "," << r.nanos << "\n";
    }
    return 0;
}

int cmd_space(const PredIndex& index, const std::string& format) {
    SpaceReport report = index.space_report();
    if (format == "json") {
        nlohmann::json tables = nlohmann::json::array();
        for (const SpaceTable& t : report.tables)
            tables.push_back({{"table", t.name}, {"entries", t.entries}, {"bits", t.bits}});
        nlohmann::json j{{"w", report.width},
                         {"n", report.key_count},
                         {"tables", tables},
                         {"core_bits", report.core_bits},
                         {"weak_prefix_entries", report.weak_prefix_entries},
                         {"weak_prefix_bits", report.weak_prefix_bits}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "table,entries,bits\n";
        for (const SpaceTable& t : report.tables)
            std::cout << t.name << "," << t.entries << "," << t.bits << "\n";
        std::cout << "core_total,," << report.core_bits << "\n";
        std::cout << "weak_prefix," << report.weak_prefix_entries << ","
                  << report.weak_prefix_bits << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"predecessor-search index with distance-sensitive query bounds"};
    app.require_subcommand(1);

    BuildFlags build_flags;
    std::string out_path = "index.zpix";
    auto* build = app.add_subcommand("build", "build an index image from a key file");
    add_build_flags(build, build_flags, true);
    build->add_option("--out", out_path, "output image path");

    std::string image, algo = "baseline", finger_bits;
    bool query_hex = false;
    std::vector<std::string> query_args;
    auto* query = app.add_subcommand("query", "answer predecessor queries from an image");
    query->add_option("--image", image, "index image")->required();
    query->add_option("--algo", algo, "algorithm")
        ->check(CLI::IsMember({"baseline", "short", "long", "combined", "global", "finger"}));
    query->add_option("--finger", finger_bits, "finger key (0/1 string) for --algo finger");
    query->add_flag("--hex", query_hex, "queries are hex integers");
    query->add_option("queries", query_args, "query keys (stdin when omitted)");

    BuildFlags verify_flags;
    std::string verify_image;
    bool exhaustive = false;
    uint64_t samples = 10000, verify_seed = 1;
    auto* verify = app.add_subcommand("verify", "check all algorithms against the oracle");
    add_build_flags(verify, verify_flags, false);
    verify->add_option("--image", verify_image, "verify a saved image instead of building");
    verify->add_flag("--exhaustive", exhaustive, "query every point of the universe (w <= 20)");
    verify->add_option("--samples", samples, "random queries when not exhaustive");
    verify->add_option("--verify-seed", verify_seed, "query sampling seed");

    BuildFlags bench_flags;
    std::string bench_image, bench_dist = "uniform", bench_format = "csv", bench_out;
    uint64_t trials = 1000;
    unsigned bench_threads = 1;
    auto* bench = app.add_subcommand("bench", "probe-count benchmark, CSV or JSON");
    bench->add_option("--image", bench_image, "index image");
    add_build_flags(bench, bench_flags, false);
    bench->add_option("--dist", bench_dist, "query distribution")
        ->check(CLI::IsMember({"uniform", "clustered", "near-member", "far"}));
    bench->add_option("--trials", trials, "number of queries");
    bench->add_option("--format", bench_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--out", bench_out, "output path (stdout when omitted)");
    bench->add_option("--threads", bench_threads, "worker threads (deterministic merge)");

    BuildFlags dump_flags;
    auto* dump = app.add_subcommand("dump", "dump the construction trie in DOT form");
    add_build_flags(dump, dump_flags, true);

    BuildFlags space_flags;
    std::string space_format = "csv";
    auto* space = app.add_subcommand("space", "report table sizes in bits");
    add_build_flags(space, space_flags, true);
    space->add_option("--format", space_format)->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(build_flags, out_path);
        if (query->parsed()) return cmd_query(image, algo, finger_bits, query_hex, query_args);
        if (verify->parsed()) {
            PredIndex index =
                verify_image.empty() ? build_from_flags(verify_flags) : load_index(verify_image);
            return cmd_verify(index, exhaustive, samples, verify_seed);
        }
        if (bench->parsed()) {
            PredIndex index =
                bench_image.empty() ? build_from_flags(bench_flags) : load_index(bench_image);
            return cmd_bench(index, bench_dist, trials, bench_flags.seed, bench_format, bench_out,
                             bench_threads);
        }
        if (dump->parsed()) {
            KeyFileData data = load_keyfile(dump_flags.keys_path, dump_flags.hex);
            std::sort(data.keys.begin(), data.keys.end());
            std::cout << CompactedTrie(data.keys, data.width).to_dot();
            return 0;
        }
        if (space->parsed()) return cmd_space(build_from_flags(space_flags), space_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
