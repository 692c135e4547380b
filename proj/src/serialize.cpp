#include "zpred/serialize.hpp"

#include <fstream>
#include <vector>

namespace zpred {

namespace {

void put_u8(std::ostream& out, uint8_t v) { out.put(char(v)); }

void put_u32(std::ostream& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(char(v >> (8 * i)));
}

void put_u64(std::ostream& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(char(v >> (8 * i)));
}

uint8_t get_u8(std::istream& in) {
    int c = in.get();
    if (c < 0) throw ImageError("index image: truncated");
    return uint8_t(c);
}

uint32_t get_u32(std::istream& in) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(get_u8(in)) << (8 * i);
    return v;
}

uint64_t get_u64(std::istream& in) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(get_u8(in)) << (8 * i);
    return v;
}

void put_bits(std::ostream& out, const BitString& s) {
    put_u64(out, s.bits);
    put_u8(out, uint8_t(s.len));
}

BitString get_bits(std::istream& in) {
    uint64_t bits = get_u64(in);
    int len = get_u8(in);
    if (len > 64) throw ImageError("index image: bad bit string");
    return BitString{bits, len};
}

void put_static_fn(std::ostream& out, const StaticFn& fn) {
    put_u8(out, uint8_t(fn.mode()));
    put_u32(out, fn.payload_limit());
    put_u64(out, fn.seed());
    put_u64(out, fn.entries());
    for (const auto& [key, payload] : fn.raw()) {
        put_bits(out, key);
        put_u32(out, payload);
    }
}

StaticFn get_static_fn(std::istream& in) {
    FnMode mode = FnMode(get_u8(in));
    uint32_t limit = get_u32(in);
    uint64_t seed = get_u64(in);
    StaticFn fn(mode, limit, seed);
    uint64_t count = get_u64(in);
    for (uint64_t i = 0; i < count; ++i) {
        BitString key = get_bits(in);
        fn.insert(key, get_u32(in));
    }
    return fn;
}

void put_locator(std::ostream& out, const RangeLocator& loc) {
    put_u8(out, uint8_t(loc.mode()));
    put_u64(out, uint64_t(loc.key_count()));
    put_u64(out, loc.seed());
    put_u64(out, loc.entries());
    for (const auto& [name, range] : loc.raw()) {
        put_bits(out, name);
        put_u64(out, uint64_t(range.first));
        put_u64(out, uint64_t(range.second));
    }
}

RangeLocator get_locator(std::istream& in) {
    FnMode mode = FnMode(get_u8(in));
    int64_t n = int64_t(get_u64(in));
    uint64_t seed = get_u64(in);
    RangeLocator loc(mode, n, seed);
    uint64_t count = get_u64(in);
    for (uint64_t i = 0; i < count; ++i) {
        BitString name = get_bits(in);
        int64_t l = int64_t(get_u64(in));
        int64_t r = int64_t(get_u64(in));
        loc.insert(name, l, r);
    }
    return loc;
}

void put_core(std::ostream& out, const SearchCore& core) {
    put_u8(out, uint8_t(core.width));
    put_u8(out, uint8_t(core.mode));
    put_u64(out, core.seed);
    put_u64(out, core.keys.size());
    for (uint64_t k : core.keys) put_u64(out, k);
    put_u32(out, uint32_t(core.root_extent_len));
    put_locator(out, core.locator);
    put_static_fn(out, core.handle_g);
    put_static_fn(out, core.long_index.exit_name_len);
}

SearchCore get_core(std::istream& in) {
    SearchCore core;
    core.width = get_u8(in);
    core.mode = FnMode(get_u8(in));
    core.seed = get_u64(in);
    uint64_t n = get_u64(in);
    core.keys.resize(n);
    for (uint64_t& k : core.keys) k = get_u64(in);
    core.root_extent_len = int(get_u32(in));
    core.locator = get_locator(in);
    core.handle_g = get_static_fn(in);
    core.long_index.exit_name_len = get_static_fn(in);
    return core;
}

}  // namespace

void save_index(const PredIndex& index, std::ostream& out) {
    put_u32(out, kImageMagic);
    put_u32(out, kImageVersion);
    put_core(out, index.core());

    const ShortIndex& si = index.short_index();
    put_u32(out, uint32_t(si.cut_lengths.size()));
    for (int cut : si.cut_lengths) put_u32(out, uint32_t(cut));
    put_static_fn(out, si.exit_name_len);
    put_static_fn(out, si.level);

    put_u8(out, index.has_global() ? 1 : 0);
    if (index.has_global()) {
        const GlobalIndex& gi = index.global();
        put_u32(out, uint32_t(gi.bucket_bits));
        put_u64(out, gi.offsets.size());
        for (int64_t off : gi.offsets) put_u64(out, uint64_t(off));
        for (const auto& bucket : gi.buckets) {
            put_u8(out, bucket ? 1 : 0);
            if (bucket) put_core(out, *bucket);
        }
    }

    put_u64(out, index.weak_prefix_entry_count());
    put_u8(out, index.has_finger() ? 1 : 0);
    if (index.has_finger()) put_locator(out, index.weak_prefix().raw());

    if (!out) throw ImageError("index image: write failure");
}

void save_index(const PredIndex& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ImageError("cannot open image for writing: " + path);
    save_index(index, out);
}

PredIndex load_index(std::istream& in) {
    if (get_u32(in) != kImageMagic) throw ImageError("index image: bad magic");
    uint32_t version = get_u32(in);
    if (version != kImageVersion)
        throw ImageError("index image: unsupported version " + std::to_string(version));

    SearchCore core = get_core(in);

    ShortIndex si;
    uint32_t levels = get_u32(in);
    for (uint32_t i = 0; i < levels; ++i) si.cut_lengths.push_back(int(get_u32(in)));
    si.exit_name_len = get_static_fn(in);
    si.level = get_static_fn(in);

    std::unique_ptr<GlobalIndex> global;
    if (get_u8(in)) {
        global = std::make_unique<GlobalIndex>();
        global->bucket_bits = int(get_u32(in));
        uint64_t offsets = get_u64(in);
        global->offsets.resize(offsets);
        for (int64_t& off : global->offsets) off = int64_t(get_u64(in));
        global->buckets.resize(offsets - 1);
        for (auto& bucket : global->buckets)
            if (get_u8(in)) bucket = std::make_unique<SearchCore>(get_core(in));
    }

    uint64_t weak_entries = get_u64(in);
    std::unique_ptr<WeakPrefixIndex> weak;
    if (get_u8(in)) weak = std::make_unique<WeakPrefixIndex>(get_locator(in));
    return assemble_index(std::move(core), std::move(si), std::move(global), std::move(weak),
                          weak_entries);
}

PredIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageError("cannot open image: " + path);
    return load_index(in);
}

}  // namespace zpred
