#pragma once

// Text key files: a "w=<int>" header, then one key per line as exactly w
// characters of 0/1 (or hex digits in hex mode). Keys need not be sorted;
// the index builder sorts and rejects duplicates.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace zpred {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KeyFileData {
    int width = 0;
    std::vector<uint64_t> keys;  // in file order, unsorted
};

KeyFileData parse_keyfile(std::istream& in, bool hex = false);
KeyFileData load_keyfile(const std::string& path, bool hex = false);
void write_keyfile(std::ostream& out, const std::vector<uint64_t>& keys, int width,
                   bool hex = false);

}  // namespace zpred
