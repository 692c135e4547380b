#include "zpred/keyfile.hpp"

#include <fstream>
#include <sstream>

#include "zpred/bitkey.hpp"

namespace zpred {

namespace {

[[noreturn]] void fail(size_t line, const std::string& what) {
    throw ParseError("key file, line " + std::to_string(line) + ": " + what);
}

}  // namespace

KeyFileData parse_keyfile(std::istream& in, bool hex) {
    KeyFileData data;
    std::string line;
    size_t lineno = 0;

    if (!std::getline(in, line)) fail(1, "missing \"w=<int>\" header");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("w=", 0) != 0) fail(lineno, "expected \"w=<int>\" header");
    try {
        data.width = std::stoi(line.substr(2));
    } catch (const std::exception&) {
        fail(lineno, "bad width value");
    }
    if (data.width < 1 || data.width > 64) fail(lineno, "width must be in [1,64]");

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (hex) {
            uint64_t value = 0;
            size_t pos = 0;
            try {
                value = std::stoull(line, &pos, 16);
            } catch (const std::exception&) {
                fail(lineno, "bad hex key");
            }
            if (pos != line.size()) fail(lineno, "bad hex key");
            if (data.width < 64 && (value >> data.width))
                fail(lineno, "key does not fit width");
            data.keys.push_back(value);
        } else {
            if (int(line.size()) != data.width)
                fail(lineno, "expected exactly " + std::to_string(data.width) + " bits");
            auto bits = parse_bits(line);
            if (!bits) fail(lineno, "keys must consist of 0/1 characters");
            data.keys.push_back(bits->bits);
        }
    }
    if (data.keys.empty()) fail(lineno + 1, "no keys");
    return data;
}

KeyFileData load_keyfile(const std::string& path, bool hex) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open key file: " + path);
    return parse_keyfile(in, hex);
}

void write_keyfile(std::ostream& out, const std::vector<uint64_t>& keys, int width, bool hex) {
    out << "w=" << width << "\n";
    for (uint64_t k : keys) {
        if (hex) {
            std::ostringstream os;
            os << std::hex << k;
            out << os.str() << "\n";
        } else {
            out << to_string(Key{k, width}) << "\n";
        }
    }
}

}  // namespace zpred
