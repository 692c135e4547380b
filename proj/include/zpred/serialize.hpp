#pragma once

// Versioned binary image of a built index. Loading restores every table
// verbatim, so a reloaded index answers and traces exactly like the one it
// was saved from. Readers reject unknown magic or versions.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "zpred/index.hpp"

namespace zpred {

struct ImageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr uint32_t kImageMagic = 0x5A504958;  // "ZPIX"
inline constexpr uint32_t kImageVersion = 1;

void save_index(const PredIndex& index, std::ostream& out);
void save_index(const PredIndex& index, const std::string& path);
PredIndex load_index(std::istream& in);
PredIndex load_index(const std::string& path);

}  // namespace zpred
