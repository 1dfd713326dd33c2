#pragma once

#include <string>
#include <utility>
#include <vector>

namespace simshape::cli {

struct ConfigEntry {
    std::string section;
    std::string key;
    std::string value;
    std::size_t line = 0;
};

/// Flat INI: `[section]` headers, `key = value` lines, `#` or `;` comments.
/// Throws simshape::ParseError naming the line.
std::vector<ConfigEntry> read_config_file(const std::string& path);

}  // namespace simshape::cli
