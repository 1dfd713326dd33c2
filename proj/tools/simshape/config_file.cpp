#include "simshape/config_file.hpp"

#include <fstream>

#include "simshape/error.hpp"

namespace simshape::cli {

namespace {

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<ConfigEntry> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file " + path);
    }
    std::vector<ConfigEntry> out;
    std::string section;
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        const std::string line = trimmed(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ParseError(path + ": malformed section header", n);
            }
            section = trimmed(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path + ": expected 'key = value'", n);
        }
        ConfigEntry e{section, trimmed(line.substr(0, eq)), trimmed(line.substr(eq + 1)), n};
        if (e.key.empty()) {
            throw ParseError(path + ": empty key", n);
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace simshape::cli
