#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simshape::detail {

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view line, char sep = ',');

/// Whole-field decimal parse; rejects trailing garbage, inf and nan.
std::optional<double> parse_number(std::string_view text);

/// Line reader that tracks 1-based line numbers, strips '\r' and a leading BOM.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}
    bool next(std::string& line);
    [[nodiscard]] std::size_t line_number() const noexcept { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

/// Shortest text that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace simshape::detail
