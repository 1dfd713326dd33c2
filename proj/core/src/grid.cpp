#include "simshape/grid.hpp"

#include <cstdio>

#include "simshape/error.hpp"

namespace simshape {

TimeGrid TimeGrid::uniform(std::size_t points_per_day) {
    if (points_per_day < 2) {
        throw DomainError("time grid needs at least 2 points per day");
    }
    if (kSecondsPerDay % points_per_day != 0) {
        throw DomainError("86400 s is not divisible by " + std::to_string(points_per_day) + " points");
    }
    return {points_per_day, 0, static_cast<int>(kSecondsPerDay / points_per_day)};
}

TimeGrid TimeGrid::from_labels(std::span<const int> seconds_of_day) {
    if (seconds_of_day.size() < 2) {
        throw DomainError("time grid needs at least 2 labels");
    }
    const int step = seconds_of_day[1] - seconds_of_day[0];
    if (step <= 0) {
        throw DomainError("time grid labels must be strictly increasing");
    }
    for (std::size_t i = 1; i < seconds_of_day.size(); ++i) {
        if (seconds_of_day[i] - seconds_of_day[i - 1] != step) {
            throw DomainError("time grid labels must be equidistant");
        }
    }
    if (seconds_of_day.front() < 0 || seconds_of_day.back() >= kSecondsPerDay) {
        throw DomainError("time grid labels must lie within one day");
    }
    return {seconds_of_day.size(), seconds_of_day.front(), step};
}

std::vector<int> TimeGrid::labels() const {
    std::vector<int> out(points_);
    for (std::size_t i = 0; i < points_; ++i) {
        out[i] = label(i);
    }
    return out;
}

std::optional<std::size_t> TimeGrid::index_of(int seconds_of_day) const noexcept {
    const int offset = seconds_of_day - start_;
    if (offset < 0 || offset % step_ != 0) {
        return std::nullopt;
    }
    const auto idx = static_cast<std::size_t>(offset / step_);
    if (idx >= points_) {
        return std::nullopt;
    }
    return idx;
}

std::string format_clock(int seconds_of_day) {
    char buf[16];
    const int h = seconds_of_day / 3600;
    const int m = (seconds_of_day / 60) % 60;
    const int s = seconds_of_day % 60;
    if (s == 0) {
        std::snprintf(buf, sizeof buf, "%02d:%02d", h, m);
    } else {
        std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", h, m, s);
    }
    return buf;
}

std::optional<int> parse_clock(std::string_view text) {
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    int h = 0;
    int m = 0;
    if (text.size() == 5 && text[2] == ':' && digit(text[0]) && digit(text[1]) && digit(text[3]) &&
        digit(text[4])) {
        h = (text[0] - '0') * 10 + (text[1] - '0');
        m = (text[3] - '0') * 10 + (text[4] - '0');
    } else if (text.size() == 4 && digit(text[0]) && digit(text[1]) && digit(text[2]) && digit(text[3])) {
        h = (text[0] - '0') * 10 + (text[1] - '0');
        m = (text[2] - '0') * 10 + (text[3] - '0');
    } else {
        return std::nullopt;
    }
    if (h > 23 || m > 59) {
        return std::nullopt;
    }
    return h * 3600 + m * 60;
}

}  // namespace simshape
