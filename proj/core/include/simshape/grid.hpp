#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace simshape {

inline constexpr int kSecondsPerDay = 86400;

/// Equidistant intra-day sampling grid t_1, ..., t_P.
///
/// Labels are seconds after midnight. The grid is stored as (P, start, step)
/// so equidistance holds by construction.
class TimeGrid {
public:
    /// P points spaced 86400 / P seconds apart starting at midnight.
    /// 86400 must be divisible by P.
    static TimeGrid uniform(std::size_t points_per_day);

    /// Validates explicit labels: at least two, strictly increasing, equal spacing.
    static TimeGrid from_labels(std::span<const int> seconds_of_day);

    [[nodiscard]] std::size_t size() const noexcept { return points_; }
    [[nodiscard]] int start() const noexcept { return start_; }
    [[nodiscard]] int step() const noexcept { return step_; }
    [[nodiscard]] int label(std::size_t i) const { return start_ + static_cast<int>(i) * step_; }
    [[nodiscard]] std::vector<int> labels() const;

    /// Index of the grid point at `seconds_of_day`, if it lies exactly on the grid.
    [[nodiscard]] std::optional<std::size_t> index_of(int seconds_of_day) const noexcept;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    TimeGrid(std::size_t points, int start, int step) : points_(points), start_(start), step_(step) {}

    std::size_t points_;
    int start_;
    int step_;
};

/// "HH:MM" (or "HH:MM:SS" when seconds are nonzero).
std::string format_clock(int seconds_of_day);

/// Parses "HH:MM" or "HHMM" into seconds after midnight.
std::optional<int> parse_clock(std::string_view text);

}  // namespace simshape
