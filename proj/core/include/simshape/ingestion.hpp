#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simshape/calendar.hpp"
#include "simshape/grid.hpp"
#include "simshape/segment.hpp"

namespace simshape {

/// Local civil wall-clock time (no UTC offset).
struct Timestamp {
    Date date;
    int seconds = 0;  // after midnight

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
    friend bool operator==(const Timestamp&, const Timestamp&) = default;
};

/// "YYYY-MM-DDTHH:MM" (optionally ":SS"). Throws ParseError (line 0).
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(const Timestamp& ts);

struct Reading {
    Timestamp time;
    double value = 0.0;
    std::size_t line = 0;  // 1-based source line, 0 when synthesized
};

/// Load CSV with header `timestamp,load_mw`. Rows are returned in file order.
std::vector<Reading> parse_load_file(std::istream& in);

/// Historical temperature CSV with header `timestamp,temp_c`.
std::vector<Reading> parse_temperature_history(std::istream& in);

/// Forecast CSV with header `date,tHHMM,...` (e.g. `date,t0800,t1200,t1600,t2000`).
/// Each column must name a point of `grid`; the mask of every segment is the
/// set of those grid indices.
std::map<Date, TemperatureSegment> parse_temperature_forecast(std::istream& in, const TimeGrid& grid);

/// One ISO date per line; blank lines and `#` comments are ignored.
HolidaySet parse_holidays(std::istream& in);

enum class Quality { complete, gap_filled, rejected };

std::string_view to_string(Quality quality);
Quality parse_quality(std::string_view text);

struct DailyRecord {
    CalendarMeta meta;
    LoadSegment load;
    std::optional<TemperatureSegment> temperature;
    Quality quality = Quality::complete;
};

/// Usable days in ascending date order, plus the dates that were rejected.
/// Consecutive records are one day apart unless the missing dates are listed
/// as rejected.
class HistoryWindow {
public:
    HistoryWindow() = default;
    /// Throws DomainError on unsorted or duplicate dates, on rejected-quality
    /// records, on mixed grids, or on unexplained calendar gaps.
    explicit HistoryWindow(std::vector<DailyRecord> records, std::vector<Date> rejected = {});

    [[nodiscard]] std::span<const DailyRecord> records() const noexcept { return records_; }
    [[nodiscard]] std::span<const Date> rejected() const noexcept { return rejected_; }
    [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
    [[nodiscard]] bool empty() const noexcept { return records_.empty(); }
    [[nodiscard]] const DailyRecord& operator[](std::size_t i) const { return records_[i]; }
    [[nodiscard]] const DailyRecord& back() const { return records_.back(); }

    [[nodiscard]] std::optional<std::size_t> find(const Date& date) const;

    /// Records strictly before `date`.
    [[nodiscard]] HistoryWindow before(const Date& date) const;

private:
    std::vector<DailyRecord> records_;
    std::vector<Date> rejected_;
};

struct GapPolicy {
    /// Longest run of consecutive missing grid points that may be interpolated.
    std::size_t max_gap = 4;
    /// Recognize daylight-saving transition days (one wall-clock hour missing
    /// or repeated) and resample them onto the grid in absolute time.
    bool dst_aware = false;
};

struct DayReport {
    Date date;
    Quality quality = Quality::complete;
    std::size_t readings = 0;       // input rows dated this day, duplicates included
    std::size_t duplicates = 0;     // identical repeated rows folded into one
    std::size_t filled_points = 0;  // grid points produced by interpolation
    std::string note;
};

struct GapReport {
    std::vector<DayReport> days;

    [[nodiscard]] std::size_t count(Quality quality) const;
    [[nodiscard]] std::size_t total_readings() const;
};

struct SegmentizeResult {
    HistoryWindow history;
    GapReport load_report;
    GapReport temperature_report;
};

/// Cuts readings into daily grids, fills short gaps by linear interpolation
/// and rejects days whose gaps exceed the policy.
///
/// Temperatures are optional; a day whose temperature series is rejected keeps
/// its load but carries no temperature segment.
/// Throws ParseError for duplicate timestamps with conflicting values or for
/// timestamps that are off the grid.
SegmentizeResult segmentize(std::span<const Reading> loads, const TimeGrid& grid, const GapPolicy& policy,
                            const HolidaySet& holidays = {}, std::span<const Reading> temperatures = {},
                            const GroupingRule& rule = {});

/// Flattens the load of every record back into readings, in time order.
std::vector<Reading> to_readings(const HistoryWindow& history);

}  // namespace simshape
