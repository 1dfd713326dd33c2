#include "simshape/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <cstdio>
#include <istream>
#include <optional>

#include "csv.hpp"
#include "simshape/error.hpp"

namespace simshape {

using detail::LineReader;
using detail::parse_number;
using detail::split;
using detail::trim;

Timestamp parse_timestamp(std::string_view text) {
    text = trim(text);
    if (text.size() < 16 || text[10] != 'T') {
        throw ParseError("invalid timestamp '" + std::string(text) + "' (expected YYYY-MM-DDTHH:MM)", 0);
    }
    const Date date = parse_date(text.substr(0, 10));
    const auto clock = parse_clock(text.substr(11, 5));
    if (!clock) {
        throw ParseError("invalid timestamp '" + std::string(text) + "' (expected YYYY-MM-DDTHH:MM)", 0);
    }
    int seconds = *clock;
    if (text.size() == 19 && text[16] == ':' && std::isdigit(static_cast<unsigned char>(text[17])) &&
        std::isdigit(static_cast<unsigned char>(text[18]))) {
        const int s = (text[17] - '0') * 10 + (text[18] - '0');
        if (s > 59) {
            throw ParseError("invalid timestamp '" + std::string(text) + "'", 0);
        }
        seconds += s;
    } else if (text.size() != 16) {
        throw ParseError("invalid timestamp '" + std::string(text) + "' (expected YYYY-MM-DDTHH:MM)", 0);
    }
    return {date, seconds};
}

std::string format_timestamp(const Timestamp& ts) { return format_date(ts.date) + "T" + format_clock(ts.seconds); }

namespace {

std::vector<Reading> parse_series(std::istream& in, std::string_view value_column, bool nonnegative) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("missing header (expected 'timestamp," + std::string(value_column) + "')", 1);
    }
    const auto header = split(line);
    if (header.size() != 2 || header[0] != "timestamp" || header[1] != value_column) {
        throw ParseError("unparseable header '" + line + "' (expected 'timestamp," + std::string(value_column) + "')",
                         reader.line_number());
    }
    std::vector<Reading> out;
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const auto n = reader.line_number();
        const auto fields = split(line);
        if (fields.size() != 2) {
            throw ParseError("expected 2 fields, found " + std::to_string(fields.size()), n);
        }
        Timestamp ts;
        try {
            ts = parse_timestamp(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), n);
        }
        const auto value = parse_number(fields[1]);
        if (!value) {
            throw ParseError("non-numeric " + std::string(value_column) + " '" + std::string(fields[1]) + "'", n);
        }
        if (nonnegative && *value < 0.0) {
            throw ParseError(std::string(value_column) + " must be nonnegative", n);
        }
        out.push_back({ts, *value, n});
    }
    return out;
}

}  // namespace

std::vector<Reading> parse_load_file(std::istream& in) { return parse_series(in, "load_mw", true); }

std::vector<Reading> parse_temperature_history(std::istream& in) { return parse_series(in, "temp_c", false); }

std::map<Date, TemperatureSegment> parse_temperature_forecast(std::istream& in, const TimeGrid& grid) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("missing header (expected 'date,tHHMM,...')", 1);
    }
    const auto header = split(line);
    if (header.size() < 2 || header[0] != "date") {
        throw ParseError("unparseable header '" + line + "' (expected 'date,tHHMM,...')", 1);
    }
    // column -> grid index
    std::vector<std::size_t> columns;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const auto name = header[c];
        std::optional<int> clock;
        if (name.size() == 5 && name[0] == 't') {
            clock = parse_clock(name.substr(1));
        }
        const auto idx = clock ? grid.index_of(*clock) : std::nullopt;
        if (!idx) {
            throw ParseError("unknown column '" + std::string(name) + "'", 1);
        }
        if (std::find(columns.begin(), columns.end(), *idx) != columns.end()) {
            throw ParseError("repeated column '" + std::string(name) + "'", 1);
        }
        columns.push_back(*idx);
    }
    std::vector<std::size_t> mask = columns;
    std::sort(mask.begin(), mask.end());

    std::map<Date, TemperatureSegment> out;
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const auto n = reader.line_number();
        const auto fields = split(line);
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             n);
        }
        Date date;
        try {
            date = parse_date(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), n);
        }
        std::vector<double> values(grid.size(), 0.0);
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto v = parse_number(fields[c + 1]);
            if (!v) {
                throw ParseError("non-numeric temperature '" + std::string(fields[c + 1]) + "'", n);
            }
            values[columns[c]] = *v;
        }
        if (out.contains(date)) {
            throw ParseError("duplicate date " + format_date(date), n);
        }
        out.emplace(date, TemperatureSegment(grid, std::move(values), mask));
    }
    return out;
}

HolidaySet parse_holidays(std::istream& in) {
    LineReader reader(in);
    std::string line;
    HolidaySet out;
    while (reader.next(line)) {
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) continue;
        try {
            out.insert(std::chrono::sys_days{parse_date(text)});
        } catch (const ParseError& e) {
            throw ParseError(e.what(), reader.line_number());
        }
    }
    return out;
}

std::string_view to_string(Quality quality) {
    switch (quality) {
        case Quality::complete: return "complete";
        case Quality::gap_filled: return "gap-filled";
        case Quality::rejected: return "rejected";
    }
    return "complete";
}

Quality parse_quality(std::string_view text) {
    if (text == "complete") return Quality::complete;
    if (text == "gap-filled") return Quality::gap_filled;
    if (text == "rejected") return Quality::rejected;
    throw ParseError("unknown quality '" + std::string(text) + "'", 0);
}

HistoryWindow::HistoryWindow(std::vector<DailyRecord> records, std::vector<Date> rejected)
    : records_(std::move(records)), rejected_(std::move(rejected)) {
    std::sort(rejected_.begin(), rejected_.end());
    if (std::adjacent_find(rejected_.begin(), rejected_.end()) != rejected_.end()) {
        throw DomainError("history: duplicate rejected date");
    }
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& rec = records_[i];
        if (rec.quality == Quality::rejected) {
            throw DomainError("history: rejected record " + format_date(rec.meta.date) + " cannot be used");
        }
        if (std::binary_search(rejected_.begin(), rejected_.end(), rec.meta.date)) {
            throw DomainError("history: " + format_date(rec.meta.date) + " is both usable and rejected");
        }
        if (rec.temperature && !(rec.temperature->grid() == rec.load.grid())) {
            throw DomainError("history: temperature grid differs from load grid on " + format_date(rec.meta.date));
        }
        if (i == 0) continue;
        const auto& prev = records_[i - 1];
        if (!(prev.load.grid() == rec.load.grid())) {
            throw DomainError("history: mixed grids");
        }
        if (!(prev.meta.date < rec.meta.date)) {
            throw DomainError("history: dates must be strictly increasing (" + format_date(prev.meta.date) +
                              ", " + format_date(rec.meta.date) + ")");
        }
        for (Date d = add_days(prev.meta.date, 1); d < rec.meta.date; d = add_days(d, 1)) {
            if (!std::binary_search(rejected_.begin(), rejected_.end(), d)) {
                throw DomainError("history: unexplained gap at " + format_date(d));
            }
        }
    }
}

std::optional<std::size_t> HistoryWindow::find(const Date& date) const {
    const auto it = std::lower_bound(records_.begin(), records_.end(), date,
                                     [](const DailyRecord& r, const Date& d) { return r.meta.date < d; });
    if (it == records_.end() || it->meta.date != date) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - records_.begin());
}

HistoryWindow HistoryWindow::before(const Date& date) const {
    std::vector<DailyRecord> recs;
    for (const auto& r : records_) {
        if (r.meta.date < date) recs.push_back(r);
    }
    std::vector<Date> rej;
    for (const auto& d : rejected_) {
        if (d < date) rej.push_back(d);
    }
    return HistoryWindow(std::move(recs), std::move(rej));
}

std::size_t GapReport::count(Quality quality) const {
    return static_cast<std::size_t>(
        std::count_if(days.begin(), days.end(), [&](const DayReport& d) { return d.quality == quality; }));
}

std::size_t GapReport::total_readings() const {
    std::size_t n = 0;
    for (const auto& d : days) n += d.readings;
    return n;
}

namespace {

struct DaySeries {
    std::vector<double> values;
    DayReport report;
};

// Maps n consecutive readings (equal absolute spacing) onto `points` grid points.
std::vector<double> resample(const std::vector<double>& seq, std::size_t points) {
    std::vector<double> out(points);
    const auto n = seq.size();
    for (std::size_t j = 0; j < points; ++j) {
        const double pos = static_cast<double>(j) * static_cast<double>(n) / static_cast<double>(points);
        const auto lo = static_cast<std::size_t>(pos);
        if (lo + 1 >= n) {
            out[j] = seq[n - 1];
        } else {
            const double frac = pos - static_cast<double>(lo);
            out[j] = seq[lo] + frac * (seq[lo + 1] - seq[lo]);
        }
    }
    return out;
}

// Single contiguous run [first, first + len) of flagged slots, if that is all there is.
std::optional<std::pair<std::size_t, std::size_t>> single_run(const std::vector<bool>& flagged) {
    std::optional<std::pair<std::size_t, std::size_t>> run;
    for (std::size_t i = 0; i < flagged.size(); ++i) {
        if (!flagged[i]) continue;
        if (run && run->first + run->second != i) return std::nullopt;
        if (!run) run = std::pair<std::size_t, std::size_t>{i, 0};
        ++run->second;
    }
    return run;
}

bool whole_hour_block(const TimeGrid& grid, std::pair<std::size_t, std::size_t> run) {
    return grid.step() <= 3600 && 3600 % grid.step() == 0 &&
           run.second == static_cast<std::size_t>(3600 / grid.step()) && grid.label(run.first) % 3600 == 0;
}

bool dst_season(const Date& date, bool spring) {
    using namespace std::chrono;
    if (weekday{sys_days{date}} != Sunday) return false;
    const unsigned m = static_cast<unsigned>(date.month());
    return spring ? (m == 3 || m == 4) : (m == 10 || m == 11);
}

// Cuts one series into per-day vectors and classifies every day in
// [first date, last date]. Missing points of accepted days are filled later.
std::map<Date, DaySeries> segment_series(std::span<const Reading> readings, const TimeGrid& grid,
                                         const GapPolicy& policy) {
    const std::size_t P = grid.size();
    std::map<Date, std::vector<const Reading*>> by_date;
    for (const auto& r : readings) {
        if (!grid.index_of(r.time.seconds)) {
            throw ParseError("timestamp " + format_timestamp(r.time) + " is not on the " + std::to_string(P) +
                                 "-point grid",
                             r.line);
        }
        by_date[r.time.date].push_back(&r);
    }
    std::map<Date, DaySeries> out;
    if (by_date.empty()) {
        return out;
    }
    const Date first = by_date.begin()->first;
    const Date last = by_date.rbegin()->first;
    for (Date d = first; d <= last; d = add_days(d, 1)) {
        DaySeries day;
        day.report.date = d;
        day.values.assign(P, 0.0);
        const auto it = by_date.find(d);
        if (it == by_date.end()) {
            day.report.quality = Quality::rejected;
            day.report.note = "no readings";
            out.emplace(d, std::move(day));
            continue;
        }
        const auto& rs = it->second;
        day.report.readings = rs.size();

        std::vector<std::vector<const Reading*>> slots(P);
        for (const Reading* r : rs) {
            slots[*grid.index_of(r->time.seconds)].push_back(r);
        }
        std::vector<bool> missing(P, false);
        std::vector<bool> repeated(P, false);
        for (std::size_t i = 0; i < P; ++i) {
            missing[i] = slots[i].empty();
            repeated[i] = slots[i].size() > 1;
        }
        const auto missing_run = single_run(missing);
        const auto repeated_run = single_run(repeated);
        const bool any_missing = std::find(missing.begin(), missing.end(), true) != missing.end();
        const bool any_repeated = std::find(repeated.begin(), repeated.end(), true) != repeated.end();

        if (policy.dst_aware && any_repeated && !any_missing && repeated_run && whole_hour_block(grid, *repeated_run) &&
            dst_season(d, false) &&
            std::all_of(slots.begin(), slots.end(), [](const auto& s) { return s.size() <= 2; })) {
            // Fall-back day: the repeated hour is lived twice.
            std::vector<double> seq;
            const auto [b, len] = *repeated_run;
            for (std::size_t i = 0; i < b + len; ++i) seq.push_back(slots[i].front()->value);
            for (std::size_t i = b; i < b + len; ++i) seq.push_back(slots[i].back()->value);
            for (std::size_t i = b + len; i < P; ++i) seq.push_back(slots[i].front()->value);
            day.values = resample(seq, P);
            day.report.quality = Quality::gap_filled;
            day.report.filled_points = P;
            day.report.note = "dst fall-back: " + std::to_string(seq.size()) + " readings resampled";
            out.emplace(d, std::move(day));
            continue;
        }

        for (std::size_t i = 0; i < P; ++i) {
            const auto& s = slots[i];
            for (std::size_t k = 1; k < s.size(); ++k) {
                if (s[k]->value != s[0]->value) {
                    throw ParseError("duplicate timestamp " + format_timestamp(s[k]->time) + " with conflicting values",
                                     s[k]->line);
                }
                ++day.report.duplicates;
            }
            if (!s.empty()) day.values[i] = s[0]->value;
        }

        if (policy.dst_aware && any_missing && !any_repeated && missing_run && whole_hour_block(grid, *missing_run) &&
            dst_season(d, true)) {
            // Spring-forward day: one wall-clock hour never happened.
            std::vector<double> seq;
            for (std::size_t i = 0; i < P; ++i) {
                if (!missing[i]) seq.push_back(day.values[i]);
            }
            day.values = resample(seq, P);
            day.report.quality = Quality::gap_filled;
            day.report.filled_points = P;
            day.report.note = "dst spring-forward: " + std::to_string(seq.size()) + " readings resampled";
            out.emplace(d, std::move(day));
            continue;
        }

        std::size_t longest = 0;
        std::size_t run = 0;
        std::size_t total_missing = 0;
        for (std::size_t i = 0; i < P; ++i) {
            run = missing[i] ? run + 1 : 0;
            longest = std::max(longest, run);
            total_missing += missing[i] ? 1 : 0;
        }
        if (total_missing == 0) {
            day.report.quality = Quality::complete;
        } else if (longest > policy.max_gap) {
            day.report.quality = Quality::rejected;
            day.report.note = std::to_string(total_missing) + " missing points, longest gap " +
                              std::to_string(longest) + " > max_gap " + std::to_string(policy.max_gap);
        } else {
            day.report.quality = Quality::gap_filled;
            day.report.filled_points = total_missing;
            day.report.note = std::to_string(total_missing) + " points interpolated";
        }
        // NaN marks points still to be filled.
        for (std::size_t i = 0; i < P; ++i) {
            if (missing[i]) day.values[i] = std::numeric_limits<double>::quiet_NaN();
        }
        out.emplace(d, std::move(day));
    }

    // Fill gaps by linear interpolation along the whole timeline, so gaps at
    // the start or end of a day use the neighbouring days.
    std::vector<double> timeline;
    timeline.reserve(out.size() * P);
    for (const auto& [d, day] : out) {
        if (day.report.readings == 0) {
            timeline.insert(timeline.end(), P, std::numeric_limits<double>::quiet_NaN());
        } else {
            timeline.insert(timeline.end(), day.values.begin(), day.values.end());
        }
    }
    std::size_t offset = 0;
    for (auto& [d, day] : out) {
        if (day.report.quality == Quality::gap_filled && day.report.filled_points != P) {
            for (std::size_t i = 0; i < P; ++i) {
                if (!std::isnan(day.values[i])) continue;
                const std::size_t at = offset + i;
                std::optional<std::size_t> lo;
                std::optional<std::size_t> hi;
                for (std::size_t k = at; k-- > 0;) {
                    if (!std::isnan(timeline[k])) { lo = k; break; }
                }
                for (std::size_t k = at + 1; k < timeline.size(); ++k) {
                    if (!std::isnan(timeline[k])) { hi = k; break; }
                }
                if (lo && hi) {
                    const double frac = static_cast<double>(at - *lo) / static_cast<double>(*hi - *lo);
                    day.values[i] = timeline[*lo] + frac * (timeline[*hi] - timeline[*lo]);
                } else {
                    day.values[i] = timeline[lo ? *lo : *hi];
                }
            }
        }
        offset += P;
    }
    return out;
}

}  // namespace

SegmentizeResult segmentize(std::span<const Reading> loads, const TimeGrid& grid, const GapPolicy& policy,
                            const HolidaySet& holidays, std::span<const Reading> temperatures,
                            const GroupingRule& rule) {
    auto load_days = segment_series(loads, grid, policy);
    auto temp_days = segment_series(temperatures, grid, policy);

    SegmentizeResult result;
    std::vector<DailyRecord> records;
    std::vector<Date> rejected;
    for (auto& [date, day] : load_days) {
        result.load_report.days.push_back(day.report);
        if (day.report.quality == Quality::rejected) {
            rejected.push_back(date);
            continue;
        }
        std::optional<TemperatureSegment> temperature;
        if (const auto t = temp_days.find(date); t != temp_days.end() && t->second.report.quality != Quality::rejected) {
            temperature.emplace(grid, t->second.values);
        }
        records.push_back({annotate_calendar(date, holidays, rule), LoadSegment(grid, std::move(day.values)),
                           std::move(temperature), day.report.quality});
    }
    for (const auto& [date, day] : temp_days) {
        result.temperature_report.days.push_back(day.report);
    }
    result.history = HistoryWindow(std::move(records), std::move(rejected));
    return result;
}

std::vector<Reading> to_readings(const HistoryWindow& history) {
    std::vector<Reading> out;
    for (const auto& rec : history.records()) {
        const auto& grid = rec.load.grid();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out.push_back({{rec.meta.date, grid.label(i)}, rec.load[i], 0});
        }
    }
    return out;
}

}  // namespace simshape
