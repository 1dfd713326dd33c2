#include "simshape/history_io.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "csv.hpp"
#include "simshape/error.hpp"

namespace simshape {

using nlohmann::json;

void write_history_jsonl(std::ostream& out, const HistoryWindow& history) {
    const auto records = history.records();
    const auto rejected = history.rejected();
    std::size_t r = 0;
    std::size_t k = 0;
    // Merge usable and rejected days in date order.
    while (r < records.size() || k < rejected.size()) {
        json line;
        if (k < rejected.size() && (r == records.size() || rejected[k] < records[r].meta.date)) {
            line["date"] = format_date(rejected[k]);
            line["quality"] = "rejected";
            ++k;
        } else {
            const auto& rec = records[r++];
            const auto& grid = rec.load.grid();
            line["date"] = format_date(rec.meta.date);
            line["weekday"] = weekday_name(rec.meta.weekday);
            line["holiday"] = rec.meta.is_holiday;
            line["group"] = to_string(rec.meta.group);
            line["quality"] = to_string(rec.quality);
            line["grid"] = {{"points", grid.size()}, {"start", grid.start()}, {"step", grid.step()}};
            line["load"] = std::vector<double>(rec.load.values().begin(), rec.load.values().end());
            if (rec.temperature) {
                const auto& t = *rec.temperature;
                std::vector<double> values;
                for (auto i : t.mask()) values.push_back(t.values()[i]);
                line["temperature"] = {{"mask", std::vector<std::size_t>(t.mask().begin(), t.mask().end())},
                                       {"values", values}};
            } else {
                line["temperature"] = nullptr;
            }
        }
        out << line.dump() << '\n';
    }
}

HistoryWindow read_history_jsonl(std::istream& in) {
    detail::LineReader reader(in);
    std::string text;
    std::vector<DailyRecord> records;
    std::vector<Date> rejected;
    while (reader.next(text)) {
        if (detail::trim(text).empty()) continue;
        const auto n = reader.line_number();
        try {
            const auto line = json::parse(text);
            const Date date = parse_date(line.at("date").get<std::string>());
            const Quality quality = parse_quality(line.at("quality").get<std::string>());
            if (quality == Quality::rejected) {
                rejected.push_back(date);
                continue;
            }
            const auto& g = line.at("grid");
            const auto points = g.at("points").get<std::size_t>();
            const auto start = g.at("start").get<int>();
            const auto step = g.at("step").get<int>();
            std::vector<int> labels(points);
            for (std::size_t i = 0; i < points; ++i) labels[i] = start + static_cast<int>(i) * step;
            const TimeGrid grid = TimeGrid::from_labels(labels);

            CalendarMeta meta;
            meta.date = date;
            meta.weekday = std::chrono::weekday{std::chrono::sys_days{date}};
            meta.is_holiday = line.value("holiday", false);
            meta.group = parse_day_group(line.at("group").get<std::string>());

            std::optional<TemperatureSegment> temperature;
            if (line.contains("temperature") && !line.at("temperature").is_null()) {
                const auto& t = line.at("temperature");
                const auto mask = t.at("mask").get<std::vector<std::size_t>>();
                const auto vals = t.at("values").get<std::vector<double>>();
                if (mask.size() != vals.size()) {
                    throw ParseError("temperature mask and values differ in length", n);
                }
                std::vector<double> full(points, std::nan(""));
                for (std::size_t i = 0; i < mask.size(); ++i) {
                    if (mask[i] >= points) throw ParseError("temperature mask index out of range", n);
                    full[mask[i]] = vals[i];
                }
                if (mask.size() == points) {
                    temperature.emplace(grid, std::move(full));
                } else {
                    temperature.emplace(grid, std::move(full), mask);
                }
            }
            records.push_back(
                {meta, LoadSegment(grid, line.at("load").get<std::vector<double>>()), std::move(temperature), quality});
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError(e.what(), n);
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed history record: ") + e.what(), n);
        } catch (const DomainError& e) {
            throw ParseError(std::string("invalid history record: ") + e.what(), n);
        }
    }
    return HistoryWindow(std::move(records), std::move(rejected));
}

}  // namespace simshape
