#include "simshape/calendar.hpp"

#include <cstdio>

#include "simshape/error.hpp"

namespace simshape {

using namespace std::chrono;

Date parse_date(std::string_view text) {
    auto digits = [&](std::size_t from, std::size_t n, int& out) {
        out = 0;
        for (std::size_t i = from; i < from + n; ++i) {
            if (text[i] < '0' || text[i] > '9') return false;
            out = out * 10 + (text[i] - '0');
        }
        return true;
    };
    int y = 0;
    int m = 0;
    int d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !digits(0, 4, y) || !digits(5, 2, m) ||
        !digits(8, 2, d)) {
        throw ParseError("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)", 0);
    }
    const Date date{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        throw ParseError("invalid calendar date '" + std::string(text) + "'", 0);
    }
    return date;
}

std::string format_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

Date add_days(const Date& date, int n) { return Date{sys_days{date} + days{n}}; }

int days_between(const Date& from, const Date& to) {
    return static_cast<int>((sys_days{to} - sys_days{from}).count());
}

std::string_view to_string(DayGroup group) {
    switch (group) {
        case DayGroup::g1: return "G1";
        case DayGroup::g2: return "G2";
        case DayGroup::g3: return "G3";
        case DayGroup::g4: return "G4";
        case DayGroup::holiday: return "HOLIDAY";
    }
    return "G1";
}

DayGroup parse_day_group(std::string_view text) {
    for (auto g : kAllGroups) {
        if (text == to_string(g)) return g;
    }
    throw ParseError("unknown day group '" + std::string(text) + "'", 0);
}

DayGroup GroupingRule::classify(weekday wd, bool is_holiday) const {
    if (is_holiday && holidays_override) {
        return DayGroup::holiday;
    }
    return by_weekday[wd.c_encoding()];
}

CalendarMeta annotate_calendar(const Date& date, const HolidaySet& holidays, const GroupingRule& rule) {
    const weekday wd{sys_days{date}};
    const bool holiday = holidays.contains(sys_days{date});
    return {date, wd, holiday, rule.classify(wd, holiday)};
}

std::string_view weekday_name(weekday wd) {
    static constexpr std::string_view names[] = {"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};
    return names[wd.c_encoding()];
}

}  // namespace simshape
