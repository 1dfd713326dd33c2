#pragma once

#include <array>
#include <chrono>
#include <set>
#include <string>
#include <string_view>

namespace simshape {

using Date = std::chrono::year_month_day;

/// Strict "YYYY-MM-DD". Throws ParseError (line 0) on failure.
Date parse_date(std::string_view text);
std::string format_date(const Date& date);

[[nodiscard]] Date add_days(const Date& date, int days);
[[nodiscard]] int days_between(const Date& from, const Date& to);

/// Calendar equivalence classes of days. G1 = Mon/Tue/Thu/Fri, G2 = Wed,
/// G3 = Sat, G4 = Sun, plus a separate class for holidays.
enum class DayGroup { g1, g2, g3, g4, holiday };

inline constexpr std::array<DayGroup, 5> kAllGroups{DayGroup::g1, DayGroup::g2, DayGroup::g3,
                                                   DayGroup::g4, DayGroup::holiday};

std::string_view to_string(DayGroup group);
DayGroup parse_day_group(std::string_view text);

/// Weekday -> group table with holiday override.
struct GroupingRule {
    // Indexed by std::chrono::weekday::c_encoding() (0 = Sunday).
    std::array<DayGroup, 7> by_weekday{DayGroup::g4, DayGroup::g1, DayGroup::g1, DayGroup::g2,
                                       DayGroup::g1, DayGroup::g1, DayGroup::g3};
    bool holidays_override = true;

    [[nodiscard]] DayGroup classify(std::chrono::weekday weekday, bool is_holiday) const;
};

struct CalendarMeta {
    Date date;
    std::chrono::weekday weekday;
    bool is_holiday = false;
    DayGroup group = DayGroup::g1;
};

using HolidaySet = std::set<std::chrono::sys_days>;

CalendarMeta annotate_calendar(const Date& date, const HolidaySet& holidays,
                               const GroupingRule& rule = {});

/// Short English weekday name ("Mon" ... "Sun").
std::string_view weekday_name(std::chrono::weekday weekday);

}  // namespace simshape
