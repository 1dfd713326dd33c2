#pragma once

#include <iosfwd>
#include <vector>

#include "simshape/evaluation.hpp"

namespace simshape {

/// `date,method,rmae,maxdiff,mindiff`, one row per score.
void write_report_csv(std::ostream& out, const BacktestReport& report);
/// Scores, summary, protocol and config snapshot.
void write_report_json(std::ostream& out, const BacktestReport& report);
/// `t,actual,<method>...` for one date.
void write_curves_csv(std::ostream& out, const DayCurves& curves);

std::vector<DayScore> read_report_csv(std::istream& in);

}  // namespace simshape
