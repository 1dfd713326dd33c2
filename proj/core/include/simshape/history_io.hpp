#pragma once

#include <iosfwd>

#include "simshape/ingestion.hpp"

namespace simshape {

/// Normalized history as JSON lines, one DailyRecord per line in date order.
/// Rejected days are written as `{"date": ..., "quality": "rejected"}`.
void write_history_jsonl(std::ostream& out, const HistoryWindow& history);

/// Inverse of write_history_jsonl. Throws ParseError naming the line.
HistoryWindow read_history_jsonl(std::istream& in);

}  // namespace simshape
