#pragma once

#include <optional>
#include <span>
#include <vector>

#include "simshape/ingestion.hpp"

namespace simshape {

/// A history day ready for prediction: calendar data, the segment the
/// predictor works on, and the factor that was divided out of it.
struct PreparedDay {
    CalendarMeta meta;
    LoadSegment shape;
    double scale = 1.0;
    std::optional<TemperatureSegment> temperature;
};

/// With `rescale` every load is divided by its daily maximum; otherwise the
/// values are used as they are and scale is 1.
std::vector<PreparedDay> prepare_history(const HistoryWindow& history, bool rescale);

}  // namespace simshape
