#include "simshape/prepared.hpp"

namespace simshape {

std::vector<PreparedDay> prepare_history(const HistoryWindow& history, bool rescale) {
    std::vector<PreparedDay> out;
    out.reserve(history.size());
    for (const auto& rec : history.records()) {
        if (rescale) {
            LoadSegment shape = rescale_day(rec.load);
            const double scale = *shape.scale();
            out.push_back({rec.meta, std::move(shape), scale, rec.temperature});
        } else {
            out.push_back({rec.meta, rec.load, 1.0, rec.temperature});
        }
    }
    return out;
}

}  // namespace simshape
