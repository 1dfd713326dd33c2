#include "simshape/predictor.hpp"

#include <algorithm>
#include <string>

#include "simshape/error.hpp"

namespace simshape {

std::string_view to_string(WeightPool pool) { return pool == WeightPool::all_days ? "all-days" : "same-group"; }

WeightPool parse_weight_pool(std::string_view text) {
    if (text == "all-days") return WeightPool::all_days;
    if (text == "same-group") return WeightPool::same_group;
    throw ParseError("unknown weight pool '" + std::string(text) + "'", 0);
}

WeightVector compute_weights(std::span<const LoadSegment> history, const LoadSegment& reference,
                             const KernelSpec& kernel, const DistanceSpec& dist) {
    if (history.empty()) {
        throw DomainError("weights need at least one history segment");
    }
    std::vector<double> d(history.size());
    for (std::size_t r = 0; r < history.size(); ++r) {
        if (!(history[r].grid() == reference.grid())) {
            throw DomainError("history segment and reference are on different grids");
        }
        d[r] = distance(history[r].values(), reference.values(), dist);
    }
    return kernel_weights(d, kernel);
}

LoadSegment predict_shape(std::span<const LoadSegment> history, const WeightVector& weights) {
    if (history.empty() || history.size() != weights.size()) {
        throw DomainError("prediction needs one weight per history segment");
    }
    const auto& grid = history.front().grid();
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t r = 0; r < history.size(); ++r) {
        if (!(history[r].grid() == grid)) {
            throw DomainError("history segments are on different grids");
        }
        const double w = weights[r];
        const auto v = history[r].values();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * v[i];
    }
    return {grid, std::move(out)};
}

std::vector<std::size_t> forecast_mask(const TimeGrid& grid, std::span<const int> times) {
    std::vector<std::size_t> mask;
    if (times.empty()) {
        mask.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) mask[i] = i;
        return mask;
    }
    for (int t : times) {
        const auto idx = grid.index_of(t);
        if (!idx) {
            throw DomainError("forecast time " + format_clock(t) + " is not a grid point");
        }
        mask.push_back(*idx);
    }
    std::sort(mask.begin(), mask.end());
    mask.erase(std::unique(mask.begin(), mask.end()), mask.end());
    return mask;
}

std::optional<TemperatureSegment> forecast_from(const TemperatureSegment& realized,
                                                std::span<const std::size_t> mask) {
    if (mask.empty() || !realized.covers(mask)) {
        return std::nullopt;
    }
    std::vector<double> values(realized.values().begin(), realized.values().end());
    return TemperatureSegment(realized.grid(), std::move(values), std::vector<std::size_t>(mask.begin(), mask.end()));
}

Prediction predict_prepared(std::span<const PreparedDay> days, const CalendarMeta& target,
                            const TemperatureSegment& forecast, std::optional<double> next_day_max,
                            const PredictorConfig& cfg) {
    if (days.empty()) {
        throw DomainError("prediction needs a nonempty history");
    }
    if (!(days.back().meta.date < target.date)) {
        throw DomainError("target date " + format_date(target.date) + " does not follow the history (last day " +
                          format_date(days.back().meta.date) + ")");
    }
    cfg.reference.validate();

    std::vector<std::string> warnings;
    const auto candidates = resolve_candidates(days, target.group, cfg.reference, warnings);
    ReferenceResult reference = select_reference(days, candidates, forecast, cfg.reference);
    warnings.insert(warnings.end(), reference.warnings.begin(), reference.warnings.end());

    std::vector<std::size_t> pool;
    const DayGroup pool_group = days[candidates.front()].meta.group;
    for (std::size_t r = 0; r < days.size(); ++r) {
        if (cfg.pool == WeightPool::all_days || days[r].meta.group == pool_group) pool.push_back(r);
    }

    std::vector<double> d(pool.size());
    for (std::size_t k = 0; k < pool.size(); ++k) {
        d[k] = distance(days[pool[k]].shape.values(), reference.reference.values(), cfg.distance);
    }
    WeightVector weights = kernel_weights(d, cfg.kernel);
    if (weights.nearest_fallback) {
        warnings.push_back("no segment within bandwidth; using the nearest segment");
    }

    const auto& grid = days.front().shape.grid();
    std::vector<double> shape(grid.size(), 0.0);
    std::vector<Date> dates(pool.size());
    for (std::size_t k = 0; k < pool.size(); ++k) {
        const double w = weights[k];
        const auto v = days[pool[k]].shape.values();
        for (std::size_t i = 0; i < shape.size(); ++i) shape[i] += w * v[i];
        dates[k] = days[pool[k]].meta.date;
    }

    Prediction out{target.date,
                   LoadSegment(grid, std::move(shape)),
                   std::nullopt,
                   std::move(weights),
                   std::move(dates),
                   std::move(reference),
                   cfg,
                   std::move(warnings)};
    if (next_day_max) {
        out.scaled = unscale(out.shape, *next_day_max);
    }
    return out;
}

Prediction predict_day(const HistoryWindow& history, const CalendarMeta& target,
                       const TemperatureSegment& forecast, std::optional<double> next_day_max,
                       const PredictorConfig& cfg) {
    const auto days = prepare_history(history, cfg.rescale);
    return predict_prepared(days, target, forecast, next_day_max, cfg);
}

}  // namespace simshape
