#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simshape/distance.hpp"
#include "simshape/ingestion.hpp"
#include "simshape/kernel.hpp"
#include "simshape/prepared.hpp"
#include "simshape/reference.hpp"

namespace simshape {

/// Which past days enter the weighted sum.
enum class WeightPool { all_days, same_group };

std::string_view to_string(WeightPool pool);
WeightPool parse_weight_pool(std::string_view text);

struct PredictorConfig {
    ReferenceConfig reference;
    KernelSpec kernel;
    /// Metric between load segments.
    DistanceSpec distance;
    WeightPool pool = WeightPool::all_days;
    /// Predict on daily-max rescaled shapes (and unscale at the end).
    bool rescale = true;
    /// Clock times (seconds after midnight) at which temperature forecasts are
    /// available. Used when realized temperatures stand in for forecasts.
    /// Empty means the full grid.
    std::vector<int> forecast_times{8 * 3600, 12 * 3600, 16 * 3600, 20 * 3600};
};

struct Prediction {
    Date date;
    LoadSegment shape;
    std::optional<LoadSegment> scaled;
    WeightVector weights;
    std::vector<Date> weight_dates;  // aligned with weights
    ReferenceResult reference;
    PredictorConfig config;
    std::vector<std::string> warnings;
};

/// Kernel weights of every history segment around `reference`.
WeightVector compute_weights(std::span<const LoadSegment> history, const LoadSegment& reference,
                             const KernelSpec& kernel, const DistanceSpec& dist);

/// Coordinate-wise sum_r w_r * S_r.
LoadSegment predict_shape(std::span<const LoadSegment> history, const WeightVector& weights);

/// Full one-day-ahead pipeline: candidates, reference, weights, weighted sum.
/// `scaled` is filled iff `next_day_max` is given.
Prediction predict_day(const HistoryWindow& history, const CalendarMeta& target,
                       const TemperatureSegment& forecast, std::optional<double> next_day_max,
                       const PredictorConfig& cfg);

/// Same pipeline on already prepared days (their form must match cfg.rescale).
Prediction predict_prepared(std::span<const PreparedDay> days, const CalendarMeta& target,
                            const TemperatureSegment& forecast, std::optional<double> next_day_max,
                            const PredictorConfig& cfg);

/// Grid indices of `cfg.forecast_times` (the whole grid when empty).
std::vector<std::size_t> forecast_mask(const TimeGrid& grid, std::span<const int> times);

/// A realized temperature restricted to `mask`, used as a perfect forecast.
/// Returns nullopt when the realized curve does not cover the mask.
std::optional<TemperatureSegment> forecast_from(const TemperatureSegment& realized,
                                                std::span<const std::size_t> mask);

struct BandwidthRisk {
    double bandwidth = 0.0;
    double mean_rmae = 0.0;
    std::size_t days_scored = 0;
};

struct BandwidthSelection {
    double bandwidth = 0.0;
    std::vector<BandwidthRisk> risks;
};

/// Chooses h by one-day-ahead empirical risk (mean RMAE) over the last
/// `validation_days` days, each predicted from strictly earlier days with its
/// realized temperature as forecast. Ties go to the smaller h.
///
/// Throws DomainError on an empty grid or when the history is not longer than
/// validation_days + min_training.
BandwidthSelection select_bandwidth(std::span<const PreparedDay> days, const PredictorConfig& cfg,
                                    std::span<const double> grid, std::size_t validation_days,
                                    std::size_t min_training = 7);

BandwidthSelection select_bandwidth(const HistoryWindow& history, const PredictorConfig& cfg,
                                    std::span<const double> grid, std::size_t validation_days,
                                    std::size_t min_training = 7);

/// `count` log-spaced values over [0.01, 10] x median pairwise segment distance.
/// At most the last `max_days` days are used for the median.
std::vector<double> default_bandwidth_grid(std::span<const PreparedDay> days, const DistanceSpec& dist,
                                           std::size_t count = 25, std::size_t max_days = 365);

}  // namespace simshape
