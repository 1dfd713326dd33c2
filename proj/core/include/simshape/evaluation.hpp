#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simshape/ingestion.hpp"
#include "simshape/predictor.hpp"

namespace simshape {

struct Scores {
    double rmae = 0.0;
    double maxdiff = 0.0;  // max_i (pred_i - actual_i), signed
    double mindiff = 0.0;  // min_i (pred_i - actual_i), signed
};

/// RMAE, MaxDiff and MinDiff of a predicted curve against the realized one.
/// Throws DomainError on length mismatch, empty input or a nonpositive actual value.
Scores score_day(std::span<const double> predicted, std::span<const double> actual);
Scores score_day(const LoadSegment& predicted, const LoadSegment& actual);

enum class Method { ssp, persistence, conditional_kernel };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);
/// Comma separated list, e.g. "ssp,persistence,conditional-kernel".
std::vector<Method> parse_methods(std::string_view text);

struct DayScore {
    Date date;
    std::string method;
    double rmae = 0.0;
    double maxdiff = 0.0;
    double mindiff = 0.0;
};

struct MethodSummary {
    std::string method;
    std::size_t days = 0;
    double mean_rmae = 0.0;
    double median_rmae = 0.0;
    /// Dates on which this method had the strictly lowest RMAE.
    std::size_t wins = 0;
};

/// Megawatt curves behind one backtest date.
struct DayCurves {
    Date date;
    TimeGrid grid = TimeGrid::uniform(96);
    std::vector<double> actual;
    std::vector<std::pair<std::string, std::vector<double>>> predictions;
};

struct BacktestReport {
    std::vector<DayScore> scores;
    std::vector<MethodSummary> summary;
    std::vector<DayCurves> curves;
    std::string protocol = "perfect-temperature";
    std::string config;  // JSON snapshot
};

struct BacktestConfig {
    PredictorConfig predictor;
    /// When set, h is re-selected before every date from strictly earlier data;
    /// otherwise predictor.kernel.bandwidth is used as is.
    std::optional<std::vector<double>> bandwidth_grid;
    std::size_t validation_days = 14;
};

/// Rolling one-day-ahead evaluation. Each date is predicted from the days
/// strictly before it; its realized maximum and its realized temperature on
/// the forecast mask stand in for the provided forecasts. Scores are on the
/// megawatt scale.
///
/// Throws DomainError when a date is not a usable day of `data` or has no
/// earlier history.
BacktestReport backtest(const HistoryWindow& data, std::span<const Date> dates, std::span<const Method> methods,
                        const BacktestConfig& cfg);

/// Per-method aggregates, in the order of `methods`.
std::vector<MethodSummary> summarize(std::span<const DayScore> scores, std::span<const std::string> methods);

}  // namespace simshape
