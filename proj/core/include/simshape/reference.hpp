#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simshape/calendar.hpp"
#include "simshape/distance.hpp"
#include "simshape/prepared.hpp"

namespace simshape {

enum class ReferenceMode { argmin, threshold };

std::string_view to_string(ReferenceMode mode);
ReferenceMode parse_reference_mode(std::string_view text);

/// How the temperature closeness threshold is set from the candidate distances.
struct DeltaRule {
    enum class Kind { min, quantile, fixed };

    Kind kind = Kind::min;
    double value = 0.0;  // q for quantile, the threshold for fixed

    static DeltaRule minimum() { return {Kind::min, 0.0}; }
    static DeltaRule quantile(double q) { return {Kind::quantile, q}; }
    static DeltaRule fixed(double threshold) { return {Kind::fixed, threshold}; }
};

std::string to_string(const DeltaRule& rule);
/// "min", "quantile:<q>" or "fixed:<value>".
DeltaRule parse_delta_rule(std::string_view text);

struct ReferenceConfig {
    /// Local window length n_L per target group.
    std::map<DayGroup, int> window_by_group{{DayGroup::g1, 14},
                                            {DayGroup::g2, 28},
                                            {DayGroup::g3, 28},
                                            {DayGroup::g4, 28},
                                            {DayGroup::holiday, 28}};
    ReferenceMode mode = ReferenceMode::argmin;
    DeltaRule delta;
    /// Metric for temperature curves; always evaluated on the forecast mask.
    DistanceKind temperature_distance = DistanceKind::euclidean;
    /// Group searched instead when a holiday has too few holiday candidates.
    std::optional<DayGroup> holiday_fallback = DayGroup::g4;
    std::size_t holiday_min_candidates = 2;

    [[nodiscard]] int window_for(DayGroup group) const;
    /// Throws DomainError on windows < 1, q outside (0, 1] or a negative fixed threshold.
    void validate() const;
};

struct ReferenceResult {
    LoadSegment reference;
    std::vector<Date> c_star;
    std::vector<std::size_t> c_star_indices;  // positions in the prepared history
    std::map<Date, double> temp_distances;
    double delta = 0.0;
    std::vector<std::string> warnings;
};

/// Indices of the days among the last `window` entries whose group is `target`,
/// oldest first. Throws EmptyCandidateSet when there are none.
std::vector<std::size_t> candidate_indices(std::span<const PreparedDay> days, DayGroup target, int window);

/// Record-level form of candidate_indices.
std::vector<DailyRecord> candidate_set(const HistoryWindow& history, DayGroup target, int window);

/// Candidate indices for `target`, applying the holiday fallback of `cfg`.
std::vector<std::size_t> resolve_candidates(std::span<const PreparedDay> days, DayGroup target,
                                            const ReferenceConfig& cfg, std::vector<std::string>& warnings);

/// Builds the reference segment from the candidates closest in temperature to
/// `forecast`, compared on the forecast mask only.
///
/// Candidates without temperature on the mask are dropped with a warning;
/// throws DomainError when every candidate is dropped.
ReferenceResult select_reference(std::span<const PreparedDay> days, std::span<const std::size_t> candidates,
                                 const TemperatureSegment& forecast, const ReferenceConfig& cfg);

/// Logged quantities for the smoothing-parameter schedule. No decision is made.
struct DeltaDiagnostic {
    std::size_t history_length = 0;
    std::size_t window = 0;
    std::size_t c_star_size = 0;
    double delta = 0.0;
    double c_star_times_delta = 0.0;
    bool degenerate = false;  // empty C* or zero threshold
};

DeltaDiagnostic delta_schedule_check(std::size_t history_length, std::size_t window, double delta,
                                     std::size_t c_star_size);

}  // namespace simshape
