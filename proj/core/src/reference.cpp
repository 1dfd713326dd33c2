#include "simshape/reference.hpp"

#include <algorithm>
#include <cmath>

#include "csv.hpp"
#include "simshape/error.hpp"

namespace simshape {

std::string_view to_string(ReferenceMode mode) { return mode == ReferenceMode::argmin ? "argmin" : "threshold"; }

ReferenceMode parse_reference_mode(std::string_view text) {
    if (text == "argmin") return ReferenceMode::argmin;
    if (text == "threshold") return ReferenceMode::threshold;
    throw ParseError("unknown reference mode '" + std::string(text) + "'", 0);
}

std::string to_string(const DeltaRule& rule) {
    switch (rule.kind) {
        case DeltaRule::Kind::min: return "min";
        case DeltaRule::Kind::quantile: return "quantile:" + detail::format_number(rule.value);
        case DeltaRule::Kind::fixed: return "fixed:" + detail::format_number(rule.value);
    }
    return "min";
}

DeltaRule parse_delta_rule(std::string_view text) {
    if (text == "min") return DeltaRule::minimum();
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        const auto head = text.substr(0, colon);
        const auto value = detail::parse_number(text.substr(colon + 1));
        if (value && head == "quantile") return DeltaRule::quantile(*value);
        if (value && head == "fixed") return DeltaRule::fixed(*value);
    }
    throw ParseError("unknown delta rule '" + std::string(text) + "' (expected min, quantile:<q> or fixed:<v>)", 0);
}

int ReferenceConfig::window_for(DayGroup group) const {
    const auto it = window_by_group.find(group);
    if (it == window_by_group.end()) {
        throw DomainError("no local window configured for group " + std::string(to_string(group)));
    }
    return it->second;
}

void ReferenceConfig::validate() const {
    for (const auto& [group, n] : window_by_group) {
        if (n < 1) {
            throw DomainError("local window for " + std::string(to_string(group)) + " must be at least 1");
        }
    }
    if (delta.kind == DeltaRule::Kind::quantile && !(delta.value > 0.0 && delta.value <= 1.0)) {
        throw DomainError("delta quantile must lie in (0, 1]");
    }
    if (delta.kind == DeltaRule::Kind::fixed && !(delta.value >= 0.0)) {
        throw DomainError("fixed delta must be nonnegative");
    }
}

std::vector<std::size_t> candidate_indices(std::span<const PreparedDay> days, DayGroup target, int window) {
    if (window < 1) {
        throw DomainError("local window must be at least 1");
    }
    const auto n = static_cast<std::size_t>(window);
    const std::size_t first = days.size() > n ? days.size() - n : 0;
    std::vector<std::size_t> out;
    for (std::size_t i = first; i < days.size(); ++i) {
        if (days[i].meta.group == target) out.push_back(i);
    }
    if (out.empty()) {
        throw EmptyCandidateSet("no " + std::string(to_string(target)) + " day among the last " +
                                std::to_string(window) + " days");
    }
    return out;
}

std::vector<DailyRecord> candidate_set(const HistoryWindow& history, DayGroup target, int window) {
    if (history.empty()) {
        throw DomainError("candidate set needs a nonempty history");
    }
    std::vector<PreparedDay> days;
    days.reserve(history.size());
    for (const auto& rec : history.records()) {
        days.push_back({rec.meta, rec.load, 1.0, std::nullopt});
    }
    std::vector<DailyRecord> out;
    for (auto i : candidate_indices(days, target, window)) {
        out.push_back(history[i]);
    }
    return out;
}

std::vector<std::size_t> resolve_candidates(std::span<const PreparedDay> days, DayGroup target,
                                            const ReferenceConfig& cfg, std::vector<std::string>& warnings) {
    if (target == DayGroup::holiday && cfg.holiday_fallback) {
        std::vector<std::size_t> found;
        try {
            found = candidate_indices(days, target, cfg.window_for(target));
        } catch (const EmptyCandidateSet&) {
        }
        if (found.size() >= cfg.holiday_min_candidates) {
            return found;
        }
        const DayGroup fallback = *cfg.holiday_fallback;
        warnings.push_back("only " + std::to_string(found.size()) + " holiday candidate(s); using " +
                           std::string(to_string(fallback)) + " days");
        return candidate_indices(days, fallback, cfg.window_for(fallback));
    }
    return candidate_indices(days, target, cfg.window_for(target));
}

ReferenceResult select_reference(std::span<const PreparedDay> days, std::span<const std::size_t> candidates,
                                 const TemperatureSegment& forecast, const ReferenceConfig& cfg) {
    if (candidates.empty()) {
        throw EmptyCandidateSet("reference selection needs at least one candidate");
    }
    const auto mask = forecast.mask();
    std::vector<std::string> warnings;
    std::vector<std::size_t> kept;
    std::vector<double> dists;
    for (auto idx : candidates) {
        const auto& day = days[idx];
        if (!day.temperature || !day.temperature->covers(mask)) {
            warnings.push_back("candidate " + format_date(day.meta.date) +
                               " has no temperature on the forecast mask; dropped");
            continue;
        }
        if (!(day.temperature->grid() == forecast.grid())) {
            throw DomainError("temperature forecast grid differs from history grid");
        }
        kept.push_back(idx);
        dists.push_back(distance_on(day.temperature->values(), forecast.values(), cfg.temperature_distance, mask));
    }
    if (kept.empty()) {
        throw DomainError("no candidate has temperature data on the forecast mask");
    }

    const double dmin = *std::min_element(dists.begin(), dists.end());
    double delta = dmin;
    if (cfg.mode == ReferenceMode::threshold) {
        switch (cfg.delta.kind) {
            case DeltaRule::Kind::min: break;
            case DeltaRule::Kind::quantile: {
                std::vector<double> sorted = dists;
                std::sort(sorted.begin(), sorted.end());
                const double pos = std::ceil(cfg.delta.value * static_cast<double>(sorted.size()) - 1e-9);
                const auto k = static_cast<std::size_t>(std::max(pos, 1.0)) - 1;
                delta = sorted[std::min(k, sorted.size() - 1)];
                break;
            }
            case DeltaRule::Kind::fixed:
                if (cfg.delta.value < dmin) {
                    warnings.push_back("fixed delta below the smallest temperature distance; raised to it");
                } else {
                    delta = cfg.delta.value;
                }
                break;
        }
    }

    ReferenceResult result{LoadSegment(days[kept.front()].shape.grid(),
                                       std::vector<double>(days[kept.front()].shape.size(), 0.0)),
                           {}, {}, {}, delta, std::move(warnings)};
    std::vector<double> sum(days[kept.front()].shape.size(), 0.0);
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const auto& day = days[kept[k]];
        result.temp_distances[day.meta.date] = dists[k];
        if (dists[k] <= delta) {
            result.c_star.push_back(day.meta.date);
            result.c_star_indices.push_back(kept[k]);
            const auto v = day.shape.values();
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i];
        }
    }
    const auto count = static_cast<double>(result.c_star.size());
    for (double& s : sum) s /= count;
    result.reference = LoadSegment(days[kept.front()].shape.grid(), std::move(sum));
    return result;
}

DeltaDiagnostic delta_schedule_check(std::size_t history_length, std::size_t window, double delta,
                                     std::size_t c_star_size) {
    DeltaDiagnostic d;
    d.history_length = history_length;
    d.window = window;
    d.c_star_size = c_star_size;
    d.delta = delta;
    d.c_star_times_delta = static_cast<double>(c_star_size) * delta;
    d.degenerate = c_star_size == 0 || delta == 0.0;
    return d;
}

}  // namespace simshape
