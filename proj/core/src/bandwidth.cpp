#include <algorithm>
#include <cmath>

#include "metrics.hpp"
#include "simshape/error.hpp"
#include "simshape/predictor.hpp"

namespace simshape {

namespace {

// Everything about one validation day that does not depend on h.
struct ValidationCase {
    std::size_t day = 0;
    std::vector<std::size_t> pool;
    std::vector<double> distances;
};

}  // namespace

BandwidthSelection select_bandwidth(std::span<const PreparedDay> days, const PredictorConfig& cfg,
                                    std::span<const double> grid, std::size_t validation_days,
                                    std::size_t min_training) {
    if (grid.empty()) {
        throw DomainError("bandwidth grid is empty");
    }
    for (double h : grid) {
        if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("bandwidth grid values must be positive");
    }
    if (validation_days == 0) {
        throw DomainError("bandwidth selection needs at least one validation day");
    }
    if (days.size() <= validation_days + min_training) {
        throw DomainError("insufficient history for bandwidth selection: " + std::to_string(days.size()) +
                          " days, need more than " + std::to_string(validation_days + min_training));
    }
    const auto mask = forecast_mask(days.front().shape.grid(), cfg.forecast_times);

    std::vector<ValidationCase> cases;
    for (std::size_t v = days.size() - validation_days; v < days.size(); ++v) {
        const auto& target = days[v];
        if (!target.temperature) continue;
        const auto forecast = forecast_from(*target.temperature, mask);
        if (!forecast) continue;
        const auto prior = days.first(v);
        ValidationCase c;
        c.day = v;
        try {
            std::vector<std::string> warnings;
            const auto candidates = resolve_candidates(prior, target.meta.group, cfg.reference, warnings);
            const auto ref = select_reference(prior, candidates, *forecast, cfg.reference);
            const DayGroup pool_group = prior[candidates.front()].meta.group;
            for (std::size_t r = 0; r < prior.size(); ++r) {
                if (cfg.pool == WeightPool::all_days || prior[r].meta.group == pool_group) {
                    c.pool.push_back(r);
                    c.distances.push_back(distance(prior[r].shape.values(), ref.reference.values(), cfg.distance));
                }
            }
        } catch (const DomainError&) {
            continue;  // no usable reference for this day under any h
        }
        cases.push_back(std::move(c));
    }
    if (cases.empty()) {
        throw DomainError("no validation day could be predicted");
    }

    BandwidthSelection out;
    const std::size_t P = days.front().shape.size();
    std::vector<double> pred(P);
    for (double h : grid) {
        KernelSpec kernel = cfg.kernel;
        kernel.bandwidth = h;
        double total = 0.0;
        for (const auto& c : cases) {
            const auto w = kernel_weights(c.distances, kernel);
            std::fill(pred.begin(), pred.end(), 0.0);
            for (std::size_t k = 0; k < c.pool.size(); ++k) {
                const auto v = days[c.pool[k]].shape.values();
                for (std::size_t i = 0; i < P; ++i) pred[i] += w[k] * v[i];
            }
            total += detail::rmae(pred, days[c.day].shape.values());
        }
        out.risks.push_back({h, total / static_cast<double>(cases.size()), cases.size()});
    }
    const BandwidthRisk* best = &out.risks.front();
    for (const auto& r : out.risks) {
        if (r.mean_rmae < best->mean_rmae || (r.mean_rmae == best->mean_rmae && r.bandwidth < best->bandwidth)) {
            best = &r;
        }
    }
    out.bandwidth = best->bandwidth;
    return out;
}

BandwidthSelection select_bandwidth(const HistoryWindow& history, const PredictorConfig& cfg,
                                    std::span<const double> grid, std::size_t validation_days,
                                    std::size_t min_training) {
    const auto days = prepare_history(history, cfg.rescale);
    return select_bandwidth(days, cfg, grid, validation_days, min_training);
}

std::vector<double> default_bandwidth_grid(std::span<const PreparedDay> days, const DistanceSpec& dist,
                                           std::size_t count, std::size_t max_days) {
    if (count == 0) {
        throw DomainError("bandwidth grid size must be positive");
    }
    const auto recent = days.size() > max_days ? days.last(max_days) : days;
    std::vector<double> pairwise;
    for (std::size_t a = 0; a < recent.size(); ++a) {
        for (std::size_t b = a + 1; b < recent.size(); ++b) {
            pairwise.push_back(distance(recent[a].shape.values(), recent[b].shape.values(), dist));
        }
    }
    double median = 1.0;
    if (!pairwise.empty()) {
        const auto mid = pairwise.begin() + static_cast<std::ptrdiff_t>(pairwise.size() / 2);
        std::nth_element(pairwise.begin(), mid, pairwise.end());
        if (*mid > 0.0) median = *mid;
    }
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        out[k] = 0.01 * median * std::pow(1000.0, t);
    }
    return out;
}

}  // namespace simshape
