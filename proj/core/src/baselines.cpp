#include "simshape/baselines.hpp"

#include "simshape/error.hpp"

namespace simshape {

LoadSegment predict_persistence(std::span<const PreparedDay> days, DayGroup target) {
    for (std::size_t r = days.size(); r-- > 0;) {
        if (days[r].meta.group == target) return days[r].shape;
    }
    throw DomainError("persistence: no " + std::string(to_string(target)) + " day in history");
}

LoadSegment predict_persistence(const HistoryWindow& history, DayGroup target) {
    const auto records = history.records();
    for (std::size_t r = records.size(); r-- > 0;) {
        if (records[r].meta.group == target) return rescale_day(records[r].load);
    }
    throw DomainError("persistence: no " + std::string(to_string(target)) + " day in history");
}

ConditionalKernelResult predict_conditional_kernel(std::span<const PreparedDay> days, const KernelSpec& kernel,
                                                   const DistanceSpec& dist) {
    if (days.size() < 2) {
        throw DomainError("conditional kernel needs at least two days");
    }
    const auto& last = days.back().shape;
    // Successor r (1-based r = 2..L) is weighted by how close S_{r-1} is to S_L.
    std::vector<double> d(days.size() - 1);
    for (std::size_t r = 1; r < days.size(); ++r) {
        d[r - 1] = distance(days[r - 1].shape.values(), last.values(), dist);
    }
    const WeightVector successors = kernel_weights(d, kernel);

    WeightVector weights;
    weights.nearest_fallback = successors.nearest_fallback;
    weights.weights.assign(days.size(), 0.0);
    std::vector<double> out(last.size(), 0.0);
    for (std::size_t r = 1; r < days.size(); ++r) {
        const double w = successors[r - 1];
        weights.weights[r] = w;
        const auto v = days[r].shape.values();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * v[i];
    }
    return {LoadSegment(last.grid(), std::move(out)), std::move(weights)};
}

LoadSegment predict_conditional_kernel(const HistoryWindow& history, const KernelSpec& kernel,
                                       const DistanceSpec& dist) {
    const auto days = prepare_history(history, true);
    return predict_conditional_kernel(days, kernel, dist).prediction;
}

}  // namespace simshape
