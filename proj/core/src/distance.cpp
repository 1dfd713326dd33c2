#include "simshape/distance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simshape/error.hpp"

namespace simshape {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DomainError("distance: length mismatch (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
    }
}

// `index(k)` maps k in [0, count) to a coordinate.
template <class IndexFn>
double reduce(std::span<const double> a, std::span<const double> b, DistanceKind kind, std::size_t count,
              IndexFn index) {
    if (count == 0) {
        throw DomainError("distance: empty coordinate subset");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t i = index(k);
        if (i >= a.size()) {
            throw DomainError("distance: subset index " + std::to_string(i) + " out of range");
        }
        const double diff = std::abs(a[i] - b[i]);
        switch (kind) {
            case DistanceKind::euclidean: acc += diff * diff; break;
            case DistanceKind::mean_absolute: acc += diff; break;
            case DistanceKind::max_absolute: acc = std::max(acc, diff); break;
        }
    }
    switch (kind) {
        case DistanceKind::euclidean: return std::sqrt(acc);
        case DistanceKind::mean_absolute: return acc / static_cast<double>(count);
        case DistanceKind::max_absolute: break;
    }
    return acc;
}

}  // namespace

double distance_on(std::span<const double> a, std::span<const double> b, DistanceKind kind,
                   std::span<const std::size_t> subset) {
    check_lengths(a, b);
    return reduce(a, b, kind, subset.size(), [&](std::size_t k) { return subset[k]; });
}

double distance(std::span<const double> a, std::span<const double> b, const DistanceSpec& spec) {
    if (spec.point_subset) {
        return distance_on(a, b, spec.kind, *spec.point_subset);
    }
    check_lengths(a, b);
    return reduce(a, b, spec.kind, a.size(), [](std::size_t k) { return k; });
}

std::string_view to_string(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::euclidean: return "euclidean";
        case DistanceKind::mean_absolute: return "mean-absolute";
        case DistanceKind::max_absolute: return "max-absolute";
    }
    return "euclidean";
}

DistanceKind parse_distance_kind(std::string_view text) {
    if (text == "euclidean") return DistanceKind::euclidean;
    if (text == "mean-absolute") return DistanceKind::mean_absolute;
    if (text == "max-absolute") return DistanceKind::max_absolute;
    throw ParseError("unknown distance '" + std::string(text) + "'", 0);
}

}  // namespace simshape
