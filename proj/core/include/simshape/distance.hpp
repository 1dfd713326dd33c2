#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace simshape {

enum class DistanceKind { euclidean, mean_absolute, max_absolute };

/// Metric on R^P, optionally restricted to a subset of coordinates (0-based).
struct DistanceSpec {
    DistanceKind kind = DistanceKind::euclidean;
    std::optional<std::vector<std::size_t>> point_subset;
};

/// Distance between `a` and `b` under `spec`.
/// Throws DomainError on length mismatch, an empty effective subset, or an
/// out-of-range subset index.
double distance(std::span<const double> a, std::span<const double> b, const DistanceSpec& spec);

/// Same as above with an explicit coordinate subset that overrides spec.point_subset.
double distance_on(std::span<const double> a, std::span<const double> b, DistanceKind kind,
                   std::span<const std::size_t> subset);

std::string_view to_string(DistanceKind kind);
DistanceKind parse_distance_kind(std::string_view text);

}  // namespace simshape
