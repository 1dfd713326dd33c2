#pragma once

#include <optional>
#include <span>
#include <vector>

#include "simshape/grid.hpp"

namespace simshape {

/// One day's load on a fixed grid.
///
/// A segment is either raw (megawatts, no scale) or in shape form, where the
/// daily maximum has been divided out and recorded in `scale()`.
class LoadSegment {
public:
    /// Throws DomainError unless values.size() == grid.size() and every value
    /// is finite and nonnegative.
    LoadSegment(TimeGrid grid, std::vector<double> values);

    /// Shape-form segment. `scale` must be positive and finite.
    LoadSegment(TimeGrid grid, std::vector<double> values, double scale);

    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::optional<double> scale() const noexcept { return scale_; }
    [[nodiscard]] bool is_shape() const noexcept { return scale_.has_value(); }
    [[nodiscard]] double max() const;

    friend bool operator==(const LoadSegment&, const LoadSegment&) = default;

private:
    TimeGrid grid_;
    std::vector<double> values_;
    std::optional<double> scale_;
};

/// Divides by the daily maximum. The maximal coordinate becomes exactly 1.
/// Throws DomainError when the maximum is not positive.
LoadSegment rescale_day(const LoadSegment& segment);

/// Multiplies a shape-form segment by `provided_max`. The result is in shape
/// form with scale = provided_max, so it round-trips through rescale_day.
LoadSegment unscale(const LoadSegment& shape, double provided_max);

/// Temperatures (degrees Celsius) on a grid, valid on `mask` only.
class TemperatureSegment {
public:
    /// Full-grid segment; every value must be finite.
    TemperatureSegment(TimeGrid grid, std::vector<double> values);

    /// Partial segment. `mask` holds sorted, unique grid indices; values
    /// outside the mask are ignored and stored as NaN.
    TemperatureSegment(TimeGrid grid, std::vector<double> values, std::vector<std::size_t> mask);

    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<const std::size_t> mask() const noexcept { return mask_; }
    [[nodiscard]] bool covers(std::span<const std::size_t> indices) const;

private:
    TimeGrid grid_;
    std::vector<double> values_;
    std::vector<std::size_t> mask_;
};

}  // namespace simshape
