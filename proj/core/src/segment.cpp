#include "simshape/segment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simshape/error.hpp"

namespace simshape {

namespace {

void check_values(const TimeGrid& grid, const std::vector<double>& values) {
    if (values.size() != grid.size()) {
        throw DomainError("segment has " + std::to_string(values.size()) + " values, grid has " +
                          std::to_string(grid.size()) + " points");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw DomainError("segment values must be finite");
        }
        if (v < 0.0) {
            throw DomainError("load values must be nonnegative");
        }
    }
}

}  // namespace

LoadSegment::LoadSegment(TimeGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    check_values(grid_, values_);
}

LoadSegment::LoadSegment(TimeGrid grid, std::vector<double> values, double scale)
    : grid_(grid), values_(std::move(values)), scale_(scale) {
    check_values(grid_, values_);
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("segment scale must be positive and finite");
    }
}

double LoadSegment::max() const { return *std::max_element(values_.begin(), values_.end()); }

LoadSegment rescale_day(const LoadSegment& segment) {
    const double peak = segment.max();
    if (!(peak > 0.0)) {
        throw DomainError("cannot rescale a segment whose maximum is not positive");
    }
    std::vector<double> values(segment.values().begin(), segment.values().end());
    for (double& v : values) {
        v /= peak;
    }
    return {segment.grid(), std::move(values), peak};
}

LoadSegment unscale(const LoadSegment& shape, double provided_max) {
    if (!(provided_max > 0.0) || !std::isfinite(provided_max)) {
        throw DomainError("unscale needs a positive maximum");
    }
    std::vector<double> values(shape.values().begin(), shape.values().end());
    for (double& v : values) {
        v *= provided_max;
    }
    return {shape.grid(), std::move(values), provided_max};
}

TemperatureSegment::TemperatureSegment(TimeGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw DomainError("temperature segment length does not match grid");
    }
    mask_.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError("temperature values must be finite on the mask");
        }
        mask_[i] = i;
    }
}

TemperatureSegment::TemperatureSegment(TimeGrid grid, std::vector<double> values, std::vector<std::size_t> mask)
    : grid_(grid), values_(std::move(values)), mask_(std::move(mask)) {
    if (values_.size() != grid_.size()) {
        throw DomainError("temperature segment length does not match grid");
    }
    if (mask_.empty()) {
        throw DomainError("temperature mask must be nonempty");
    }
    for (std::size_t k = 0; k < mask_.size(); ++k) {
        if (mask_[k] >= values_.size() || (k > 0 && mask_[k] <= mask_[k - 1])) {
            throw DomainError("temperature mask must hold sorted unique grid indices");
        }
        if (!std::isfinite(values_[mask_[k]])) {
            throw DomainError("temperature values must be finite on the mask");
        }
    }
    std::vector<bool> on(values_.size(), false);
    for (auto i : mask_) {
        on[i] = true;
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!on[i]) {
            values_[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
}

bool TemperatureSegment::covers(std::span<const std::size_t> indices) const {
    return std::all_of(indices.begin(), indices.end(),
                       [&](std::size_t i) { return std::binary_search(mask_.begin(), mask_.end(), i); });
}

}  // namespace simshape
