#pragma once

#include <span>

#include "simshape/ingestion.hpp"
#include "simshape/kernel.hpp"
#include "simshape/distance.hpp"
#include "simshape/prepared.hpp"

namespace simshape {

/// Shape of the most recent day in `target`. Throws DomainError if none exists.
LoadSegment predict_persistence(const HistoryWindow& history, DayGroup target);
LoadSegment predict_persistence(std::span<const PreparedDay> days, DayGroup target);

struct ConditionalKernelResult {
    LoadSegment prediction;
    /// Aligned with history; the first entry is always zero (S_1 has no predecessor).
    WeightVector weights;
};

/// Kernel regression on the last segment: S_r is weighted by the closeness of
/// its predecessor S_{r-1} to S_L. Needs at least two days.
ConditionalKernelResult predict_conditional_kernel(std::span<const PreparedDay> days, const KernelSpec& kernel,
                                                   const DistanceSpec& dist);

LoadSegment predict_conditional_kernel(const HistoryWindow& history, const KernelSpec& kernel,
                                       const DistanceSpec& dist);

}  // namespace simshape
