#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace simshape {

enum class KernelKind { gaussian, epanechnikov, uniform };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view text);

struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double bandwidth = 1.0;
};

/// Standard (unit-bandwidth) kernel density K(u).
double kernel_density(KernelKind kind, double u) noexcept;

/// K_h(d) = K(d / h) / h.
double scaled_kernel(const KernelSpec& kernel, double d);

/// Normalized weights over a history, aligned with history order.
struct WeightVector {
    std::vector<double> weights;
    /// Set when every kernel evaluation was zero and all mass went to the nearest segment(s).
    bool nearest_fallback = false;

    [[nodiscard]] std::size_t size() const noexcept { return weights.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return weights[i]; }
};

/// w_r = K_h(d_r) / sum_l K_h(d_l).
///
/// The Gaussian kernel is evaluated relative to the smallest distance, which
/// leaves the normalized weights unchanged and avoids underflow. Compact
/// kernels with no mass at all fall back to equal weight on the nearest
/// distance(s). Throws DomainError for an empty input or h <= 0.
WeightVector kernel_weights(std::span<const double> distances, const KernelSpec& kernel);

}  // namespace simshape
