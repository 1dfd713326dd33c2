#include "simshape/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "simshape/error.hpp"

namespace simshape {

std::string_view to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::gaussian: return "gaussian";
        case KernelKind::epanechnikov: return "epanechnikov";
        case KernelKind::uniform: return "uniform";
    }
    return "gaussian";
}

KernelKind parse_kernel_kind(std::string_view text) {
    if (text == "gaussian") return KernelKind::gaussian;
    if (text == "epanechnikov") return KernelKind::epanechnikov;
    if (text == "uniform") return KernelKind::uniform;
    throw ParseError("unknown kernel '" + std::string(text) + "'", 0);
}

double kernel_density(KernelKind kind, double u) noexcept {
    switch (kind) {
        case KernelKind::gaussian: return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
        case KernelKind::epanechnikov: return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
        case KernelKind::uniform: return std::abs(u) <= 1.0 ? 0.5 : 0.0;
    }
    return 0.0;
}

double scaled_kernel(const KernelSpec& kernel, double d) {
    if (!(kernel.bandwidth > 0.0)) {
        throw DomainError("kernel bandwidth must be positive");
    }
    return kernel_density(kernel.kind, d / kernel.bandwidth) / kernel.bandwidth;
}

WeightVector kernel_weights(std::span<const double> distances, const KernelSpec& kernel) {
    if (distances.empty()) {
        throw DomainError("kernel weights need at least one distance");
    }
    const double h = kernel.bandwidth;
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw DomainError("kernel bandwidth must be positive and finite");
    }
    WeightVector out;
    out.weights.resize(distances.size());
    const double dmin = *std::min_element(distances.begin(), distances.end());
    if (kernel.kind == KernelKind::gaussian) {
        // exp(-(d^2 - dmin^2) / 2h^2): the nearest segment gets factor 1.
        const double base = (dmin / h) * (dmin / h);
        for (std::size_t r = 0; r < distances.size(); ++r) {
            const double u = distances[r] / h;
            out.weights[r] = std::exp(-0.5 * (u * u - base));
        }
    } else {
        for (std::size_t r = 0; r < distances.size(); ++r) {
            out.weights[r] = kernel_density(kernel.kind, distances[r] / h);
        }
    }
    double total = 0.0;
    for (double w : out.weights) total += w;
    if (!(total > 0.0)) {
        out.nearest_fallback = true;
        std::size_t ties = 0;
        for (std::size_t r = 0; r < distances.size(); ++r) {
            out.weights[r] = distances[r] == dmin ? 1.0 : 0.0;
            ties += distances[r] == dmin ? 1 : 0;
        }
        total = static_cast<double>(ties);
    }
    for (double& w : out.weights) w /= total;
    return out;
}

}  // namespace simshape
