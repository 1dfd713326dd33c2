#pragma once

#include <span>

namespace simshape::detail {

/// (1/P) sum_i |pred_i - actual_i| / actual_i. Throws DomainError on a length
/// mismatch, empty input or nonpositive actual value.
double rmae(std::span<const double> predicted, std::span<const double> actual);

}  // namespace simshape::detail
