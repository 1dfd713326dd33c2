#pragma once

#include <iosfwd>
#include <string>

#include "simshape/predictor.hpp"

namespace simshape {

/// Prediction as a JSON object: date, grid labels, shape, optional scaled
/// values, optional weights, reference dates and a config snapshot.
void write_prediction_json(std::ostream& out, const Prediction& prediction, bool include_weights);

/// Config snapshot as a compact JSON string.
std::string config_json(const PredictorConfig& cfg);

}  // namespace simshape
