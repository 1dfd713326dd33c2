#include "simshape/serialization.hpp"

#include <ostream>

#include <json.hpp>

namespace simshape {

using nlohmann::json;

namespace {

json config_to_json(const PredictorConfig& cfg) {
    json windows = json::object();
    for (const auto& [group, n] : cfg.reference.window_by_group) windows[std::string(to_string(group))] = n;
    json times = json::array();
    for (int t : cfg.forecast_times) times.push_back(format_clock(t));
    json subset = nullptr;
    if (cfg.distance.point_subset) subset = *cfg.distance.point_subset;
    json fallback = nullptr;
    if (cfg.reference.holiday_fallback) fallback = to_string(*cfg.reference.holiday_fallback);
    return {
        {"reference",
         {{"windows", windows},
          {"mode", to_string(cfg.reference.mode)},
          {"delta", to_string(cfg.reference.delta)},
          {"temperature_distance", to_string(cfg.reference.temperature_distance)},
          {"holiday_fallback", fallback},
          {"holiday_min_candidates", cfg.reference.holiday_min_candidates}}},
        {"kernel", {{"kind", to_string(cfg.kernel.kind)}, {"bandwidth", cfg.kernel.bandwidth}}},
        {"distance", {{"kind", to_string(cfg.distance.kind)}, {"subset", subset}}},
        {"pool", to_string(cfg.pool)},
        {"rescale", cfg.rescale},
        {"forecast_times", times},
    };
}

}  // namespace

std::string config_json(const PredictorConfig& cfg) { return config_to_json(cfg).dump(); }

void write_prediction_json(std::ostream& out, const Prediction& prediction, bool include_weights) {
    json doc;
    doc["date"] = format_date(prediction.date);
    json labels = json::array();
    for (int t : prediction.shape.grid().labels()) labels.push_back(format_clock(t));
    doc["grid"] = labels;
    doc["shape"] = std::vector<double>(prediction.shape.values().begin(), prediction.shape.values().end());
    if (prediction.scaled) {
        doc["scaled"] = std::vector<double>(prediction.scaled->values().begin(), prediction.scaled->values().end());
    }
    if (include_weights) {
        json weights = json::array();
        for (std::size_t k = 0; k < prediction.weights.size(); ++k) {
            weights.push_back({{"date", format_date(prediction.weight_dates[k])}, {"weight", prediction.weights[k]}});
        }
        doc["weights"] = weights;
    }
    json ref_dates = json::array();
    for (const auto& d : prediction.reference.c_star) ref_dates.push_back(format_date(d));
    json temp_distances = json::object();
    for (const auto& [d, v] : prediction.reference.temp_distances) temp_distances[format_date(d)] = v;
    doc["reference"] = {{"dates", ref_dates}, {"delta", prediction.reference.delta}, {"temp_distances", temp_distances}};
    doc["config"] = config_to_json(prediction.config);
    doc["warnings"] = prediction.warnings;
    out << doc.dump(2) << '\n';
}

}  // namespace simshape
