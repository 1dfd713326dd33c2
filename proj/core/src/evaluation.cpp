#include "simshape/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "csv.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "simshape/baselines.hpp"
#include "simshape/error.hpp"
#include "simshape/serialization.hpp"

namespace simshape {

double detail::rmae(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size() || actual.empty()) {
        throw DomainError("score: predicted and actual curves differ in length");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (!(actual[i] > 0.0)) {
            throw DomainError("score: actual values must be strictly positive");
        }
        acc += std::abs(predicted[i] - actual[i]) / actual[i];
    }
    return acc / static_cast<double>(actual.size());
}

Scores score_day(std::span<const double> predicted, std::span<const double> actual) {
    Scores s;
    s.rmae = detail::rmae(predicted, actual);
    s.maxdiff = predicted[0] - actual[0];
    s.mindiff = s.maxdiff;
    for (std::size_t i = 1; i < actual.size(); ++i) {
        const double diff = predicted[i] - actual[i];
        s.maxdiff = std::max(s.maxdiff, diff);
        s.mindiff = std::min(s.mindiff, diff);
    }
    return s;
}

Scores score_day(const LoadSegment& predicted, const LoadSegment& actual) {
    if (!(predicted.grid() == actual.grid())) {
        throw DomainError("score: predicted and actual curves are on different grids");
    }
    return score_day(predicted.values(), actual.values());
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::ssp: return "ssp";
        case Method::persistence: return "persistence";
        case Method::conditional_kernel: return "conditional-kernel";
    }
    return "ssp";
}

Method parse_method(std::string_view text) {
    text = detail::trim(text);
    if (text == "ssp") return Method::ssp;
    if (text == "persistence") return Method::persistence;
    if (text == "conditional-kernel") return Method::conditional_kernel;
    throw ParseError("unknown method '" + std::string(text) + "'", 0);
}

std::vector<Method> parse_methods(std::string_view text) {
    std::vector<Method> out;
    for (auto field : detail::split(text)) {
        const Method m = parse_method(field);
        if (std::find(out.begin(), out.end(), m) != out.end()) {
            throw ParseError("method '" + std::string(field) + "' listed twice", 0);
        }
        out.push_back(m);
    }
    return out;
}

std::vector<MethodSummary> summarize(std::span<const DayScore> scores, std::span<const std::string> methods) {
    std::map<std::string, std::vector<double>> by_method;
    std::map<Date, std::vector<const DayScore*>> by_date;
    for (const auto& s : scores) {
        by_method[s.method].push_back(s.rmae);
        by_date[s.date].push_back(&s);
    }
    std::map<std::string, std::size_t> wins;
    for (const auto& [date, rows] : by_date) {
        const auto best = std::min_element(rows.begin(), rows.end(),
                                           [](const DayScore* a, const DayScore* b) { return a->rmae < b->rmae; });
        const auto ties = std::count_if(rows.begin(), rows.end(), [&](const DayScore* s) { return s->rmae == (*best)->rmae; });
        if (ties == 1) ++wins[(*best)->method];
    }
    std::vector<MethodSummary> out;
    for (const auto& m : methods) {
        MethodSummary s;
        s.method = m;
        auto values = by_method[m];
        s.days = values.size();
        s.wins = wins[m];
        if (!values.empty()) {
            double total = 0.0;
            for (double v : values) total += v;
            s.mean_rmae = total / static_cast<double>(values.size());
            std::sort(values.begin(), values.end());
            const auto n = values.size();
            s.median_rmae = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

struct DateOutcome {
    std::vector<DayScore> scores;
    DayCurves curves;
};

LoadSegment to_megawatts(const LoadSegment& shape, double peak, bool rescaled) {
    return rescaled ? unscale(shape, peak) : shape;
}

}  // namespace

BacktestReport backtest(const HistoryWindow& data, std::span<const Date> dates, std::span<const Method> methods,
                        const BacktestConfig& cfg) {
    BacktestReport report;
    report.config = config_json(cfg.predictor);
    std::vector<std::string> names;
    for (auto m : methods) names.emplace_back(to_string(m));
    if (dates.empty()) {
        report.summary = summarize(report.scores, names);
        return report;
    }
    if (methods.empty()) {
        throw DomainError("backtest needs at least one method");
    }
    if (data.empty()) {
        throw DomainError("backtest needs data");
    }
    std::vector<std::size_t> positions;
    for (const auto& d : dates) {
        const auto idx = data.find(d);
        if (!idx) {
            throw DomainError("date " + format_date(d) + " is outside the usable data range");
        }
        if (*idx == 0) {
            throw DomainError("date " + format_date(d) + " has no earlier history");
        }
        positions.push_back(*idx);
    }

    const bool rescaled = cfg.predictor.rescale;
    const auto days = prepare_history(data, rescaled);
    const auto& grid = days.front().shape.grid();
    const auto mask = forecast_mask(grid, cfg.predictor.forecast_times);

    std::vector<DateOutcome> outcomes(dates.size());
    detail::parallel_for(dates.size(), 0, [&](std::size_t k) {
        const std::size_t idx = positions[k];
        const auto prior = std::span<const PreparedDay>(days).first(idx);
        const auto& record = data[idx];
        const double peak = record.load.max();

        PredictorConfig pcfg = cfg.predictor;
        if (cfg.bandwidth_grid) {
            pcfg.kernel.bandwidth = select_bandwidth(prior, pcfg, *cfg.bandwidth_grid, cfg.validation_days).bandwidth;
        }

        DateOutcome& out = outcomes[k];
        out.curves.date = record.meta.date;
        out.curves.grid = grid;
        out.curves.actual.assign(record.load.values().begin(), record.load.values().end());
        for (auto method : methods) {
            LoadSegment predicted = record.load;
            switch (method) {
                case Method::ssp: {
                    if (!record.temperature) {
                        throw DomainError("no realized temperature for " + format_date(record.meta.date));
                    }
                    const auto forecast = forecast_from(*record.temperature, mask);
                    if (!forecast) {
                        throw DomainError("realized temperature of " + format_date(record.meta.date) +
                                          " does not cover the forecast mask");
                    }
                    const auto p = predict_prepared(prior, record.meta, *forecast, std::nullopt, pcfg);
                    predicted = to_megawatts(p.shape, peak, rescaled);
                    break;
                }
                case Method::persistence:
                    predicted = to_megawatts(predict_persistence(prior, record.meta.group), peak, rescaled);
                    break;
                case Method::conditional_kernel:
                    predicted = to_megawatts(predict_conditional_kernel(prior, pcfg.kernel, pcfg.distance).prediction,
                                             peak, rescaled);
                    break;
            }
            const Scores s = score_day(predicted, record.load);
            out.scores.push_back({record.meta.date, std::string(to_string(method)), s.rmae, s.maxdiff, s.mindiff});
            out.curves.predictions.emplace_back(std::string(to_string(method)),
                                                std::vector<double>(predicted.values().begin(), predicted.values().end()));
        }
    });

    for (auto& o : outcomes) {
        report.scores.insert(report.scores.end(), o.scores.begin(), o.scores.end());
        report.curves.push_back(std::move(o.curves));
    }
    report.summary = summarize(report.scores, names);
    return report;
}

}  // namespace simshape
