#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <vector>

#include "simshape/simshape.hpp"

namespace fixtures {

using namespace simshape;

inline Date ymd(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

/// Consecutive days from `start`. Temperatures are optional (full grid).
inline HistoryWindow make_history(const Date& start, const TimeGrid& grid,
                                  const std::vector<std::vector<double>>& loads,
                                  const std::vector<std::vector<double>>& temps = {},
                                  const HolidaySet& holidays = {}) {
    std::vector<DailyRecord> recs;
    for (std::size_t n = 0; n < loads.size(); ++n) {
        DailyRecord r{annotate_calendar(add_days(start, static_cast<int>(n)), holidays), LoadSegment(grid, loads[n]),
                      std::nullopt, Quality::complete};
        if (!temps.empty()) r.temperature = TemperatureSegment(grid, temps[n]);
        recs.push_back(std::move(r));
    }
    return HistoryWindow(std::move(recs));
}

/// Grid of P points spaced 24h/P apart, built from explicit labels so any P works.
inline TimeGrid grid_of(std::size_t points) {
    if (86400 % points == 0) return TimeGrid::uniform(points);
    std::vector<int> labels(points);
    const int step = static_cast<int>(86400 / points);
    for (std::size_t i = 0; i < points; ++i) labels[i] = static_cast<int>(i) * step;
    return TimeGrid::from_labels(labels);
}

/// Flat re-statement of the predictor with the Gaussian kernel, euclidean
/// distances, argmin reference (ties averaged) and the all-days pool. Written
/// without any library call so it can serve as an oracle.
///
/// loads[n], temps[n]: raw day n; groups[n]: 0..4; forecast valid on `mask`.
inline std::vector<double> brute_force_ssp(const std::vector<std::vector<double>>& loads,
                                           const std::vector<std::vector<double>>& temps,
                                           const std::vector<int>& groups, int target_group,
                                           const std::vector<double>& forecast, const std::vector<std::size_t>& mask,
                                           int window, double h, bool rescale) {
    const std::size_t L = loads.size();
    const std::size_t P = loads.front().size();
    std::vector<std::vector<double>> S(L, std::vector<double>(P));
    for (std::size_t n = 0; n < L; ++n) {
        double m = 0.0;
        for (double v : loads[n]) m = v > m ? v : m;
        for (std::size_t i = 0; i < P; ++i) S[n][i] = rescale ? loads[n][i] / m : loads[n][i];
    }
    // candidate set: last `window` days in the target group
    std::vector<std::size_t> cand;
    const std::size_t first = L > static_cast<std::size_t>(window) ? L - static_cast<std::size_t>(window) : 0;
    for (std::size_t n = first; n < L; ++n) {
        if (groups[n] == target_group) cand.push_back(n);
    }
    // temperature distances on the mask, argmin with ties
    std::vector<double> td;
    double best = INFINITY;
    for (std::size_t c : cand) {
        double s = 0.0;
        for (std::size_t i : mask) s += (temps[c][i] - forecast[i]) * (temps[c][i] - forecast[i]);
        td.push_back(std::sqrt(s));
        best = td.back() < best ? td.back() : best;
    }
    std::vector<double> ref(P, 0.0);
    std::size_t ties = 0;
    for (std::size_t k = 0; k < cand.size(); ++k) {
        if (td[k] != best) continue;
        ++ties;
        for (std::size_t i = 0; i < P; ++i) ref[i] += S[cand[k]][i];
    }
    for (double& v : ref) v /= static_cast<double>(ties);
    // Gaussian kernel weights over every day
    const double pi = 3.14159265358979323846;
    std::vector<double> w(L);
    double total = 0.0;
    for (std::size_t n = 0; n < L; ++n) {
        double s = 0.0;
        for (std::size_t i = 0; i < P; ++i) s += (S[n][i] - ref[i]) * (S[n][i] - ref[i]);
        const double u = std::sqrt(s) / h;
        w[n] = std::exp(-0.5 * u * u) / std::sqrt(2.0 * pi) / h;
        total += w[n];
    }
    std::vector<double> pred(P, 0.0);
    for (std::size_t n = 0; n < L; ++n) {
        for (std::size_t i = 0; i < P; ++i) pred[i] += (w[n] / total) * S[n][i];
    }
    return pred;
}

/// Raw inputs for the command-line tool: load.csv, temp.csv and forecast.csv
/// (08/12/16/20 h) for `days` synthetic days at a 600 MW level. One load
/// reading is left out to exercise interpolation.
inline void write_raw_inputs(const std::filesystem::path& dir, std::size_t days, std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    SyntheticSpec spec;
    spec.days = days;
    spec.level = 600.0;
    spec.noise_sigma = 0.03;
    spec.seed = seed;
    const auto data = generate(spec);
    std::ofstream load(dir / "load.csv"), temp(dir / "temp.csv"), fc(dir / "forecast.csv");
    load << "timestamp,load_mw\n" << std::setprecision(17);
    temp << "timestamp,temp_c\n" << std::setprecision(17);
    fc << "date,t0800,t1200,t1600,t2000\n" << std::setprecision(17);
    for (std::size_t n = 0; n < data.history.size(); ++n) {
        const auto& rec = data.history[n];
        const auto& t = data.days[n].temperature;
        for (std::size_t i = 0; i < spec.grid.size(); ++i) {
            const auto ts = format_timestamp({rec.meta.date, spec.grid.label(i)});
            temp << ts << ',' << t[i] << '\n';
            if (n == 3 && i == 50) continue;
            load << ts << ',' << rec.load[i] << '\n';
        }
        fc << format_date(rec.meta.date) << ',' << t[32] << ',' << t[48] << ',' << t[64] << ',' << t[80] << '\n';
    }
}

inline int group_code(DayGroup g) {
    switch (g) {
        case DayGroup::g1: return 0;
        case DayGroup::g2: return 1;
        case DayGroup::g3: return 2;
        case DayGroup::g4: return 3;
        case DayGroup::holiday: return 4;
    }
    return -1;
}

}  // namespace fixtures
