#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "simshape/calendar.hpp"
#include "simshape/grid.hpp"
#include "simshape/ingestion.hpp"
#include "simshape/predictor.hpp"

namespace simshape {

/// Pointwise map from temperature to load, used on the days of its groups.
struct ShapeFunction {
    int id = 0;
    std::function<double(double)> map;
    std::vector<DayGroup> groups;
};

/// f_1(u) = 0.5 + 0.4 sin(pi u / 40) + 0.1 u / 40 on G1, G2;
/// f_2(u) = 0.6 + 0.3 cos(pi u / 40) on G3, G4 and holidays. Both clipped to (0, 1].
std::vector<ShapeFunction> default_shape_functions();

/// `size` diurnal temperature profiles with daily means spread over 8..32 C.
std::vector<std::vector<double>> default_temperature_pool(const TimeGrid& grid, std::size_t size = 5);

struct SyntheticSpec {
    TimeGrid grid = TimeGrid::uniform(96);
    std::vector<ShapeFunction> shapes = default_shape_functions();
    std::vector<std::vector<double>> temperature_pool = default_temperature_pool(TimeGrid::uniform(96));
    double jitter_sigma = 0.5;  // per-point Gaussian jitter on the drawn profile, C
    double noise_sigma = 0.05;  // sigma of the additive load noise
    double level = 1.0;         // multiplies every generated load value
    std::size_t days = 100;
    std::uint64_t seed = 1;
    Date start{std::chrono::year{2010}, std::chrono::month{1}, std::chrono::day{4}};
    HolidaySet holidays;

    /// Throws DomainError on an empty pool or shape list, profiles off the
    /// grid length, negative sigmas, or a group without a shape.
    void validate() const;
};

struct SyntheticDay {
    std::size_t shape_index = 0;
    std::size_t pool_index = 0;
    std::vector<double> temperature;
    std::vector<double> truth;  // level * f_m(T_n), noiseless
};

struct SyntheticData {
    HistoryWindow history;
    std::vector<SyntheticDay> days;
};

/// S_n(t_i) = level * (f_m(T_n(t_i)) + eps_n(t_i)), eps iid N(0, sigma^2), m
/// given by the day's group. Each day draws from its own random stream
/// derived from (seed, day), so the output is a pure function of the spec.
/// Throws DomainError if a generated load value is negative.
SyntheticData generate(const SyntheticSpec& spec);

/// Mixes a master seed with stream coordinates (splitmix64 finalizer chain).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

struct ConsistencyConfig {
    double bandwidth_scale = 1.0;      // h = scale * L^exponent
    double bandwidth_exponent = -0.2;
    double window_exponent = 2.0 / 3.0;  // n_L = ceil(L^exponent)
    ReferenceMode mode = ReferenceMode::threshold;
    DeltaRule delta = DeltaRule::quantile(0.2);
    KernelKind kernel = KernelKind::gaussian;
    DistanceKind distance = DistanceKind::euclidean;
    std::size_t max_retries = 10;
    unsigned threads = 0;  // 0 = hardware concurrency

    /// Noiseless exact-recovery setup: argmin reference, n_L = L, narrow kernel.
    static ConsistencyConfig exact_recovery();
};

struct ConsistencyRow {
    std::size_t length = 0;
    std::size_t replication = 0;
    double err_pred = 0.0;      // D(S_hat, f_m(T_{L+1}))
    double err_ref = 0.0;       // D(S_ref, f_m(T_{L+1}))
    double err_pred_ref = 0.0;  // D(S_hat, S_ref)
    double bandwidth = 0.0;
    std::size_t window = 0;
    std::size_t c_star_size = 0;
    double delta = 0.0;
    double rmae = 0.0;          // RMAE of S_hat against f_m(T_{L+1})
    std::size_t retries = 0;
};

/// Each replication draws one series of max(L) + 1 days. Its last day is the
/// target; for every L the history is the L days right before it (nested
/// histories, shared target). The target is predicted with its exact
/// temperature as the forecast and compared with the noiseless truth.
/// Rows come back ordered by (L, replication) whatever the thread count.
std::vector<ConsistencyRow> consistency_experiment(const SyntheticSpec& spec_template,
                                                   std::span<const std::size_t> lengths,
                                                   std::size_t replications, const ConsistencyConfig& cfg);

struct ConsistencySummary {
    std::size_t length = 0;
    std::size_t replications = 0;
    double mean_err_pred = 0.0;
    double sd_err_pred = 0.0;
    double median_err_pred = 0.0;
    double mean_err_ref = 0.0;
    double mean_err_pred_ref = 0.0;
};

std::vector<ConsistencySummary> summarize_consistency(std::span<const ConsistencyRow> rows);

/// `L,replication,err_pred,err_ref,err_pred_ref,h,n_L,c_star_size`.
void write_consistency_csv(std::ostream& out, std::span<const ConsistencyRow> rows);

}  // namespace simshape
