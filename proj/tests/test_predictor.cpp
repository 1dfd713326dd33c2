#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "support/fixtures.hpp"

using namespace simshape;
using fixtures::ymd;

namespace {

const Date kMonday = ymd(2010, 1, 4);

// Reference normal density, not the library's.
double phi(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * 3.14159265358979323846); }

std::vector<LoadSegment> segments(const TimeGrid& grid, const std::vector<std::vector<double>>& rows) {
    std::vector<LoadSegment> out;
    for (const auto& r : rows) out.emplace_back(grid, r);
    return out;
}

struct RandomCase {
    TimeGrid grid = TimeGrid::uniform(24);
    std::vector<std::vector<double>> loads;
    std::vector<std::vector<double>> temps;
    std::vector<double> forecast;
};

RandomCase random_case(std::mt19937_64& rng, std::size_t days, std::size_t points) {
    RandomCase c;
    c.grid = fixtures::grid_of(points);
    std::uniform_real_distribution<double> load(50.0, 500.0);
    std::normal_distribution<double> temp(18.0, 6.0);
    c.loads.assign(days, std::vector<double>(points));
    c.temps.assign(days, std::vector<double>(points));
    for (auto& d : c.loads) for (double& v : d) v = load(rng);
    for (auto& d : c.temps) for (double& v : d) v = temp(rng);
    c.forecast.resize(points);
    for (double& v : c.forecast) v = temp(rng);
    return c;
}

}  // namespace

TEST_CASE("kernel weight examples") {
    const std::vector<double> one{0.7};
    CHECK(kernel_weights(one, {KernelKind::gaussian, 1.0}).weights == std::vector<double>{1.0});

    const std::vector<double> equal{0.4, 0.4};
    const auto w2 = kernel_weights(equal, {KernelKind::gaussian, 0.3});
    CHECK(w2[0] == 0.5);
    CHECK(w2[1] == 0.5);

    const std::vector<double> d01{0.0, 1.0};
    const auto w = kernel_weights(d01, {KernelKind::gaussian, 1.0});
    const double expect0 = phi(0.0) / (phi(0.0) + phi(1.0));
    CHECK(w[0] == doctest::Approx(0.62246).epsilon(1e-5));
    CHECK(w[1] == doctest::Approx(0.37754).epsilon(1e-5));
    CHECK(std::abs(w[0] - expect0) < 1e-15);

    // Epanechnikov: K(u) = 0.75 (1 - u^2) on |u| <= 1.
    const std::vector<double> d3{0.0, 0.5, 2.0};
    const auto we = kernel_weights(d3, {KernelKind::epanechnikov, 1.0});
    CHECK(we[0] == doctest::Approx(1.0 / 1.75).epsilon(1e-14));
    CHECK(we[1] == doctest::Approx(0.75 / 1.75).epsilon(1e-14));
    CHECK(we[2] == 0.0);

    const std::vector<double> far{5.0, 3.0, 3.0};
    const auto fb = kernel_weights(far, {KernelKind::uniform, 1.0});
    CHECK(fb.nearest_fallback);
    CHECK(fb.weights == std::vector<double>{0.0, 0.5, 0.5});

    // Gaussian far in the tail still normalizes.
    const std::vector<double> tail{100.0, 101.0};
    const auto wt = kernel_weights(tail, {KernelKind::gaussian, 0.5});
    CHECK(wt[0] + wt[1] == doctest::Approx(1.0));
    CHECK(wt[0] > 0.99);

    const std::vector<double> none;
    CHECK_THROWS_AS(kernel_weights(none, {}), DomainError);
    CHECK_THROWS_AS(kernel_weights(one, {KernelKind::gaussian, 0.0}), DomainError);
}

TEST_CASE("weighted sum examples") {
    const auto grid = fixtures::grid_of(2 * 2);
    const auto g2 = TimeGrid::from_labels(std::vector<int>{0, 43200});
    const auto segs = segments(g2, {{1, 0}, {0, 1}});
    const WeightVector w{{0.62246, 0.37754}, false};
    const auto p = predict_shape(segs, w);
    CHECK(p[0] == doctest::Approx(0.62246).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.37754).epsilon(1e-12));

    const auto same = segments(grid, {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}});
    const auto ps = predict_shape(same, WeightVector{{0.2, 0.3, 0.5}, false});
    for (std::size_t i = 0; i < 4; ++i) CHECK(ps[i] == doctest::Approx(same[0][i]).epsilon(1e-15));

    const auto mixed = segments(grid, {{1, 2, 3, 4}, {9, 8, 7, 6}, {5, 5, 5, 5}});
    CHECK(predict_shape(mixed, WeightVector{{0, 1, 0}, false}) == mixed[1]);
    CHECK_THROWS_AS(predict_shape(mixed, WeightVector{{0.5, 0.5}, false}), DomainError);
}

TEST_CASE("predict_day examples") {
    const auto grid = fixtures::grid_of(4);
    const std::vector<double> s{0.25, 0.5, 1.0, 0.75};
    std::vector<std::vector<double>> loads, temps;
    for (int n = 0; n < 21; ++n) {
        const double level = 100.0 + 10.0 * n;
        loads.push_back({s[0] * level, s[1] * level, s[2] * level, s[3] * level});
        temps.push_back({10.0 + n, 12.0, 14.0, 11.0});
    }
    const auto history = fixtures::make_history(kMonday, grid, loads, temps);
    const auto target = annotate_calendar(ymd(2010, 1, 25), {});
    const TemperatureSegment fc(grid, {13, 12, 14, 11}, {0, 1, 2, 3});
    PredictorConfig cfg;
    cfg.forecast_times.clear();

    SUBCASE("identical shapes give that shape") {
        const auto p = predict_day(history, target, fc, std::nullopt, cfg);
        for (std::size_t i = 0; i < 4; ++i) CHECK(p.shape[i] == doctest::Approx(s[i]).epsilon(1e-14));
        CHECK_FALSE(p.scaled.has_value());
    }
    SUBCASE("next-day maximum gives megawatts") {
        const auto p = predict_day(history, target, fc, 600.0, cfg);
        REQUIRE(p.scaled.has_value());
        CHECK((*p.scaled)[2] == doctest::Approx(600.0));
        CHECK((*p.scaled)[0] == doctest::Approx(150.0));
    }
    SUBCASE("single day history") {
        const auto one = fixtures::make_history(kMonday, grid, {{3, 6, 9, 12}}, {{1, 1, 1, 1}});
        const auto p = predict_day(one, annotate_calendar(ymd(2010, 1, 5), {}), fc, std::nullopt, cfg);
        CHECK(p.shape[0] == doctest::Approx(0.25));
        CHECK(p.shape[3] == 1.0);
    }
    SUBCASE("target must follow the history") {
        CHECK_THROWS_AS(predict_day(history, annotate_calendar(ymd(2010, 1, 10), {}), fc, std::nullopt, cfg),
                        DomainError);
        CHECK_THROWS_AS(predict_day(HistoryWindow{}, target, fc, std::nullopt, cfg), DomainError);
    }
}

TEST_CASE("predict_day matches the flat oracle on a 10-day history") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = random_case(rng, 10, 24);
        const auto history = fixtures::make_history(kMonday, c.grid, c.loads, c.temps);
        const auto target = annotate_calendar(ymd(2010, 1, 14), {});  // Thursday, G1
        const std::vector<std::size_t> mask{8, 12, 16, 20};
        PredictorConfig cfg;
        cfg.kernel.bandwidth = 0.3;
        cfg.reference.window_by_group[DayGroup::g1] = 7;
        const auto p = predict_day(history, target, TemperatureSegment(c.grid, c.forecast, mask), std::nullopt, cfg);

        std::vector<int> groups;
        for (const auto& r : history.records()) groups.push_back(fixtures::group_code(r.meta.group));
        const auto oracle = fixtures::brute_force_ssp(c.loads, c.temps, groups, 0, c.forecast, mask, 7, 0.3, true);
        for (std::size_t i = 0; i < 24; ++i) CHECK(std::abs(p.shape[i] - oracle[i]) <= 1e-12);
    }
}

TEST_CASE("weights and predictions: simplex, hull, limits, equivariance") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t L = 2 + static_cast<std::size_t>(unit(rng) * 20);
        const auto grid = TimeGrid::uniform(12);
        std::vector<std::vector<double>> rows(L, std::vector<double>(12));
        for (auto& r : rows) for (double& v : r) v = 0.1 + unit(rng);
        std::vector<double> ref(12);
        for (double& v : ref) v = 0.1 + unit(rng);
        const auto segs = segments(grid, rows);
        const LoadSegment reference(grid, ref);
        const KernelSpec kernel{static_cast<KernelKind>(trial % 3), 0.05 + 2.0 * unit(rng)};

        const auto w = compute_weights(segs, reference, kernel, {});
        double sum = 0.0;
        for (double x : w.weights) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        const auto pred = predict_shape(segs, w);
        for (std::size_t i = 0; i < 12; ++i) {
            double lo = 1e300, hi = -1e300;
            for (const auto& r : rows) {
                lo = std::min(lo, r[i]);
                hi = std::max(hi, r[i]);
            }
            CHECK(pred[i] >= lo - 1e-12);
            CHECK(pred[i] <= hi + 1e-12);
        }

        // Wide Gaussian: uniform weights.
        const auto wide = compute_weights(segs, reference, {KernelKind::gaussian, 1e9}, {});
        for (double x : wide.weights) CHECK(std::abs(x - 1.0 / static_cast<double>(L)) < 1e-6);
        // Narrow Gaussian: all mass on the nearest segment.
        std::vector<double> d;
        for (const auto& sgm : segs) d.push_back(distance(sgm.values(), reference.values(), {}));
        const auto nearest = static_cast<std::size_t>(std::min_element(d.begin(), d.end()) - d.begin());
        const auto narrow = compute_weights(segs, reference, {KernelKind::gaussian, 1e-6}, {});
        CHECK(narrow[nearest] == doctest::Approx(1.0).epsilon(1e-12));

        // Scale everything and h by c: same weights, prediction scaled by c.
        const double c = 0.5 + 3.0 * unit(rng);
        std::vector<std::vector<double>> scaled_rows = rows;
        for (auto& r : scaled_rows) for (double& v : r) v *= c;
        std::vector<double> scaled_ref = ref;
        for (double& v : scaled_ref) v *= c;
        const auto ssegs = segments(grid, scaled_rows);
        const KernelSpec skernel{kernel.kind, kernel.bandwidth * c};
        const auto sw = compute_weights(ssegs, LoadSegment(grid, scaled_ref), skernel, {});
        for (std::size_t k = 0; k < L; ++k) CHECK(sw[k] == doctest::Approx(w[k]).epsilon(1e-9));
        const auto spred = predict_shape(ssegs, sw);
        for (std::size_t i = 0; i < 12; ++i) CHECK(spred[i] == doctest::Approx(c * pred[i]).epsilon(1e-9));

        // Permuting the history permutes the weights.
        std::vector<std::size_t> perm(L);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<LoadSegment> psegs;
        for (auto k : perm) psegs.push_back(segs[k]);
        const auto pw = compute_weights(psegs, reference, kernel, {});
        for (std::size_t k = 0; k < L; ++k) CHECK(pw[k] == doctest::Approx(w[perm[k]]).epsilon(1e-12));
        const auto ppred = predict_shape(psegs, pw);
        for (std::size_t i = 0; i < 12; ++i) CHECK(ppred[i] == doctest::Approx(pred[i]).epsilon(1e-12));
    }
}

TEST_CASE("bandwidth selection") {
    const auto grid = fixtures::grid_of(4);
    // Every group has its own fixed shape, so any small h predicts exactly.
    const std::vector<std::vector<double>> by_group{{1, 2, 3, 4}, {4, 3, 2, 1}, {2, 4, 4, 2}, {3, 1, 3, 1}};
    std::vector<std::vector<double>> loads, temps;
    for (int n = 0; n < 42; ++n) {
        const auto g = fixtures::group_code(annotate_calendar(add_days(kMonday, n), {}).group);
        loads.push_back(by_group[static_cast<std::size_t>(g)]);
        temps.push_back({static_cast<double>(n % 5), 1, 2, 3});
    }
    const auto history = fixtures::make_history(kMonday, grid, loads, temps);
    PredictorConfig cfg;
    cfg.forecast_times.clear();

    const std::vector<double> single{0.7};
    CHECK(select_bandwidth(history, cfg, single, 14).bandwidth == 0.7);

    const std::vector<double> grid_h{0.001, 0.002, 0.01, 5.0};
    const auto sel = select_bandwidth(history, cfg, grid_h, 14);
    CHECK(sel.bandwidth == 0.001);
    REQUIRE(sel.risks.size() == 4);
    CHECK(sel.risks[0].mean_rmae <= 1e-15);
    CHECK(sel.risks[1].mean_rmae == sel.risks[0].mean_rmae);
    CHECK(sel.risks[3].mean_rmae > 0.0);
    for (const auto& r : sel.risks) CHECK(r.days_scored == 14);

    const std::vector<double> two{5.0, 0.002};
    CHECK(select_bandwidth(history, cfg, two, 14).bandwidth == 0.002);

    const std::vector<double> empty;
    CHECK_THROWS_AS(select_bandwidth(history, cfg, empty, 14), DomainError);
    CHECK_THROWS_AS(select_bandwidth(history.before(add_days(kMonday, 15)), cfg, single, 14), DomainError);

    const auto days = prepare_history(history, true);
    const auto dg = default_bandwidth_grid(days, {});
    CHECK(dg.size() == 25);
    CHECK(std::is_sorted(dg.begin(), dg.end()));
    CHECK(dg.back() / dg.front() == doctest::Approx(1000.0));
}

TEST_CASE("prediction JSON") {
    const auto grid = fixtures::grid_of(4);
    const auto history =
        fixtures::make_history(kMonday, grid, {{1, 2, 3, 4}, {2, 2, 3, 4}, {1, 3, 3, 4}}, {{1, 1, 1, 1}, {2, 2, 2, 2}, {3, 3, 3, 3}});
    PredictorConfig cfg;
    cfg.forecast_times.clear();
    const auto p = predict_day(history, annotate_calendar(ymd(2010, 1, 7), {}), TemperatureSegment(grid, {2, 2, 2, 2}, {0, 1, 2, 3}),
                               600.0, cfg);
    std::ostringstream with, without;
    write_prediction_json(with, p, true);
    write_prediction_json(without, p, false);
    const auto j = nlohmann::json::parse(with.str());
    CHECK(j["date"] == "2010-01-07");
    CHECK(j["grid"].size() == 4);
    CHECK(j["shape"].size() == 4);
    CHECK(j["scaled"].size() == 4);
    CHECK(j["weights"].size() == 3);
    CHECK(j["reference"]["dates"].size() == 1);
    CHECK(j.contains("config"));
    CHECK_FALSE(nlohmann::json::parse(without.str()).contains("weights"));
}
