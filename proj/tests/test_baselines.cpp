#include <doctest.h>

#include <random>
#include <vector>

#include "support/fixtures.hpp"

using namespace simshape;
using fixtures::ymd;

namespace {
const Date kMonday = ymd(2010, 1, 4);
}

TEST_CASE("persistence") {
    const auto grid = fixtures::grid_of(4);
    std::vector<std::vector<double>> loads;
    for (int n = 0; n < 14; ++n) loads.push_back({1.0 + n, 2, 3, 100});
    const auto history = fixtures::make_history(kMonday, grid, loads);

    // Saturdays are days 5 and 12; the later one wins.
    const auto sat = predict_persistence(history, DayGroup::g3);
    CHECK(sat[0] == doctest::Approx(13.0 / 100.0).epsilon(1e-15));

    const auto one = fixtures::make_history(kMonday, grid, {{2, 4, 4, 8}});
    CHECK(predict_persistence(one, DayGroup::g1)[0] == 0.25);
    CHECK_THROWS_AS(predict_persistence(one, DayGroup::g4), DomainError);

    const auto days = prepare_history(history, true);
    CHECK(predict_persistence(days, DayGroup::g2) == days[9].shape);
}

TEST_CASE("conditional kernel") {
    const auto grid = fixtures::grid_of(4);
    const std::vector<double> a{1, 2, 3, 4}, b{4, 1, 2, 1};

    SUBCASE("two identical days") {
        const auto h = fixtures::make_history(kMonday, grid, {a, a});
        const auto p = predict_conditional_kernel(h, {}, {});
        for (std::size_t i = 0; i < 4; ++i) CHECK(p[i] == doctest::Approx(a[i] / 4.0).epsilon(1e-15));
    }
    SUBCASE("a 2-cycle predicts the successor of the current state") {
        std::vector<std::vector<double>> loads;
        for (int n = 0; n < 11; ++n) loads.push_back(n % 2 == 0 ? a : b);  // ends on a
        const auto days = prepare_history(fixtures::make_history(kMonday, grid, loads), true);
        const auto r = predict_conditional_kernel(days, {KernelKind::gaussian, 1e-3}, {});
        CHECK(r.weights[0] == 0.0);
        double on_b = 0.0;
        for (std::size_t k = 0; k < days.size(); ++k) {
            if (k % 2 == 1) on_b += r.weights[k];
        }
        CHECK(on_b == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < 4; ++i) CHECK(r.prediction[i] == doctest::Approx(b[i] / 4.0).epsilon(1e-12));
    }
    SUBCASE("wide kernel gives the mean of S_2..S_L") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> ud(1.0, 5.0);
        std::vector<std::vector<double>> loads(8, std::vector<double>(4));
        for (auto& d : loads) for (double& v : d) v = ud(rng);
        const auto days = prepare_history(fixtures::make_history(kMonday, grid, loads), true);
        const auto r = predict_conditional_kernel(days, {KernelKind::gaussian, 1e9}, {});
        for (std::size_t i = 0; i < 4; ++i) {
            double mean = 0.0;
            for (std::size_t k = 1; k < days.size(); ++k) mean += days[k].shape[i];
            mean /= static_cast<double>(days.size() - 1);
            CHECK(r.prediction[i] == doctest::Approx(mean).epsilon(1e-9));
        }
    }
    SUBCASE("simplex, hull and no weight on the first day") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> ud(1.0, 5.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::vector<double>> loads(2 + trial % 15, std::vector<double>(4));
            for (auto& d : loads) for (double& v : d) v = ud(rng);
            const auto days = prepare_history(fixtures::make_history(kMonday, grid, loads), true);
            const auto r = predict_conditional_kernel(days, {static_cast<KernelKind>(trial % 3), 0.05 + ud(rng) / 5}, {});
            CHECK(r.weights[0] == 0.0);
            double sum = 0.0;
            for (double w : r.weights.weights) {
                CHECK(w >= 0.0);
                sum += w;
            }
            CHECK(std::abs(sum - 1.0) <= 1e-12);
            for (std::size_t i = 0; i < 4; ++i) {
                double lo = 1e300, hi = -1e300;
                for (const auto& d : days) {
                    lo = std::min(lo, d.shape[i]);
                    hi = std::max(hi, d.shape[i]);
                }
                CHECK(r.prediction[i] >= lo - 1e-12);
                CHECK(r.prediction[i] <= hi + 1e-12);
            }
        }
    }
    SUBCASE("needs two days") {
        const auto days = prepare_history(fixtures::make_history(kMonday, grid, {a}), true);
        CHECK_THROWS_AS(predict_conditional_kernel(days, {}, {}), DomainError);
    }
}
