#include "simshape/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "simshape/error.hpp"

namespace simshape {

namespace {

double clip_unit(double v) { return std::clamp(v, 1e-6, 1.0); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(master);
    for (auto x : path) h = splitmix64(h ^ splitmix64(x));
    return h;
}

std::vector<ShapeFunction> default_shape_functions() {
    using std::numbers::pi;
    return {
        {1, [](double u) { return clip_unit(0.5 + 0.4 * std::sin(pi * u / 40.0) + 0.1 * u / 40.0); },
         {DayGroup::g1, DayGroup::g2}},
        {2, [](double u) { return clip_unit(0.6 + 0.3 * std::cos(pi * u / 40.0)); },
         {DayGroup::g3, DayGroup::g4, DayGroup::holiday}},
    };
}

std::vector<std::vector<double>> default_temperature_pool(const TimeGrid& grid, std::size_t size) {
    if (size == 0) {
        throw DomainError("temperature pool size must be positive");
    }
    std::vector<std::vector<double>> pool(size, std::vector<double>(grid.size()));
    for (std::size_t k = 0; k < size; ++k) {
        const double base =
            size == 1 ? 20.0 : 8.0 + 24.0 * static_cast<double>(k) / static_cast<double>(size - 1);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double hours = grid.label(i) / 3600.0;
            pool[k][i] = base + 6.0 * std::sin(2.0 * std::numbers::pi * (hours - 9.0) / 24.0);
        }
    }
    return pool;
}

void SyntheticSpec::validate() const {
    if (shapes.empty()) throw DomainError("synthetic spec needs at least one shape function");
    if (temperature_pool.empty()) throw DomainError("synthetic spec needs a nonempty temperature pool");
    for (const auto& p : temperature_pool) {
        if (p.size() != grid.size()) throw DomainError("temperature profile length does not match the grid");
    }
    if (!(jitter_sigma >= 0.0) || !(noise_sigma >= 0.0)) throw DomainError("sigmas must be nonnegative");
    if (!(level > 0.0)) throw DomainError("load level must be positive");
    for (auto g : kAllGroups) {
        const bool covered = std::any_of(shapes.begin(), shapes.end(), [&](const ShapeFunction& s) {
            return std::find(s.groups.begin(), s.groups.end(), g) != s.groups.end();
        });
        if (!covered) throw DomainError("no shape function for group " + std::string(to_string(g)));
    }
}

SyntheticData generate(const SyntheticSpec& spec) {
    spec.validate();
    const std::size_t P = spec.grid.size();
    SyntheticData out;
    std::vector<DailyRecord> records;
    records.reserve(spec.days);
    out.days.reserve(spec.days);
    for (std::size_t n = 0; n < spec.days; ++n) {
        const Date date = add_days(spec.start, static_cast<int>(n));
        const CalendarMeta meta = annotate_calendar(date, spec.holidays);
        std::size_t m = 0;
        while (std::find(spec.shapes[m].groups.begin(), spec.shapes[m].groups.end(), meta.group) ==
               spec.shapes[m].groups.end()) {
            ++m;
        }

        std::mt19937_64 rng(derive_seed(spec.seed, {n}));
        std::uniform_int_distribution<std::size_t> pick(0, spec.temperature_pool.size() - 1);
        std::normal_distribution<double> gauss(0.0, 1.0);

        SyntheticDay day;
        day.shape_index = m;
        day.pool_index = pick(rng);
        day.temperature = spec.temperature_pool[day.pool_index];
        for (double& t : day.temperature) t += spec.jitter_sigma * gauss(rng);
        day.truth.resize(P);
        std::vector<double> load(P);
        for (std::size_t i = 0; i < P; ++i) {
            const double f = spec.shapes[m].map(day.temperature[i]);
            day.truth[i] = spec.level * f;
            load[i] = spec.level * (f + spec.noise_sigma * gauss(rng));
            if (load[i] < 0.0) {
                throw DomainError("synthetic load went negative on " + format_date(date) + "; lower noise_sigma");
            }
        }
        records.push_back({meta, LoadSegment(spec.grid, std::move(load)),
                           TemperatureSegment(spec.grid, day.temperature), Quality::complete});
        out.days.push_back(std::move(day));
    }
    out.history = HistoryWindow(std::move(records));
    return out;
}

}  // namespace simshape
