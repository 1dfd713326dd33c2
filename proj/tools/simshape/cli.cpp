#include "simshape/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "simshape/config_file.hpp"
#include "simshape/simshape.hpp"

namespace simshape::cli {

namespace {

namespace fs = std::filesystem;

/// Bad invocation, unreadable input or unwritable output (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a == std::string::npos) throw UsageError("empty item in list '" + text + "'");
        out.push_back(item.substr(a, b - a + 1));
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

double to_double(const std::string& s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

std::size_t to_size(const std::string& s) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("not a count: '" + s + "'");
    return v;
}

std::ifstream open_input(const std::string& path, const char* what) {
    if (!fs::is_regular_file(path)) throw UsageError(std::string("cannot read ") + what + " '" + path + "'");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError(std::string("cannot open ") + what + " '" + path + "'");
    return in;
}

void write_atomic(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot write '" + path.string() + "'");
        body(out);
        out.flush();
        if (!out) throw UsageError("write failed for '" + path.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw UsageError("cannot move output into place at '" + path.string() + "'");
    }
}

// INI section -> keys it may hold. Every key is also a flag of the same name.
const std::map<std::string, std::set<std::string>>& config_sections() {
    static const std::map<std::string, std::set<std::string>> sections{
        {"paths", {"load", "temperature", "holidays", "history", "temp-forecast", "out", "out-dir", "dates-file"}},
        {"ingestion", {"points", "max-gap", "dst", "max-rejected-fraction"}},
        {"reference",
         {"n-l-g1", "n-l-g2", "n-l-g3", "n-l-g4", "n-l-holiday", "mode", "delta", "temp-distance",
          "holiday-fallback", "holiday-min-candidates"}},
        {"predictor",
         {"kernel", "bandwidth", "bandwidth-grid", "validation-days", "distance", "pool", "forecast-times",
          "rescale", "weights", "next-day-max"}},
        {"evaluation", {"methods", "sample", "seed", "min-history", "format"}},
        {"synthetic",
         {"lengths", "replications", "sigma", "jitter", "seed", "pool-size", "threads", "exact-recovery",
          "bandwidth-scale", "window-exponent"}},
    };
    return sections;
}

/// Flags shared by predict and backtest.
struct PredictorFlags {
    int n_l_g1 = 14;
    int n_l_g2 = 28;
    int n_l_g3 = 28;
    int n_l_g4 = 28;
    int n_l_holiday = 28;
    std::string mode = "argmin";
    std::string delta = "min";
    std::string temp_distance = "euclidean";
    std::string holiday_fallback = "G4";
    std::size_t holiday_min_candidates = 2;
    std::string kernel = "gaussian";
    std::optional<double> bandwidth;
    std::string bandwidth_grid;
    std::size_t validation_days = 14;
    std::string distance = "euclidean";
    std::string pool = "all-days";
    std::string forecast_times = "08:00,12:00,16:00,20:00";
    bool rescale = true;

    void add_to(CLI::App* app) {
        app->add_option("--n-l-g1", n_l_g1, "Local window n_L for G1 (Mon/Tue/Thu/Fri) targets")->capture_default_str();
        app->add_option("--n-l-g2", n_l_g2, "Local window n_L for G2 (Wed) targets")->capture_default_str();
        app->add_option("--n-l-g3", n_l_g3, "Local window n_L for G3 (Sat) targets")->capture_default_str();
        app->add_option("--n-l-g4", n_l_g4, "Local window n_L for G4 (Sun) targets")->capture_default_str();
        app->add_option("--n-l-holiday", n_l_holiday, "Local window n_L for holiday targets")->capture_default_str();
        app->add_option("--mode", mode, "Reference mode: argmin|threshold")->capture_default_str();
        app->add_option("--delta", delta, "Threshold rule: min|quantile:<q>|fixed:<value>")->capture_default_str();
        app->add_option("--temp-distance", temp_distance, "Temperature metric: euclidean|mean-absolute|max-absolute")
            ->capture_default_str();
        app->add_option("--holiday-fallback", holiday_fallback, "Group searched for sparse holidays (G1..G4|none)")
            ->capture_default_str();
        app->add_option("--holiday-min-candidates", holiday_min_candidates,
                        "Holiday candidates needed before falling back")
            ->capture_default_str();
        app->add_option("--kernel", kernel, "Kernel: gaussian|epanechnikov|uniform")->capture_default_str();
        app->add_option("--bandwidth", bandwidth, "Fixed bandwidth h; selected by empirical risk when absent");
        app->add_option("--bandwidth-grid", bandwidth_grid, "Comma separated h candidates (default: log grid)");
        app->add_option("--validation-days", validation_days, "Days scored when selecting h")->capture_default_str();
        app->add_option("--distance", distance, "Load metric: euclidean|mean-absolute|max-absolute")
            ->capture_default_str();
        app->add_option("--pool", pool, "Days in the weighted sum: all-days|same-group")->capture_default_str();
        app->add_option("--forecast-times", forecast_times, "Clock times with temperature forecasts, or 'all'")
            ->capture_default_str();
        app->add_option("--rescale", rescale, "Work on daily-max rescaled shapes (true|false)")->capture_default_str();
    }

    [[nodiscard]] PredictorConfig build() const {
        PredictorConfig cfg;
        auto& ref = cfg.reference;
        ref.window_by_group = {{DayGroup::g1, n_l_g1},
                               {DayGroup::g2, n_l_g2},
                               {DayGroup::g3, n_l_g3},
                               {DayGroup::g4, n_l_g4},
                               {DayGroup::holiday, n_l_holiday}};
        ref.mode = parse_reference_mode(mode);
        ref.delta = parse_delta_rule(delta);
        ref.temperature_distance = parse_distance_kind(temp_distance);
        if (holiday_fallback == "none") {
            ref.holiday_fallback.reset();
        } else {
            ref.holiday_fallback = parse_day_group(holiday_fallback);
        }
        ref.holiday_min_candidates = holiday_min_candidates;
        ref.validate();
        cfg.kernel.kind = parse_kernel_kind(kernel);
        if (bandwidth) {
            if (!(*bandwidth > 0.0)) throw UsageError("--bandwidth must be positive");
            cfg.kernel.bandwidth = *bandwidth;
        }
        cfg.distance.kind = parse_distance_kind(distance);
        cfg.pool = parse_weight_pool(pool);
        cfg.rescale = rescale;
        cfg.forecast_times.clear();
        if (forecast_times != "all") {
            for (const auto& t : split_list(forecast_times)) {
                const auto secs = parse_clock(t);
                if (!secs) throw UsageError("bad clock time '" + t + "' in --forecast-times");
                cfg.forecast_times.push_back(*secs);
            }
        }
        return cfg;
    }

    [[nodiscard]] std::optional<std::vector<double>> explicit_grid() const {
        if (bandwidth_grid.empty()) return std::nullopt;
        std::vector<double> grid;
        for (const auto& s : split_list(bandwidth_grid)) {
            const double h = to_double(s);
            if (!(h > 0.0)) throw UsageError("bandwidth grid values must be positive");
            grid.push_back(h);
        }
        return grid;
    }
};

HistoryWindow load_history(const std::string& path) {
    auto in = open_input(path, "history");
    return read_history_jsonl(in);
}

HolidaySet load_holidays(const std::string& path) {
    if (path.empty()) return {};
    auto in = open_input(path, "holiday file");
    return parse_holidays(in);
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
    std::string load;
    std::string temperature;
    std::string holidays;
    std::string out;
    std::size_t points = 96;
    std::size_t max_gap = 4;
    bool dst = false;
    double max_rejected_fraction = 1.0;
};

void print_gap_report(std::ostream& out, const char* title, const GapReport& report) {
    out << title << ": " << report.days.size() << " days, " << report.count(Quality::complete) << " complete, "
        << report.count(Quality::gap_filled) << " gap-filled, " << report.count(Quality::rejected) << " rejected\n";
    for (const auto& d : report.days) {
        if (d.quality == Quality::complete && d.duplicates == 0) continue;
        out << "  " << format_date(d.date) << ' ' << to_string(d.quality) << " readings=" << d.readings
            << " duplicates=" << d.duplicates << " filled=" << d.filled_points;
        if (!d.note.empty()) out << " (" << d.note << ')';
        out << '\n';
    }
}

int cmd_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
    auto load_in = open_input(a.load, "load file");
    const auto loads = parse_load_file(load_in);
    std::vector<Reading> temps;
    if (!a.temperature.empty()) {
        auto t_in = open_input(a.temperature, "temperature file");
        temps = parse_temperature_history(t_in);
    }
    const auto holidays = load_holidays(a.holidays);
    const auto grid = TimeGrid::uniform(a.points);

    GapPolicy policy;
    policy.max_gap = a.max_gap;
    policy.dst_aware = a.dst;
    const auto result = segmentize(loads, grid, policy, holidays, temps);

    write_atomic(a.out, [&](std::ostream& os) { write_history_jsonl(os, result.history); });

    print_gap_report(out, "load", result.load_report);
    if (!a.temperature.empty()) print_gap_report(out, "temperature", result.temperature_report);

    const auto total = result.load_report.days.size();
    const auto rejected = result.load_report.count(Quality::rejected);
    const double fraction = total == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(total);
    if (fraction > a.max_rejected_fraction) {
        err << "error: " << rejected << " of " << total << " days rejected, above --max-rejected-fraction "
            << a.max_rejected_fraction << '\n';
        return kDomainError;
    }
    return kSuccess;
}

// ---------------------------------------------------------------- predict

struct PredictArgs {
    std::string history;
    std::string date;
    std::string temp_forecast;
    std::string holidays;
    std::string out;
    std::optional<double> next_day_max;
    bool weights = false;
    PredictorFlags predictor;
};

int cmd_predict(const PredictArgs& a, std::ostream& out, std::ostream& err) {
    const auto history = load_history(a.history);
    if (history.empty()) throw DomainError("history has no usable days");
    const Date date = parse_date(a.date);
    const auto& grid = history[0].load.grid();

    const auto past = history.before(date);
    if (past.empty()) throw DomainError("date " + a.date + " is not after the start of the history");

    auto fc_in = open_input(a.temp_forecast, "temperature forecast");
    const auto forecasts = parse_temperature_forecast(fc_in, grid);
    const auto fc = forecasts.find(date);
    if (fc == forecasts.end()) throw DomainError("no temperature forecast for " + a.date);
    if (a.next_day_max && !(*a.next_day_max > 0.0)) throw UsageError("--next-day-max must be positive");

    PredictorConfig cfg = a.predictor.build();
    // Bandwidth selection must see the same mask as the forecast file.
    cfg.forecast_times.clear();
    for (const auto i : fc->second.mask()) cfg.forecast_times.push_back(grid.label(i));

    if (!a.predictor.bandwidth) {
        auto h_grid = a.predictor.explicit_grid();
        if (!h_grid) h_grid = default_bandwidth_grid(prepare_history(past, cfg.rescale), cfg.distance);
        const auto sel = select_bandwidth(past, cfg, *h_grid, a.predictor.validation_days);
        cfg.kernel.bandwidth = sel.bandwidth;
        err << "selected bandwidth h = " << sel.bandwidth << '\n';
    }

    const auto target = annotate_calendar(date, load_holidays(a.holidays));
    const auto pred = predict_day(past, target, fc->second, a.next_day_max, cfg);
    for (const auto& w : pred.warnings) err << "warning: " << w << '\n';

    if (a.out.empty()) {
        write_prediction_json(out, pred, a.weights);
    } else {
        write_atomic(a.out, [&](std::ostream& os) { write_prediction_json(os, pred, a.weights); });
    }
    return kSuccess;
}

// ---------------------------------------------------------------- backtest

struct BacktestArgs {
    std::string history;
    std::string dates_file;
    std::optional<std::size_t> sample;
    std::uint64_t seed = 1;
    std::size_t min_history = 56;
    std::string methods = "ssp,persistence,conditional-kernel";
    std::string out_dir;
    std::string format = "both";
    PredictorFlags predictor;
};

std::vector<Date> read_dates_file(const std::string& path) {
    auto in = open_input(path, "dates file");
    std::vector<Date> dates;
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto a = raw.find_first_not_of(" \t");
        if (a == std::string::npos || raw[a] == '#') continue;
        const auto b = raw.find_last_not_of(" \t");
        try {
            dates.push_back(parse_date(std::string_view(raw).substr(a, b - a + 1)));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what(), n);
        }
    }
    std::sort(dates.begin(), dates.end());
    dates.erase(std::unique(dates.begin(), dates.end()), dates.end());
    return dates;
}

std::vector<Date> sample_dates(const HistoryWindow& history, std::size_t count, std::uint64_t seed,
                               std::size_t min_history, std::ostream& err) {
    std::vector<Date> eligible;
    for (std::size_t i = min_history; i < history.size(); ++i) {
        if (history[i].temperature) eligible.push_back(history[i].meta.date);
    }
    if (eligible.size() < count) {
        err << "warning: only " << eligible.size() << " eligible dates for a sample of " << count << '\n';
        return eligible;
    }
    // Partial Fisher-Yates with an explicit engine keeps the draw portable.
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t span = eligible.size() - i;
        const std::size_t j = i + static_cast<std::size_t>(rng() % span);
        std::swap(eligible[i], eligible[j]);
    }
    eligible.resize(count);
    std::sort(eligible.begin(), eligible.end());
    return eligible;
}

int cmd_backtest(const BacktestArgs& a, std::ostream& out, std::ostream& err) {
    if (a.format != "csv" && a.format != "json" && a.format != "both") {
        throw UsageError("--format must be csv, json or both");
    }
    const auto history = load_history(a.history);
    const auto dates = !a.dates_file.empty() ? read_dates_file(a.dates_file)
                                             : sample_dates(history, a.sample.value_or(30), a.seed, a.min_history, err);
    const auto methods = parse_methods(a.methods);

    BacktestConfig cfg;
    cfg.predictor = a.predictor.build();
    cfg.validation_days = a.predictor.validation_days;
    if (!a.predictor.bandwidth) {
        cfg.bandwidth_grid = a.predictor.explicit_grid();
        if (!cfg.bandwidth_grid) {
            // Built from data before the first date so no target leaks into it.
            const auto past = dates.empty() ? HistoryWindow{} : history.before(dates.front());
            if (past.empty()) {
                cfg.bandwidth_grid = std::vector<double>{1.0};
            } else {
                cfg.bandwidth_grid =
                    default_bandwidth_grid(prepare_history(past, cfg.predictor.rescale), cfg.predictor.distance);
            }
        }
    }

    const auto report = backtest(history, dates, methods, cfg);

    const fs::path dir(a.out_dir);
    if (a.format != "json") {
        write_atomic(dir / "report.csv", [&](std::ostream& os) { write_report_csv(os, report); });
    }
    if (a.format != "csv") {
        write_atomic(dir / "report.json", [&](std::ostream& os) { write_report_json(os, report); });
    }
    for (const auto& c : report.curves) {
        write_atomic(dir / "curves" / (format_date(c.date) + ".csv"),
                     [&](std::ostream& os) { write_curves_csv(os, c); });
    }

    out << "protocol: " << report.protocol << ", dates: " << dates.size() << '\n';
    out << "method,days,mean_rmae,median_rmae,wins\n";
    for (const auto& s : report.summary) {
        out << s.method << ',' << s.days << ',' << s.mean_rmae << ',' << s.median_rmae << ',' << s.wins << '\n';
    }
    return kSuccess;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string lengths = "64,128,256,512";
    std::size_t replications = 50;
    double sigma = 0.05;
    std::optional<double> jitter;
    std::uint64_t seed = 1;
    std::size_t points = 96;
    std::size_t pool_size = 5;
    unsigned threads = 0;
    bool exact_recovery = false;
    std::optional<double> bandwidth_scale;
    std::optional<double> window_exponent;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<std::size_t> lengths;
    for (const auto& s : split_list(a.lengths)) lengths.push_back(to_size(s));
    if (a.replications == 0) throw UsageError("--replications must be at least 1");

    SyntheticSpec spec;
    spec.grid = TimeGrid::uniform(a.points);
    spec.temperature_pool = default_temperature_pool(spec.grid, a.pool_size);
    spec.noise_sigma = a.sigma;
    spec.seed = a.seed;

    ConsistencyConfig cfg = a.exact_recovery ? ConsistencyConfig::exact_recovery() : ConsistencyConfig{};
    // The exact-recovery setup draws profiles from the pool without jitter.
    spec.jitter_sigma = a.jitter.value_or(a.exact_recovery ? 0.0 : 0.5);
    if (a.bandwidth_scale) cfg.bandwidth_scale = *a.bandwidth_scale;
    if (a.window_exponent) cfg.window_exponent = *a.window_exponent;
    cfg.threads = a.threads;

    const auto rows = consistency_experiment(spec, lengths, a.replications, cfg);
    if (a.out.empty()) {
        write_consistency_csv(out, rows);
        return kSuccess;
    }
    write_atomic(a.out, [&](std::ostream& os) { write_consistency_csv(os, rows); });
    out << "L,replications,mean_err_pred,sd_err_pred,median_err_pred,mean_err_ref,mean_err_pred_ref\n";
    for (const auto& s : summarize_consistency(rows)) {
        out << s.length << ',' << s.replications << ',' << s.mean_err_pred << ',' << s.sd_err_pred << ','
            << s.median_err_pred << ',' << s.mean_err_ref << ',' << s.mean_err_pred_ref << '\n';
    }
    (void)err;
    return kSuccess;
}

// ---------------------------------------------------------------- wiring

/// Turns config file entries into flag tokens for `sub`. Keys that belong to
/// other commands are skipped; unknown sections or keys are errors.
std::vector<std::string> config_tokens(const std::string& path, const CLI::App* sub) {
    std::vector<ConfigEntry> entries;
    try {
        entries = read_config_file(path);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const auto& sections = config_sections();
    std::vector<std::string> tokens;
    for (const auto& e : entries) {
        const auto sec = sections.find(e.section);
        if (sec == sections.end()) {
            throw ParseError(path + ": unknown section [" + e.section + "]", e.line);
        }
        if (!sec->second.contains(e.key)) {
            throw ParseError(path + ": unknown key '" + e.key + "' in [" + e.section + "]", e.line);
        }
        if (sub->get_option_no_throw("--" + e.key) == nullptr) continue;
        tokens.push_back("--" + e.key + "=" + e.value);
    }
    return tokens;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a path");
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    return path;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Similar-shape functional time series load forecasting", "simshape"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_path;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "INI config file; flags on the command line take precedence");
    };

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Normalize raw load/temperature CSVs into a daily history");
    ingest_cmd->add_option("--load", ingest.load, "Load CSV (timestamp,load_mw)")->required();
    ingest_cmd->add_option("--temperature", ingest.temperature, "Temperature CSV (timestamp,temp_c)");
    ingest_cmd->add_option("--holidays", ingest.holidays, "Holiday list, one ISO date per line");
    ingest_cmd->add_option("--out", ingest.out, "Normalized history output (JSON lines)")->required();
    ingest_cmd->add_option("--points", ingest.points, "Grid points per day")->capture_default_str();
    ingest_cmd->add_option("--max-gap", ingest.max_gap, "Longest interpolated run of missing points")
        ->capture_default_str();
    ingest_cmd->add_flag("--dst", ingest.dst, "Resample daylight-saving transition days");
    ingest_cmd->add_option("--max-rejected-fraction", ingest.max_rejected_fraction,
                           "Fail (exit 1) when more days than this fraction are rejected")
        ->capture_default_str();
    add_config(ingest_cmd);

    PredictArgs predict;
    auto* predict_cmd = app.add_subcommand("predict", "Predict one day from a normalized history");
    predict_cmd->add_option("--history", predict.history, "Normalized history (JSON lines)")->required();
    predict_cmd->add_option("--date", predict.date, "Target date YYYY-MM-DD")->required();
    predict_cmd->add_option("--temp-forecast", predict.temp_forecast, "Forecast CSV (date,tHHMM,...)")->required();
    predict_cmd->add_option("--holidays", predict.holidays, "Holiday list used to classify the target date");
    predict_cmd->add_option("--next-day-max", predict.next_day_max, "Forecast daily maximum in MW");
    predict_cmd->add_option("--out", predict.out, "Output JSON file (default: stdout)");
    predict_cmd->add_flag("--weights", predict.weights, "Include the weight vector");
    predict.predictor.add_to(predict_cmd);
    add_config(predict_cmd);

    BacktestArgs bt;
    auto* bt_cmd = app.add_subcommand("backtest", "Rolling one-day-ahead evaluation (perfect-temperature protocol)");
    bt_cmd->add_option("--history", bt.history, "Normalized history (JSON lines)")->required();
    auto* dates_opt = bt_cmd->add_option("--dates-file", bt.dates_file, "Dates to evaluate, one per line");
    auto* sample_opt = bt_cmd->add_option("--sample", bt.sample, "Evaluate N randomly drawn dates (default 30)");
    dates_opt->excludes(sample_opt);
    bt_cmd->add_option("--seed", bt.seed, "Seed of the date sample")->capture_default_str();
    bt_cmd->add_option("--min-history", bt.min_history, "Days of history a sampled date needs")
        ->capture_default_str();
    bt_cmd->add_option("--methods", bt.methods, "Comma separated: ssp,persistence,conditional-kernel")
        ->capture_default_str();
    bt_cmd->add_option("--out-dir", bt.out_dir, "Directory for report and curve files")->required();
    bt_cmd->add_option("--format", bt.format, "Report format: csv|json|both")->capture_default_str();
    bt.predictor.add_to(bt_cmd);
    add_config(bt_cmd);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Synthetic consistency experiment");
    sim_cmd->add_option("--lengths", sim.lengths, "Comma separated history lengths L")->capture_default_str();
    sim_cmd->add_option("--replications", sim.replications, "Replications per length")->capture_default_str();
    sim_cmd->add_option("--sigma", sim.sigma, "Load noise sigma")->capture_default_str();
    sim_cmd->add_option("--jitter", sim.jitter, "Temperature jitter sigma in C (default 0.5, 0 with --exact-recovery)");
    sim_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    sim_cmd->add_option("--points", sim.points, "Grid points per day")->capture_default_str();
    sim_cmd->add_option("--pool-size", sim.pool_size, "Number of temperature profiles")->capture_default_str();
    sim_cmd->add_option("--threads", sim.threads, "Worker threads, 0 = all cores")->capture_default_str();
    sim_cmd->add_flag("--exact-recovery", sim.exact_recovery,
                      "Argmin reference, n_L = L, narrow kernel, no jitter");
    sim_cmd->add_option("--bandwidth-scale", sim.bandwidth_scale, "c in h = c * L^(-1/5)");
    sim_cmd->add_option("--window-exponent", sim.window_exponent, "e in n_L = ceil(L^e)");
    sim_cmd->add_option("--out", sim.out, "Output CSV (default: stdout)");
    add_config(sim_cmd);

    try {
        std::vector<std::string> tokens = args;
        if (!args.empty()) {
            CLI::App* sub = nullptr;
            for (auto* s : {ingest_cmd, predict_cmd, bt_cmd, sim_cmd}) {
                if (s->get_name() == args.front()) sub = s;
            }
            const auto path = find_config_path(args);
            if (sub != nullptr && path) {
                auto extra = config_tokens(*path, sub);
                tokens.insert(tokens.begin() + 1, extra.begin(), extra.end());
            }
        }
        std::reverse(tokens.begin(), tokens.end());
        try {
            app.parse(tokens);
        } catch (const CLI::CallForHelp& e) {
            app.exit(e, out, err);
            return kSuccess;
        } catch (const CLI::CallForAllHelp& e) {
            app.exit(e, out, err);
            return kSuccess;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << '\n';
            err << "run with --help for usage\n";
            return kUsageError;
        }

        if (ingest_cmd->parsed()) return cmd_ingest(ingest, out, err);
        if (predict_cmd->parsed()) return cmd_predict(predict, out, err);
        if (bt_cmd->parsed()) return cmd_backtest(bt, out, err);
        if (sim_cmd->parsed()) return cmd_simulate(sim, out, err);
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
}

}  // namespace simshape::cli
