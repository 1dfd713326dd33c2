#include <algorithm>
#include <cmath>
#include <ostream>

#include "csv.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "simshape/error.hpp"
#include "simshape/synthetic.hpp"

namespace simshape {

ConsistencyConfig ConsistencyConfig::exact_recovery() {
    ConsistencyConfig cfg;
    cfg.mode = ReferenceMode::argmin;
    cfg.delta = DeltaRule::minimum();
    cfg.window_exponent = 1.0;
    cfg.bandwidth_scale = 0.01;
    return cfg;
}

namespace {

std::size_t window_for_length(std::size_t length, double exponent) {
    // Guard against pow() landing a hair above an integer (64^(2/3)).
    const double w = std::ceil(std::pow(static_cast<double>(length), exponent) - 1e-9);
    return static_cast<std::size_t>(std::clamp(w, 1.0, static_cast<double>(length)));
}

PredictorConfig predictor_for(std::size_t length, const ConsistencyConfig& cfg) {
    PredictorConfig pcfg;
    pcfg.rescale = false;
    pcfg.forecast_times.clear();
    pcfg.kernel = {cfg.kernel, cfg.bandwidth_scale * std::pow(static_cast<double>(length), cfg.bandwidth_exponent)};
    pcfg.distance = {cfg.distance, std::nullopt};
    pcfg.reference.mode = cfg.mode;
    pcfg.reference.delta = cfg.delta;
    pcfg.reference.temperature_distance = cfg.distance;
    const auto window = static_cast<int>(window_for_length(length, cfg.window_exponent));
    for (auto& [group, n] : pcfg.reference.window_by_group) n = window;
    return pcfg;
}

// One replication: a single series of max(L) + 1 days whose last day is the
// target; the history for length L is the L days right before it, so the
// histories are nested and the target is shared across lengths.
std::vector<ConsistencyRow> run_replication(const SyntheticSpec& tmpl, std::span<const std::size_t> lengths,
                                            std::size_t replication, const ConsistencyConfig& cfg) {
    const std::size_t longest = lengths.back();
    for (std::size_t retry = 0; retry <= cfg.max_retries; ++retry) {
        SyntheticSpec spec = tmpl;
        spec.days = longest + 1;
        spec.seed = derive_seed(tmpl.seed, {replication, retry});
        spec.start = add_days(tmpl.start, static_cast<int>(derive_seed(spec.seed, {0xca1e}) % 7));
        const SyntheticData data = generate(spec);
        const auto all = prepare_history(data.history, false);
        const auto& target = all[longest];
        const auto& truth = data.days[longest].truth;

        std::vector<ConsistencyRow> rows;
        try {
            for (auto length : lengths) {
                const auto history = std::span<const PreparedDay>(all).subspan(longest - length, length);
                const auto pcfg = predictor_for(length, cfg);
                const auto p = predict_prepared(history, target.meta, *target.temperature, std::nullopt, pcfg);
                ConsistencyRow row;
                row.length = length;
                row.replication = replication;
                row.err_pred = distance(p.shape.values(), truth, pcfg.distance);
                row.err_ref = distance(p.reference.reference.values(), truth, pcfg.distance);
                row.err_pred_ref = distance(p.shape.values(), p.reference.reference.values(), pcfg.distance);
                row.bandwidth = pcfg.kernel.bandwidth;
                row.window = static_cast<std::size_t>(pcfg.reference.window_for(target.meta.group));
                row.c_star_size = p.reference.c_star.size();
                row.delta = p.reference.delta;
                row.rmae = detail::rmae(p.shape.values(), truth);
                row.retries = retry;
                rows.push_back(row);
            }
            return rows;
        } catch (const EmptyCandidateSet&) {
            // degenerate local window for some length; redraw the replication
        }
    }
    throw DomainError("consistency experiment: replication " + std::to_string(replication) +
                      " had no usable candidate set after " + std::to_string(cfg.max_retries) + " retries");
}

}  // namespace

std::vector<ConsistencyRow> consistency_experiment(const SyntheticSpec& spec_template,
                                                   std::span<const std::size_t> lengths, std::size_t replications,
                                                   const ConsistencyConfig& cfg) {
    spec_template.validate();
    if (lengths.empty()) throw DomainError("consistency experiment needs at least one length");
    if (replications == 0) throw DomainError("consistency experiment needs at least one replication");
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        if (lengths[k] < 2) throw DomainError("history lengths must be at least 2");
        if (k > 0 && lengths[k] <= lengths[k - 1]) throw DomainError("history lengths must be increasing");
    }
    std::vector<std::vector<ConsistencyRow>> per_replication(replications);
    detail::parallel_for(replications, cfg.threads, [&](std::size_t r) {
        per_replication[r] = run_replication(spec_template, lengths, r, cfg);
    });
    std::vector<ConsistencyRow> rows;
    rows.reserve(lengths.size() * replications);
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        for (const auto& rep : per_replication) rows.push_back(rep[k]);
    }
    return rows;
}

std::vector<ConsistencySummary> summarize_consistency(std::span<const ConsistencyRow> rows) {
    std::vector<ConsistencySummary> out;
    std::size_t k = 0;
    while (k < rows.size()) {
        const std::size_t length = rows[k].length;
        std::vector<double> errs;
        ConsistencySummary s;
        s.length = length;
        for (; k < rows.size() && rows[k].length == length; ++k) {
            errs.push_back(rows[k].err_pred);
            s.mean_err_ref += rows[k].err_ref;
            s.mean_err_pred_ref += rows[k].err_pred_ref;
        }
        const auto n = static_cast<double>(errs.size());
        s.replications = errs.size();
        double total = 0.0;
        for (double e : errs) total += e;
        s.mean_err_pred = total / n;
        s.mean_err_ref /= n;
        s.mean_err_pred_ref /= n;
        double ss = 0.0;
        for (double e : errs) ss += (e - s.mean_err_pred) * (e - s.mean_err_pred);
        s.sd_err_pred = errs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        std::sort(errs.begin(), errs.end());
        const auto m = errs.size();
        s.median_err_pred = m % 2 == 1 ? errs[m / 2] : 0.5 * (errs[m / 2 - 1] + errs[m / 2]);
        out.push_back(s);
    }
    return out;
}

void write_consistency_csv(std::ostream& out, std::span<const ConsistencyRow> rows) {
    using detail::format_number;
    out << "L,replication,err_pred,err_ref,err_pred_ref,h,n_L,c_star_size\n";
    for (const auto& r : rows) {
        out << r.length << ',' << r.replication << ',' << format_number(r.err_pred) << ','
            << format_number(r.err_ref) << ',' << format_number(r.err_pred_ref) << ','
            << format_number(r.bandwidth) << ',' << r.window << ',' << r.c_star_size << '\n';
    }
}

}  // namespace simshape
