#include "simshape/report_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "csv.hpp"
#include "simshape/error.hpp"

namespace simshape {

using detail::format_number;
using nlohmann::json;

void write_report_csv(std::ostream& out, const BacktestReport& report) {
    out << "date,method,rmae,maxdiff,mindiff\n";
    for (const auto& s : report.scores) {
        out << format_date(s.date) << ',' << s.method << ',' << format_number(s.rmae) << ','
            << format_number(s.maxdiff) << ',' << format_number(s.mindiff) << '\n';
    }
}

void write_report_json(std::ostream& out, const BacktestReport& report) {
    json scores = json::array();
    for (const auto& s : report.scores) {
        scores.push_back({{"date", format_date(s.date)},
                          {"method", s.method},
                          {"rmae", s.rmae},
                          {"maxdiff", s.maxdiff},
                          {"mindiff", s.mindiff}});
    }
    json summary = json::array();
    for (const auto& m : report.summary) {
        summary.push_back({{"method", m.method},
                           {"days", m.days},
                           {"mean_rmae", m.mean_rmae},
                           {"median_rmae", m.median_rmae},
                           {"wins", m.wins}});
    }
    json doc{{"protocol", report.protocol}, {"scores", scores}, {"summary", summary}};
    doc["config"] = report.config.empty() ? json(nullptr) : json::parse(report.config);
    out << doc.dump(2) << '\n';
}

void write_curves_csv(std::ostream& out, const DayCurves& curves) {
    out << "t,actual";
    for (const auto& [name, values] : curves.predictions) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < curves.actual.size(); ++i) {
        out << format_clock(curves.grid.label(i)) << ',' << format_number(curves.actual[i]);
        for (const auto& [name, values] : curves.predictions) out << ',' << format_number(values[i]);
        out << '\n';
    }
}

std::vector<DayScore> read_report_csv(std::istream& in) {
    detail::LineReader reader(in);
    std::string line;
    if (!reader.next(line) || line != "date,method,rmae,maxdiff,mindiff") {
        throw ParseError("expected header 'date,method,rmae,maxdiff,mindiff'", 1);
    }
    std::vector<DayScore> out;
    while (reader.next(line)) {
        if (detail::trim(line).empty()) continue;
        const auto n = reader.line_number();
        const auto f = detail::split(line);
        if (f.size() != 5) {
            throw ParseError("expected 5 fields, found " + std::to_string(f.size()), n);
        }
        DayScore s;
        try {
            s.date = parse_date(f[0]);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), n);
        }
        s.method = std::string(f[1]);
        const auto rmae = detail::parse_number(f[2]);
        const auto maxdiff = detail::parse_number(f[3]);
        const auto mindiff = detail::parse_number(f[4]);
        if (!rmae || !maxdiff || !mindiff) {
            throw ParseError("non-numeric score", n);
        }
        s.rmae = *rmae;
        s.maxdiff = *maxdiff;
        s.mindiff = *mindiff;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace simshape
