#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "simshape/cli.hpp"
#include "support/fixtures.hpp"

using namespace simshape;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Workspace {
    fs::path dir;
    explicit Workspace(const std::string& name, std::size_t days = 90) : dir(fs::current_path() / ("cli_" + name)) {
        fs::remove_all(dir);
        fixtures::write_raw_inputs(dir, days, 77);
    }
    [[nodiscard]] std::string at(const std::string& f) const { return (dir / f).string(); }
    [[nodiscard]] Outcome ingest() const {
        return run_cli({"ingest", "--load", at("load.csv"), "--temperature", at("temp.csv"), "--out", at("history.jsonl")});
    }
};

}  // namespace

TEST_CASE("ingest") {
    Workspace ws("ingest");
    const auto r = ws.ingest();
    CHECK(r.code == 0);
    CHECK(r.out.find("1 gap-filled") != std::string::npos);
    std::ifstream in(ws.at("history.jsonl"));
    const auto h = read_history_jsonl(in);
    CHECK(h.size() == 90);

    const auto missing = run_cli({"ingest", "--load", ws.at("nope.csv"), "--out", ws.at("x.jsonl")});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("nope.csv") != std::string::npos);

    const auto strict = run_cli({"ingest", "--load", ws.at("load.csv"), "--out", ws.at("strict.jsonl"), "--max-gap", "0"});
    CHECK(strict.code == 0);
    CHECK(strict.out.find("rejected readings=95") != std::string::npos);
    const auto limit = run_cli({"ingest", "--load", ws.at("load.csv"), "--out", ws.at("strict.jsonl"), "--max-gap", "0",
                                "--max-rejected-fraction", "0"});
    CHECK(limit.code == 1);

    std::string first = slurp(ws.at("history.jsonl"));
    CHECK(ws.ingest().code == 0);
    CHECK(slurp(ws.at("history.jsonl")) == first);
}

TEST_CASE("predict") {
    Workspace ws("predict");
    REQUIRE(ws.ingest().code == 0);
    const std::vector<std::string> base{"predict", "--history", ws.at("history.jsonl"), "--date", "2010-03-25",
                                        "--temp-forecast", ws.at("forecast.csv")};

    auto args = base;
    args.insert(args.end(), {"--bandwidth", "0.3", "--next-day-max", "600", "--weights"});
    const auto r = run_cli(args);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["scaled"].size() == 96);
    CHECK(j["weights"].size() == 80);

    // Oracle on the same normalized history.
    std::ifstream in(ws.at("history.jsonl"));
    const auto h = read_history_jsonl(in).before(fixtures::ymd(2010, 3, 25));
    std::vector<std::vector<double>> loads, temps;
    std::vector<int> groups;
    for (const auto& rec : h.records()) {
        loads.emplace_back(rec.load.values().begin(), rec.load.values().end());
        temps.emplace_back(rec.temperature->values().begin(), rec.temperature->values().end());
        groups.push_back(fixtures::group_code(rec.meta.group));
    }
    std::ifstream fin(ws.at("forecast.csv"));
    const auto fc = parse_temperature_forecast(fin, TimeGrid::uniform(96)).at(fixtures::ymd(2010, 3, 25));
    const std::vector<double> fcv(fc.values().begin(), fc.values().end());
    const std::vector<std::size_t> mask(fc.mask().begin(), fc.mask().end());
    const auto oracle = fixtures::brute_force_ssp(loads, temps, groups, 0, fcv, mask, 14, 0.3, true);
    for (std::size_t i = 0; i < 96; ++i) CHECK(std::abs(j["shape"][i].get<double>() - oracle[i]) <= 1e-12);

    auto early = base;
    early[4] = "2010-01-04";
    CHECK(run_cli(early).code == 1);
    early[4] = "2009-12-01";
    CHECK(run_cli(early).code == 1);

    auto selected = base;
    selected.insert(selected.end(), {"--out", ws.at("pred.json")});
    CHECK(run_cli(selected).code == 0);
    const auto once = slurp(ws.at("pred.json"));
    CHECK(run_cli(selected).code == 0);
    CHECK(slurp(ws.at("pred.json")) == once);
    CHECK_FALSE(fs::exists(ws.at("pred.json.tmp")));
}

TEST_CASE("config file") {
    Workspace ws("config");
    REQUIRE(ws.ingest().code == 0);
    {
        std::ofstream ini(ws.at("run.ini"));
        ini << "# shared settings\n[reference]\nmode = threshold\ndelta = quantile:0.3\n"
               "[predictor]\nbandwidth = 0.25\n[synthetic]\nreplications = 2\n";
    }
    const std::vector<std::string> base{"predict", "--config", ws.at("run.ini"), "--history", ws.at("history.jsonl"),
                                        "--date", "2010-03-25", "--temp-forecast", ws.at("forecast.csv")};
    auto r = run_cli(base);
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"]["reference"]["mode"] == "threshold");
    CHECK(j["config"]["kernel"]["bandwidth"] == 0.25);

    auto over = base;
    over.insert(over.end(), {"--mode", "argmin"});
    j = nlohmann::json::parse(run_cli(over).out);
    CHECK(j["config"]["reference"]["mode"] == "argmin");
    CHECK(j["config"]["reference"]["delta"] == "quantile:0.3");

    {
        std::ofstream ini(ws.at("bad.ini"));
        ini << "[reference]\nbogus = 1\n";
    }
    r = run_cli({"simulate", "--config", ws.at("bad.ini")});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("backtest") {
    Workspace ws("backtest", 120);
    REQUIRE(ws.ingest().code == 0);
    const std::vector<std::string> base{"backtest", "--history", ws.at("history.jsonl"), "--sample", "30", "--seed", "7"};
    auto a = base;
    a.insert(a.end(), {"--out-dir", ws.at("a")});
    auto b = base;
    b.insert(b.end(), {"--out-dir", ws.at("b")});
    REQUIRE(run_cli(a).code == 0);
    REQUIRE(run_cli(b).code == 0);
    const auto csv = slurp(ws.at("a/report.csv"));
    CHECK(csv == slurp(ws.at("b/report.csv")));
    CHECK(slurp(ws.at("a/report.json")) == slurp(ws.at("b/report.json")));
    std::size_t rows = 0;
    for (char c : csv) rows += c == '\n' ? 1 : 0;
    CHECK(rows == 1 + 30 * 3);
    std::size_t curve_files = 0;
    for (const auto& e : fs::directory_iterator(ws.at("a/curves"))) {
        ++curve_files;
        CHECK(slurp(e.path()) == slurp(fs::path(ws.at("b/curves")) / e.path().filename()));
    }
    CHECK(curve_files == 30);

    {
        std::ofstream dates(ws.at("dates.txt"));
        dates << "2010-04-01\n# comment\n2010-04-0x\n";
    }
    const auto bad = run_cli({"backtest", "--history", ws.at("history.jsonl"), "--dates-file", ws.at("dates.txt"),
                              "--out-dir", ws.at("c")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 3") != std::string::npos);

    const auto both = run_cli({"backtest", "--history", ws.at("history.jsonl"), "--dates-file", ws.at("dates.txt"),
                               "--sample", "3", "--out-dir", ws.at("c")});
    CHECK(both.code == 2);
}

TEST_CASE("simulate") {
    const auto r = run_cli({"simulate", "--replications", "2", "--lengths", "16,32"});
    REQUIRE(r.code == 0);
    std::size_t lines = 0;
    for (char c : r.out) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 1 + 2 * 2);
    CHECK(run_cli({"simulate", "--replications", "2", "--lengths", "16,32"}).out == r.out);

    const auto exact = run_cli({"simulate", "--sigma", "0", "--exact-recovery", "--lengths", "200", "--replications", "4"});
    REQUIRE(exact.code == 0);
    std::istringstream in(exact.out);
    std::string line;
    std::getline(in, line);
    std::size_t n = 0;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        for (int k = 0; k < 3; ++k) std::getline(cells, cell, ',');
        CHECK(std::stod(cell) <= 1e-10);
        ++n;
    }
    CHECK(n == 4);
}

TEST_CASE("usage") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"predict", "--bogus"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    const auto help = run_cli({"backtest", "--help"});
    CHECK(help.code == 0);
    for (const char* flag : {"--history", "--dates-file", "--sample", "--seed", "--methods", "--out-dir", "--format",
                             "--bandwidth", "--kernel", "--mode", "--delta", "--config"}) {
        CHECK(help.out.find(flag) != std::string::npos);
    }
    CHECK(run_cli({"--help"}).code == 0);
}
