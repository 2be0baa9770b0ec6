#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cevmlab/runner.hpp"

using namespace cevmlab;

namespace {

// Tests run from the build tree (ctest working dir is build/tests).
std::string cli_path() {
    namespace fs = std::filesystem;
    for (const char* p : {"../cevmlab", "./cevmlab", "build/cevmlab"})
        if (fs::exists(p)) return fs::absolute(p).string();
    return "";
}

}  // namespace

TEST_SUITE("runner") {
    TEST_CASE("config validation") {
        RunConfig bad;
        bad.n = 0;
        CHECK_THROWS_AS(validate(bad), std::invalid_argument);
        bad = RunConfig{};
        bad.t_grid.ratio = 1.0;
        CHECK_THROWS_AS(validate(bad), std::invalid_argument);
        bad = RunConfig{};
        bad.t_grid.count = 11;
        CHECK_THROWS_AS(validate(bad), std::invalid_argument);
        bad = RunConfig{};
        bad.scenario_ids = {"S17"};
        CHECK_THROWS_AS(validate(bad), std::invalid_argument);
        CHECK_NOTHROW(validate(RunConfig{}));
        CHECK(default_mc_t(4'000'000) == doctest::Approx(1e3));
        CHECK(default_mc_t(16'000'000'000ull) == doctest::Approx(1e4));
    }

    TEST_CASE("analytic verification of the dual-limit scenario") {
        RunConfig cfg;
        cfg.mode = RunConfig::Mode::analytic;
        cfg.scenario_ids = {"S1"};
        const RunResult r = run_verify(cfg);
        CHECK(r.mismatches.empty());
        CHECK(r.measures.count("S1.cev_xy") == 1);
        CHECK(r.measures.count("S1.cev_xy_alt") == 1);
        CHECK(r.verdicts.size() == 2);
        // Two genuinely different limits for the two normalizations.
        double lim[2] = {0, 0};
        for (const auto& v : r.verdicts) lim[v.tag == "cev_xy_alt"] = v.verdict.limit;
        CHECK(lim[0] == doctest::Approx(0.5));
        CHECK(lim[1] == doctest::Approx(0.75));
    }

    TEST_CASE("csv output is byte-identical across runs and worker counts") {
        RunConfig cfg;
        cfg.scenario_ids = {"S1", "S9"};
        cfg.n = 100'000;
        cfg.threads = 1;
        const std::string a = results_csv(run_verify(cfg).rows);
        const std::string b = results_csv(run_verify(cfg).rows);
        CHECK(a == b);
        cfg.threads = 8;
        const std::string c = results_csv(run_verify(cfg).rows);
        CHECK(a == c);
        CHECK(a.rfind("schema_version=1\n", 0) == 0);
        CHECK(a.find("scenario,model_tag,mode,functional,t,x,y,value,std_error,raw_count,n,"
                     "expected,ok,flags") != std::string::npos);
    }

    TEST_CASE("verdict serialization") {
        RunConfig cfg;
        cfg.mode = RunConfig::Mode::analytic;
        cfg.scenario_ids = {"S6"};
        const RunResult r = run_verify(cfg);
        const auto j = verdicts_json(r);
        REQUIRE(j.contains("verdicts"));
        bool osc = false;
        for (const auto& v : j["verdicts"]) {
            if (v["model_tag"] == "mevt") {
                osc = true;
                CHECK(v["kind"] == "oscillates");
                CHECK(v["bounds"][0].get<double>() == doctest::Approx(1.0 / 6.0));
                CHECK(v["bounds"][1].get<double>() == doctest::Approx(0.5));
                CHECK(v["probes"].size() == 2);
            }
        }
        CHECK(osc);
    }

    TEST_CASE("standardize reports") {
        const auto j3 = standardize_report(scenario_by_id("S3"), 11, 50'000);
        CHECK(j3["case"] == "case_ii_left");
        CHECK(j3["ok"] == true);
        CHECK(j3["pushforward_max_defect"].get<double>() <= 1e-9);
        const auto j2 = standardize_report(scenario_by_id("S2"), 11, 1000);
        CHECK(j2["case"] == "impossible");
        CHECK(j2["ok"] == true);
        const auto j4 = standardize_report(scenario_by_id("S4"), 11, 1000);
        CHECK(j4["case"] == "impossible");
        CHECK(j4["direct_standardized_model"] == "standardized");
        const auto j5 = standardize_report(scenario_by_id("S5"), 11, 1000);
        CHECK(j5["available"] == false);
    }

    TEST_CASE("plot data emission") {
        RunConfig cfg;
        cfg.mode = RunConfig::Mode::analytic;
        cfg.scenario_ids = {"S7"};
        cfg.emit_plot_data = true;
        const RunResult r = run_verify(cfg);
        REQUIRE(r.plot_data.count("S7.mevt") == 1);
        const std::string& body = r.plot_data.at("S7.mevt");
        CHECK(body.rfind("t,value,band\n", 0) == 0);
        CHECK(std::count(body.begin(), body.end(), '\n') >= 13);
    }

    TEST_CASE("on-atom estimates are flagged, not gated") {
        RunConfig cfg;
        cfg.mode = RunConfig::Mode::montecarlo;
        cfg.scenario_ids = {"S1"};
        cfg.model_tags = {"cev_xy"};
        cfg.n = 50'000;
        cfg.grid_points = {{1.0, 0.0}, {1.5, 0.0}};
        const RunResult r = run_verify(cfg);
        bool saw_atom = false;
        for (const auto& row : r.rows) {
            if (row.x == 1.0) {
                saw_atom = true;
                CHECK(row.flags.find("on_atom") != std::string::npos);
                CHECK(row.ok);
            }
            if (row.x == 1.5) CHECK(row.flags.find("on_atom") == std::string::npos);
        }
        CHECK(saw_atom);
    }

    TEST_CASE("cli behaviors" * doctest::skip(cli_path().empty())) {
        namespace fs = std::filesystem;
        const std::string cli = cli_path();
        REQUIRE_FALSE(cli.empty());
        const fs::path dir = fs::temp_directory_path() / "cevmlab_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
        auto run = [&](const std::string& args, const char* outfile) {
            const std::string cmd =
                cli + " " + args + " > " + (dir / outfile).string() + " 2>/dev/null";
            const int rc = std::system(cmd.c_str());
            return WEXITSTATUS(rc);
        };
        auto slurp = [&](const char* outfile) {
            std::ifstream in(dir / outfile);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        // list: 9 entries, filter yields 1, unknown id an empty list with exit 0.
        CHECK(run("list --json", "all.json") == 0);
        CHECK(nlohmann::json::parse(slurp("all.json")).size() == 9);
        CHECK(run("list --id S6 --json", "s6.json") == 0);
        const auto s6 = nlohmann::json::parse(slurp("s6.json"));
        REQUIRE(s6.size() == 1);
        bool probes = false;
        for (const auto& m : s6[0]["models"])
            if (!m["probes"].empty()) probes = true;
        CHECK(probes);
        CHECK(run("list --id NOPE --json", "none.json") == 0);
        CHECK(nlohmann::json::parse(slurp("none.json")).empty());
        // usage errors exit 1.
        CHECK(run("verify --scenario S1 --n 0", "err1.txt") == 1);
        CHECK(run("verify --scenario S99", "err2.txt") == 1);
        CHECK(run("estimate --scenario S1 --tag nope --t 10 --x 0 --y 0", "err3.txt") == 1);
        // a healthy verify exits 0 and writes the outputs.
        CHECK(run("verify --scenario S1 --mode analytic --out " + (dir / "out").string(),
                  "ok.txt") == 0);
        CHECK(fs::exists(dir / "out" / "results.csv"));
        CHECK(fs::exists(dir / "out" / "verdicts.json"));
        CHECK(fs::exists(dir / "out" / "measures" / "S1.cev_xy.json"));
    }

    TEST_CASE("full-scale oracle consistency sweep" * doctest::timeout(300)) {
        // Every scenario/model pair with an analytic measure: the Monte Carlo
        // estimate at the default coupling (t = 1e3 at n = 4e6) must sit
        // within 4 standard errors of the measure at each grid point.
        RunConfig cfg;
        cfg.mode = RunConfig::Mode::montecarlo;
        cfg.n = 4'000'000;
        const RunResult r = run_verify(cfg);
        for (const auto& msg : r.mismatches) MESSAGE(msg);
        CHECK(r.mismatches.empty());
        size_t gated = 0;
        for (const auto& row : r.rows) gated += std::isfinite(row.expected);
        CHECK(gated > 100);
    }

    TEST_CASE("model selection by tag") {
        RunConfig cfg;
        cfg.mode = RunConfig::Mode::analytic;
        cfg.scenario_ids = {"S8"};
        cfg.model_tags = {"hrv"};
        const RunResult r = run_verify(cfg);
        REQUIRE(r.verdicts.size() == 1);
        CHECK(r.verdicts[0].tag == "hrv");
        CHECK(r.verdicts[0].verdict.kind == VerdictKind::Oscillates);
        CHECK(r.verdicts[0].ok);
    }
}
