#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cevmlab/diagnostics.hpp"
#include "cevmlab/scenarios.hpp"

namespace cevmlab {

struct RunConfig {
    std::vector<std::string> scenario_ids;  // empty = all
    std::vector<std::string> model_tags;    // empty = all
    uint64_t seed = 20250809;
    size_t n = 4'000'000;
    ScanSpec t_grid{100.0, 1e10, 24};
    std::vector<std::pair<double, double>> grid_points;  // empty = per-model grids
    std::string output_dir;
    enum class Mode { analytic, montecarlo, both } mode = Mode::both;
    int threads = 0;  // 0 = CEVMLAB_THREADS env or hardware
    bool emit_plot_data = false;
    double mc_t = 0.0;  // 0 = n-coupled default
    double threshold = 0.02;
    int probe_terms = 12;
};

// Throws std::invalid_argument; CLI maps that to exit code 1.
void validate(const RunConfig& cfg);

double default_mc_t(size_t n);
int resolve_threads(int requested);

struct ResultRow {
    std::string scenario, tag, mode, functional;
    double t = 0, x = 0, y = 0, value = 0, std_error = 0;
    long long raw_count = 0;
    size_t n = 0;
    double expected = kNaN;
    bool ok = true;
    std::string flags;
};

struct VerdictRecord {
    std::string scenario, tag, mode;
    double x = 0, y = 0;
    ConvergenceVerdict verdict;
    VerdictKind expected = VerdictKind::Indeterminate;
    bool ok = true;
};

struct RunResult {
    std::vector<ResultRow> rows;
    std::vector<VerdictRecord> verdicts;
    std::vector<std::string> mismatches;
    std::map<std::string, nlohmann::json> measures;          // id -> description
    std::map<std::string, std::string> plot_data;            // "scenario.tag" -> CSV body
};

RunResult run_verify(const RunConfig& cfg);

// Deterministic serializations (rows are sorted before formatting).
std::string results_csv(std::vector<ResultRow> rows);
nlohmann::json verdicts_json(const RunResult& r);

// Writes results.csv, verdicts.json, measures/*.json (and plot data when
// requested) under cfg.output_dir.
void write_outputs(const RunConfig& cfg, const RunResult& r);

nlohmann::json standardize_report(const Scenario& s, uint64_t seed, size_t n);

// Point evaluation helpers shared with tests.
TailEstimate eval_point_mc(const ModelSpec& m, std::span<const Sample> samples,
                           std::span<const Sample> cond_samples, double t, double x, double y);
double eval_point_measure(const ModelSpec& m, double x, double y);

}  // namespace cevmlab
