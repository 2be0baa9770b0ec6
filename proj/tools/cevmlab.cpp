#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cevmlab/runner.hpp"
#include "cevmlab/transforms.hpp"

namespace {

using namespace cevmlab;

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("scenario_ids")) cfg.scenario_ids = j["scenario_ids"].get<std::vector<std::string>>();
    if (j.contains("model_tags")) cfg.model_tags = j["model_tags"].get<std::vector<std::string>>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("n")) cfg.n = j["n"].get<size_t>();
    if (j.contains("t_grid")) {
        const auto& g = j["t_grid"];
        if (g.contains("start")) cfg.t_grid.start = g["start"].get<double>();
        if (g.contains("ratio")) cfg.t_grid.ratio = g["ratio"].get<double>();
        if (g.contains("count")) cfg.t_grid.count = g["count"].get<int>();
    }
    if (j.contains("grid_points"))
        for (const auto& p : j["grid_points"])
            cfg.grid_points.emplace_back(p[0].get<double>(), p[1].get<double>());
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("mode")) {
        const std::string m = j["mode"].get<std::string>();
        if (m == "analytic") cfg.mode = RunConfig::Mode::analytic;
        else if (m == "montecarlo") cfg.mode = RunConfig::Mode::montecarlo;
        else if (m == "both") cfg.mode = RunConfig::Mode::both;
        else throw std::invalid_argument("unknown mode: " + m);
    }
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("mc_t")) cfg.mc_t = j["mc_t"].get<double>();
    if (j.contains("threshold")) cfg.threshold = j["threshold"].get<double>();
    return cfg;
}

int cmd_list(const std::string& filter, bool as_json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : builtin_scenarios()) {
        if (!filter.empty() && s.id != filter) continue;
        arr.push_back(scenario_to_json(s));
    }
    if (as_json) {
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& j : arr)
            std::cout << j["id"].get<std::string>() << "  " << j["title"].get<std::string>()
                      << "  (" << j["models"].size() << " models)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cevmlab: verification lab for conditional extreme value models"};
    app.require_subcommand(1);

    // ---- list ----
    auto* list_cmd = app.add_subcommand("list", "list built-in scenarios");
    std::string list_filter;
    bool list_json = false;
    list_cmd->add_option("--id", list_filter, "only this scenario id");
    list_cmd->add_flag("--json", list_json, "machine-readable output");

    // ---- shared verify/estimate/scan options ----
    std::string config_path, out_dir, mode_str = "", scenario_id, tag;
    std::vector<std::string> scenario_ids, tags;
    uint64_t seed = 0;
    long long n_opt = -1;
    double t_opt = 0, x_opt = 0, y_opt = 0, mc_t = 0;
    double t_start = 0, t_ratio = 0;
    int t_count = 0, threads = 0;
    bool emit_plots = false, as_json = false;

    auto* verify_cmd = app.add_subcommand("verify", "run the verification sweep");
    verify_cmd->add_option("--config", config_path, "JSON config file");
    verify_cmd->add_option("--scenario", scenario_ids, "scenario ids (default: all)");
    verify_cmd->add_option("--tag", tags, "model tags (default: all)");
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_option("--n", n_opt, "samples per scenario");
    verify_cmd->add_option("--mode", mode_str, "analytic | montecarlo | both");
    verify_cmd->add_option("--out", out_dir, "output directory");
    verify_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
    verify_cmd->add_option("--mc-t", mc_t, "Monte Carlo threshold scale t");
    verify_cmd->add_option("--t-start", t_start, "analytic scan grid start");
    verify_cmd->add_option("--t-ratio", t_ratio, "analytic scan grid ratio");
    verify_cmd->add_option("--t-count", t_count, "analytic scan grid length");
    verify_cmd->add_flag("--emit-plot-data", emit_plots, "write per-functional scan CSVs");
    verify_cmd->add_flag("--json", as_json, "print verdicts JSON to stdout");

    auto* est_cmd = app.add_subcommand("estimate", "one Monte Carlo estimate");
    est_cmd->add_option("--scenario", scenario_id)->required();
    est_cmd->add_option("--tag", tag)->required();
    est_cmd->add_option("--t", t_opt)->required();
    est_cmd->add_option("--x", x_opt)->required();
    est_cmd->add_option("--y", y_opt)->required();
    est_cmd->add_option("--n", n_opt, "sample size (default 4e6)");
    est_cmd->add_option("--seed", seed, "random seed");

    auto* std_cmd = app.add_subcommand("standardize", "standardization plan and pushforward");
    std_cmd->add_option("--scenario", scenario_id)->required();
    std_cmd->add_option("--n", n_opt, "Monte Carlo cross-check sample size");
    std_cmd->add_option("--seed", seed, "random seed");

    auto* scan_cmd = app.add_subcommand("scan", "scan one functional along a t grid");
    scan_cmd->add_option("--scenario", scenario_id)->required();
    scan_cmd->add_option("--tag", tag)->required();
    scan_cmd->add_option("--x", x_opt);
    scan_cmd->add_option("--y", y_opt);
    scan_cmd->add_option("--t-start", t_start);
    scan_cmd->add_option("--t-ratio", t_ratio);
    scan_cmd->add_option("--t-count", t_count);

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) return cmd_list(list_filter, list_json);

        if (verify_cmd->parsed()) {
            RunConfig cfg = load_config(config_path);
            if (!scenario_ids.empty()) cfg.scenario_ids = scenario_ids;
            if (!tags.empty()) cfg.model_tags = tags;
            if (verify_cmd->count("--seed")) cfg.seed = seed;
            if (n_opt >= 0) cfg.n = size_t(n_opt);
            if (!mode_str.empty()) {
                if (mode_str == "analytic") cfg.mode = RunConfig::Mode::analytic;
                else if (mode_str == "montecarlo") cfg.mode = RunConfig::Mode::montecarlo;
                else if (mode_str == "both") cfg.mode = RunConfig::Mode::both;
                else throw std::invalid_argument("unknown mode: " + mode_str);
            }
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            if (threads > 0) cfg.threads = threads;
            if (mc_t > 0) cfg.mc_t = mc_t;
            if (t_start > 0) cfg.t_grid.start = t_start;
            if (t_ratio > 0) cfg.t_grid.ratio = t_ratio;
            if (t_count > 0) cfg.t_grid.count = t_count;
            cfg.emit_plot_data = emit_plots;

            validate(cfg);
            const RunResult r = run_verify(cfg);
            if (!cfg.output_dir.empty()) write_outputs(cfg, r);
            if (as_json) std::cout << verdicts_json(r).dump(2) << "\n";
            for (const auto& msg : r.mismatches) std::cerr << "MISMATCH: " << msg << "\n";
            if (!as_json)
                std::cerr << r.rows.size() << " rows, " << r.verdicts.size() << " verdicts, "
                          << r.mismatches.size() << " mismatches\n";
            return r.mismatches.empty() ? 0 : 2;
        }

        if (est_cmd->parsed()) {
            const Scenario& s = scenario_by_id(scenario_id);
            const ModelSpec* m = s.find(tag);
            if (!m) throw std::invalid_argument("unknown model tag: " + tag);
            const size_t n = n_opt >= 0 ? size_t(n_opt) : 4'000'000;
            if (n == 0) throw std::invalid_argument("n must be positive");
            const uint64_t sd = est_cmd->count("--seed") ? seed : 20250809;
            std::vector<Sample> samples =
                m->swap_xy ? std::vector<Sample>() : sample(s, sd, n);
            if (m->swap_xy) {
                auto raw = sample(s, sd, n);
                samples.reserve(raw.size());
                for (const auto& p : raw) samples.push_back({p.y, p.x});
            }
            std::vector<Sample> cond;
            if (m->conditional_branch) cond = sample_conditional(s, sd, n);
            const TailEstimate e = eval_point_mc(*m, samples, cond, t_opt, x_opt, y_opt);
            nlohmann::json j;
            j["scenario"] = s.id;
            j["model_tag"] = m->tag;
            j["functional"] = e.functional_tag;
            j["t"] = e.t;
            j["x"] = x_opt;
            j["y"] = y_opt;
            j["value"] = e.value;
            j["std_error"] = e.std_error;
            j["raw_count"] = e.raw_count;
            j["n"] = e.n;
            j["flags"] = e.flags;
            if (m->analytic) j["measure_value"] = eval_point_measure(*m, x_opt, y_opt);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (std_cmd->parsed()) {
            const Scenario& s = scenario_by_id(scenario_id);
            const size_t n = n_opt >= 0 ? size_t(n_opt) : 1'000'000;
            const uint64_t sd = std_cmd->count("--seed") ? seed : 20250809;
            const nlohmann::json j = standardize_report(s, sd, n);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (scan_cmd->parsed()) {
            const Scenario& s = scenario_by_id(scenario_id);
            const ModelSpec* m = s.find(tag);
            if (!m) throw std::invalid_argument("unknown model tag: " + tag);
            if (!m->prelimit)
                throw std::invalid_argument("model has no analytic pre-limit to scan");
            RunConfig cfg;
            if (t_start > 0) cfg.t_grid.start = t_start;
            if (t_ratio > 0) cfg.t_grid.ratio = t_ratio;
            if (t_count > 0) cfg.t_grid.count = t_count;
            auto grid = geometric_grid(cfg.t_grid.start, cfg.t_grid.ratio, cfg.t_grid.count);
            std::erase_if(grid, [&](double t) {
                return t < m->prelimit_t_min || t > m->scan_t_max;
            });
            const double x = scan_cmd->count("--x") ? x_opt : m->ref_x;
            const double y = scan_cmd->count("--y") ? y_opt : m->ref_y;
            std::cout << "t,value,band\n";
            for (double t : grid) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%.12g,%.12g,0\n", t, m->prelimit(t, x, y));
                std::cout << buf;
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
