#include "cevmlab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cevmlab/estimators.hpp"
#include "cevmlab/measures.hpp"
#include "cevmlab/transforms.hpp"

namespace cevmlab {

namespace {

std::string fmt_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool selected(const std::vector<std::string>& filter, const std::string& v) {
    return filter.empty() || std::find(filter.begin(), filter.end(), v) != filter.end();
}

// Geometric grid with the configured length, clamped to the model's valid
// t range (pre-limit validity below, overflow guard above).
std::vector<double> model_scan_grid(const RunConfig& cfg, const ModelSpec& m) {
    const double lo = std::max(cfg.t_grid.start, m.prelimit_t_min);
    const double hi_cfg =
        cfg.t_grid.start * std::pow(cfg.t_grid.ratio, double(cfg.t_grid.count - 1));
    const double hi = std::min(hi_cfg, m.scan_t_max);
    if (!(hi > lo)) throw std::invalid_argument("model scan range is empty");
    const double ratio = std::pow(hi / lo, 1.0 / double(cfg.t_grid.count - 1));
    return geometric_grid(lo, std::max(ratio, 1.0 + 1e-9), cfg.t_grid.count);
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (const auto& f : flags) {
        if (!out.empty()) out += ';';
        out += f;
    }
    return out;
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.n == 0) throw std::invalid_argument("n must be positive");
    if (!(cfg.t_grid.ratio > 1.0)) throw std::invalid_argument("t grid ratio must exceed 1");
    if (cfg.t_grid.count < 12)
        throw std::invalid_argument("t grid needs at least 12 points for classification");
    if (!(cfg.t_grid.start > 0.0)) throw std::invalid_argument("t grid start must be positive");
    if (cfg.probe_terms < 3) throw std::invalid_argument("need at least 3 probe terms");
    for (const auto& id : cfg.scenario_ids) scenario_by_id(id);  // throws on unknown id
}

double default_mc_t(size_t n) { return std::min(std::sqrt(double(n)) / 2.0, 1e4); }

int resolve_threads(int requested) {
    if (const char* env = std::getenv("CEVMLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

TailEstimate eval_point_mc(const ModelSpec& m, std::span<const Sample> samples,
                           std::span<const Sample> cond_samples, double t, double x, double y) {
    switch (m.functional) {
        case FunctionalKind::CevRect:
            return cev_rect_estimate(samples, *m.quadruple, t, x, y);
        case FunctionalKind::MevtSurvival:
            return mevt_survival_estimate(samples, *m.quadruple, t, x, y);
        case FunctionalKind::JointQuadrant:
            return joint_quadrant_estimate(samples, *m.quadruple, t, x, y);
        case FunctionalKind::StdRect:
            return standardized_estimate(samples, m.f_std, t, x, y, Side::rect);
        case FunctionalKind::StdQuadrant:
            return standardized_estimate(samples, m.f_std, t, x, y, Side::quadrant);
        case FunctionalKind::Hrv:
            return hrv_estimate(m.conditional_branch ? cond_samples : samples, *m.hrv, t, x, y,
                                m.conditional_branch ? m.branch_weight : 1.0);
        case FunctionalKind::LocalizedRect:
            return localized_cev_estimate(samples, *m.quadruple, *m.neighborhood, t, x, y,
                                          Side::rect);
        case FunctionalKind::LocalizedQuadrant:
            return localized_cev_estimate(samples, *m.quadruple, *m.neighborhood, t, x, y,
                                          Side::quadrant);
    }
    throw std::logic_error("eval_point_mc: unhandled functional");
}

double eval_point_measure(const ModelSpec& m, double x, double y) {
    if (!m.analytic) return kNaN;
    const LimitMeasure& mu = *m.analytic;
    switch (m.functional) {
        case FunctionalKind::CevRect:
        case FunctionalKind::StdRect:
        case FunctionalKind::LocalizedRect:
            return rect_mass(mu, x, y);
        case FunctionalKind::MevtSurvival:
            return survival_complement(mu, x, y);
        case FunctionalKind::JointQuadrant:
        case FunctionalKind::StdQuadrant:
        case FunctionalKind::Hrv:
        case FunctionalKind::LocalizedQuadrant:
            return quadrant_mass(mu, x, y);
    }
    throw std::logic_error("eval_point_measure: unhandled functional");
}

namespace {

struct ModelOutput {
    std::vector<ResultRow> rows;
    std::vector<VerdictRecord> verdicts;
    std::vector<std::string> mismatches;
    std::string plot_key, plot_body;
};

void check_verdict(const ModelSpec& m, const std::string& scenario_id, const std::string& mode,
                   const ConvergenceVerdict& v, double value_tol, ModelOutput& out) {
    VerdictRecord rec;
    rec.scenario = scenario_id;
    rec.tag = m.tag;
    rec.mode = mode;
    rec.x = m.ref_x;
    rec.y = m.ref_y;
    rec.verdict = v;
    rec.expected = m.expected;
    rec.ok = v.kind == m.expected;
    if (rec.ok && v.kind == VerdictKind::Converges && std::isfinite(m.expected_limit))
        rec.ok = std::abs(v.limit - m.expected_limit) <= value_tol;
    if (rec.ok && v.kind == VerdictKind::Oscillates && std::isfinite(m.expected_lo))
        rec.ok = std::abs(v.liminf - m.expected_lo) <= value_tol &&
                 std::abs(v.limsup - m.expected_hi) <= value_tol;
    if (!rec.ok)
        out.mismatches.push_back(scenario_id + "/" + m.tag + " (" + mode + "): verdict " +
                                 to_string(v.kind) + ", expected " + to_string(m.expected));
    out.verdicts.push_back(std::move(rec));
}

ModelOutput run_model(const RunConfig& cfg, const Scenario& s, const ModelSpec& m,
                      std::span<const Sample> samples, std::span<const Sample> swapped,
                      std::span<const Sample> cond) {
    ModelOutput out;
    const bool do_analytic = cfg.mode != RunConfig::Mode::montecarlo && bool(m.prelimit);
    const bool do_mc = cfg.mode != RunConfig::Mode::analytic;
    const std::span<const Sample> own = m.swap_xy ? swapped : samples;
    const std::vector<double> atoms = m.analytic ? atom_positions(*m.analytic)
                                                 : std::vector<double>{};
    auto on_atom = [&atoms](double x) {
        for (double a : atoms)
            if (std::abs(x - a) < 0.5 * kAtomNudge) return true;
        return false;
    };

    if (do_analytic) {
        const auto grid = model_scan_grid(cfg, m);
        TFunctional fn = [&m](double t) {
            return ScanPoint{t, m.prelimit(t, m.ref_x, m.ref_y), 0.0};
        };
        const auto sc = scan(fn, grid);
        std::vector<ProbeFit> fits;
        for (const auto& p : m.probes)
            fits.push_back(probe(fn, p, m.ref_x, m.ref_y, cfg.probe_terms, m.prelimit_t_min,
                                 m.scan_t_max));
        check_verdict(m, s.id, "analytic", classify(sc, fits, cfg.threshold), 1e-6, out);

        if (cfg.emit_plot_data) {
            out.plot_key = s.id + "." + m.tag;
            std::string body = "t,value,band\n";
            for (const auto& pt : sc)
                body += fmt_num(pt.t) + "," + fmt_num(pt.value) + "," + fmt_num(pt.std_error) +
                        "\n";
            out.plot_body = std::move(body);
        }

        // Late pre-limit values against the analytic measure, and one row per
        // grid point for the report.
        if (m.analytic) {
            const double t_late = grid.back();
            const auto& pts = cfg.grid_points.empty() ? m.mc_grid : cfg.grid_points;
            for (const auto& [x, y] : pts) {
                ResultRow row;
                row.scenario = s.id;
                row.tag = m.tag;
                row.mode = "analytic";
                row.functional = to_string(m.functional);
                row.t = t_late;
                row.x = x;
                row.y = y;
                row.value = m.prelimit(t_late, x, y);
                row.expected = eval_point_measure(m, x, y);
                row.n = 0;
                row.ok = std::abs(row.value - row.expected) <= 1e-9;
                if (!row.ok)
                    out.mismatches.push_back(s.id + "/" + m.tag + ": analytic pre-limit at (" +
                                             fmt_num(x) + "," + fmt_num(y) +
                                             ") does not reach the measure value");
                out.rows.push_back(std::move(row));
            }
        }
    }

    if (do_mc) {
        const double t_mc = m.mc_t > 0.0   ? m.mc_t
                            : cfg.mc_t > 0.0 ? cfg.mc_t
                                             : default_mc_t(cfg.n);
        if (m.analytic) {
            const auto& pts = cfg.grid_points.empty() ? m.mc_grid : cfg.grid_points;
            for (const auto& [x, y] : pts) {
                const TailEstimate e = eval_point_mc(m, own, cond, t_mc, x, y);
                ResultRow row;
                row.scenario = s.id;
                row.tag = m.tag;
                row.mode = "montecarlo";
                row.functional = e.functional_tag;
                row.t = t_mc;
                row.x = x;
                row.y = y;
                row.value = e.value;
                row.std_error = e.std_error;
                row.raw_count = e.raw_count;
                row.n = e.n;
                row.expected = eval_point_measure(m, x, y);
                auto flags = e.flags;
                const bool atom_pt = on_atom(x);
                if (atom_pt) flags.push_back("on_atom");
                row.flags = join_flags(flags);
                // Points sitting exactly on a limit atom are outside the
                // continuity-set guarantee: evaluated and flagged, not gated.
                row.ok = atom_pt ||
                         std::abs(row.value - row.expected) <= 4.0 * e.std_error + 1e-12;
                if (!row.ok)
                    out.mismatches.push_back(s.id + "/" + m.tag + ": Monte Carlo value at (" +
                                             fmt_num(x) + "," + fmt_num(y) +
                                             ") further than 4 standard errors from the measure");
                out.rows.push_back(std::move(row));
            }
        }
        if (m.mc_verdict) {
            const ScanSpec spec = m.mc_scan ? *m.mc_scan : ScanSpec{8.0, 2.0, 12};
            auto grid = geometric_grid(spec.start, spec.ratio, spec.count);
            TFunctional fn = [&](double t) {
                const TailEstimate e = eval_point_mc(m, own, cond, t, m.ref_x, m.ref_y);
                return ScanPoint{t, e.value, e.std_error};
            };
            const auto sc = scan(fn, grid);
            std::vector<ProbeFit> fits;
            for (const auto& p : m.probes)
                fits.push_back(probe(fn, p, m.ref_x, m.ref_y, cfg.probe_terms, 1.0, m.mc_t_max));
            double max_se = 0.0;
            for (size_t i = sc.size() - 5; i < sc.size(); ++i)
                max_se = std::max(max_se, sc[i].std_error);
            for (const auto& f : fits)
                for (const auto& tr : f.trace) max_se = std::max(max_se, tr.std_error);
            check_verdict(m, s.id, "montecarlo", classify(sc, fits, cfg.threshold),
                          0.02 + 4.0 * max_se, out);
        }
    }
    return out;
}

}  // namespace

RunResult run_verify(const RunConfig& cfg) {
    validate(cfg);
    RunResult result;
    const int n_threads = resolve_threads(cfg.threads);

    for (const Scenario& s : builtin_scenarios()) {
        if (!selected(cfg.scenario_ids, s.id)) continue;

        std::vector<const ModelSpec*> models;
        for (const auto& m : s.models)
            if (selected(cfg.model_tags, m.tag)) models.push_back(&m);
        if (models.empty()) continue;

        const bool need_mc = cfg.mode != RunConfig::Mode::analytic;
        std::vector<Sample> samples, swapped, cond;
        if (need_mc) {
            samples = sample(s, cfg.seed, cfg.n);
            bool need_swap = false, need_cond = false;
            for (const auto* m : models) {
                need_swap = need_swap || m->swap_xy;
                need_cond = need_cond || m->conditional_branch;
            }
            if (need_swap) {
                swapped.reserve(samples.size());
                for (const auto& p : samples) swapped.push_back({p.y, p.x});
            }
            if (need_cond) cond = sample_conditional(s, cfg.seed, cfg.n);
        }

        std::vector<ModelOutput> outputs(models.size());
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= models.size()) return;
                outputs[i] = run_model(cfg, s, *models[i], samples, swapped, cond);
            }
        };
        if (n_threads <= 1 || models.size() <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            const size_t k = std::min(models.size(), size_t(n_threads));
            pool.reserve(k);
            for (size_t i = 0; i < k; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        for (auto& o : outputs) {
            result.rows.insert(result.rows.end(), o.rows.begin(), o.rows.end());
            result.verdicts.insert(result.verdicts.end(), o.verdicts.begin(), o.verdicts.end());
            result.mismatches.insert(result.mismatches.end(), o.mismatches.begin(),
                                     o.mismatches.end());
            if (!o.plot_key.empty()) result.plot_data[o.plot_key] = o.plot_body;
        }
        for (const auto* m : models)
            if (m->analytic) result.measures[m->analytic->id] = measure_to_json(*m->analytic);
    }

    std::sort(result.mismatches.begin(), result.mismatches.end());
    return result;
}

std::string results_csv(std::vector<ResultRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.scenario, a.tag, a.mode, a.t, a.x, a.y, a.functional) <
               std::tie(b.scenario, b.tag, b.mode, b.t, b.x, b.y, b.functional);
    });
    std::string out = "schema_version=1\n";
    out +=
        "scenario,model_tag,mode,functional,t,x,y,value,std_error,raw_count,n,expected,ok,flags\n";
    for (const auto& r : rows) {
        out += r.scenario + "," + r.tag + "," + r.mode + "," + r.functional + "," + fmt_num(r.t) +
               "," + fmt_num(r.x) + "," + fmt_num(r.y) + "," + fmt_num(r.value) + "," +
               fmt_num(r.std_error) + "," + std::to_string(r.raw_count) + "," +
               std::to_string(r.n) + "," + fmt_num(r.expected) + "," + (r.ok ? "1" : "0") + "," +
               r.flags + "\n";
    }
    return out;
}

nlohmann::json verdicts_json(const RunResult& r) {
    auto recs = r.verdicts;
    std::sort(recs.begin(), recs.end(), [](const VerdictRecord& a, const VerdictRecord& b) {
        return std::tie(a.scenario, a.tag, a.mode) < std::tie(b.scenario, b.tag, b.mode);
    });
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : recs) {
        nlohmann::json j;
        j["scenario"] = v.scenario;
        j["model_tag"] = v.tag;
        j["mode"] = v.mode;
        j["point"] = {v.x, v.y};
        j["kind"] = to_string(v.verdict.kind);
        if (v.verdict.kind == VerdictKind::Converges) j["limit"] = v.verdict.limit;
        if (v.verdict.kind == VerdictKind::Oscillates)
            j["bounds"] = {v.verdict.liminf, v.verdict.limsup};
        nlohmann::json probes = nlohmann::json::object();
        for (const auto& [label, value] : v.verdict.probe_values) probes[label] = value;
        j["probes"] = probes;
        j["truncations"] = v.verdict.notes;
        j["expected"] = to_string(v.expected);
        j["ok"] = v.ok;
        arr.push_back(std::move(j));
    }
    nlohmann::json out;
    out["verdicts"] = arr;
    out["mismatches"] = r.mismatches;
    return out;
}

void write_outputs(const RunConfig& cfg, const RunResult& r) {
    namespace fs = std::filesystem;
    const fs::path dir = cfg.output_dir.empty() ? fs::path(".") : fs::path(cfg.output_dir);
    fs::create_directories(dir / "measures");
    std::ofstream(dir / "results.csv") << results_csv(r.rows);
    std::ofstream(dir / "verdicts.json") << verdicts_json(r).dump(2) << "\n";
    for (const auto& [id, j] : r.measures)
        std::ofstream(dir / "measures" / (id + ".json")) << j.dump(2) << "\n";
    if (cfg.emit_plot_data) {
        fs::create_directories(dir / "plots");
        for (const auto& [key, body] : r.plot_data)
            std::ofstream(dir / "plots" / (key + ".csv")) << body;
    }
}

nlohmann::json standardize_report(const Scenario& s, uint64_t seed, size_t n) {
    nlohmann::json j;
    j["scenario"] = s.id;
    if (!s.standardize) {
        j["available"] = false;
        return j;
    }
    j["available"] = true;
    const auto& sc = *s.standardize;
    const ModelSpec* src = s.find(sc.quad_tag);
    if (!src || !src->quadruple)
        throw std::invalid_argument("standardize: model " + sc.quad_tag + " not found");
    const StandardizationPlan plan =
        plan_standardization(*src->quadruple, sc.x_range, src->analytic.get());
    j["case"] = to_string(plan.kind);
    j["expected_case"] = to_string(sc.expected);
    j["ok"] = plan.kind == sc.expected;
    if (plan.kind == StdCase::impossible) {
        j["reason"] = plan.reason;
    } else {
        j["rho"] = plan.rho;
        if (plan.beta0) j["beta0"] = *plan.beta0;
    }
    // A scenario may carry a direct standardized model even when the linear
    // normalization route is impossible (the f = log construction).
    if (const ModelSpec* direct = s.find("standardized"))
        j["direct_standardized_model"] = direct->tag;

    if (plan.kind != StdCase::impossible && !sc.pushforward_target_tag.empty()) {
        const ModelSpec* target = s.find(sc.pushforward_target_tag);
        const LimitMeasure pushed = pushforward_standardized(*src->analytic, plan);
        j["pushforward"] = measure_to_json(pushed);
        double defect = 0.0;
        for (double x : {0.3, 0.5, 1.0, 2.0}) {
            for (double y : {0.5, 1.0, 2.0}) {
                defect = std::max(defect, std::abs(rect_mass(pushed, x, y) -
                                                   rect_mass(*target->analytic, x, y)));
            }
        }
        j["pushforward_max_defect"] = defect;
        j["ok"] = j["ok"].get<bool>() && defect <= 1e-9;

        // Monte Carlo cross-check of the pushforward at one interior point.
        if (target->functional == FunctionalKind::StdRect && target->f_std) {
            const auto samples = sample(s, seed, n);
            const double t = default_mc_t(n);
            const TailEstimate e =
                standardized_estimate(samples, target->f_std, t, 2.0, 1.0, Side::rect);
            j["mc_cross_check"] = {{"t", t},
                                   {"x", 2.0},
                                   {"y", 1.0},
                                   {"value", e.value},
                                   {"std_error", e.std_error},
                                   {"measure", rect_mass(pushed, 2.0, 1.0)}};
        }
    }
    return j;
}

}  // namespace cevmlab
