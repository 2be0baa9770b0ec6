#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cevmlab/diagnostics.hpp"
#include "cevmlab/estimators.hpp"
#include "cevmlab/measures.hpp"
#include "cevmlab/norming.hpp"
#include "cevmlab/rng.hpp"

namespace cevmlab {

enum class FunctionalKind {
    CevRect,
    MevtSurvival,
    JointQuadrant,
    StdRect,
    StdQuadrant,
    Hrv,
    LocalizedRect,
    LocalizedQuadrant,
};

std::string to_string(FunctionalKind k);

// Which standardization case a normalizing pair falls into.
enum class StdCase { case_i, case_ii_left, case_ii_right, impossible };

std::string to_string(StdCase c);

struct ScanSpec {
    double start;
    double ratio;
    int count;
};

// One registered limit model of a scenario: the functional, its normalizing
// quadruple, the analytic limit measure when one exists, an exact pre-limit
// closed form for analytic scans, probes, and the expected verdict at the
// reference point.
struct ModelSpec {
    std::string tag;
    FunctionalKind functional = FunctionalKind::CevRect;
    bool swap_xy = false;  // evaluate on (Y, X) instead of (X, Y)
    std::optional<NormalizingQuadruple> quadruple;
    std::shared_ptr<const LimitMeasure> analytic;
    std::function<double(double, double, double)> prelimit;  // (t, x, y)
    double prelimit_t_min = 1.0;
    double scan_t_max = kInf;  // cap for analytic scans (overflow guard)
    std::optional<HrvSpec> hrv;
    std::function<double(double)> f_std;
    std::optional<Interval> neighborhood;
    bool conditional_branch = false;
    double branch_weight = 1.0;
    std::vector<ProbeSpec> probes;
    VerdictKind expected = VerdictKind::Converges;
    double ref_x = 0.0, ref_y = 0.0;
    double expected_limit = kNaN;
    double expected_lo = kNaN, expected_hi = kNaN;
    // Grid for Monte Carlo vs measure comparisons; x values are pre-nudged
    // off limit atoms, toward the side the finite-t mass sits on.
    std::vector<std::pair<double, double>> mc_grid;
    bool mc_verdict = false;  // also classify from Monte Carlo scans
    std::optional<ScanSpec> mc_scan;
    double mc_t_max = kInf;  // cap for Monte Carlo probe terms
    double mc_t = 0.0;       // per-model Monte Carlo t (0 = config/default)
};

struct EquivalenceCase {
    std::string label;
    NormalizingQuadruple q1, q2;
    EquivalenceVerdict expected;
};

struct StandardizeCase {
    std::string quad_tag;  // model supplying quadruple and mu*
    Interval x_range;
    std::string pushforward_target_tag;  // model whose measure the pushforward must match
    StdCase expected;
};

struct Scenario {
    std::string id;
    std::string title;
    uint32_t draws_per_sample = 2;
    std::function<Sample(const CounterRng&, uint64_t)> draw;
    std::function<Sample(const CounterRng&, uint64_t)> draw_conditional;
    std::string conditional_note;
    // Canonical Y-margin normalization (c, d, gamma_y) for sanity checks.
    NormalizingQuadruple margin;
    std::vector<double> margin_y_checks;
    std::vector<ModelSpec> models;
    std::vector<EquivalenceCase> equivalence_cases;
    std::optional<StandardizeCase> standardize;

    const ModelSpec* find(std::string_view tag) const;
};

const std::vector<Scenario>& builtin_scenarios();
const Scenario& scenario_by_id(std::string_view id);  // throws std::invalid_argument

std::vector<Sample> sample(const Scenario& s, uint64_t seed, size_t n);
std::vector<Sample> sample_conditional(const Scenario& s, uint64_t seed, size_t n);

nlohmann::json scenario_to_json(const Scenario& s);

// Closed-form building blocks of the constructions, exposed for tests.
namespace scenario_fn {

double g_osc(double y);                   // y (2 + sin log y), extended by 2 below 1
double g_osc_inv(double v);               // inverse on [2, inf)
double g_c(double c, double u);           // u (1 + c sin log u) on (0, 1]
double g_c_inv(double c, double v);       // inverse on (0, 1]
double psi_log(double x);                 // log x + sin log log x, x >= e
double psi_log_inv(double v);             // inverse on [1, inf)
double z_surv(double x);                  // 4/(3 psi_log_inv(x)) - e^{-x}/3 past x0, else 1
double z_surv_inv(double u);              // inverse of the decreasing branch
double pareto_mix_surv(double x);         // x^{-2}(2 + sin log x)/2 for x >= 1
double pareto_mix_inv(double u);          // inverse survival on (0, 1]
inline constexpr double kZCutoff = 21.0;  // x0 of the survival construction

}  // namespace scenario_fn

}  // namespace cevmlab
