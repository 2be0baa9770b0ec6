#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cevmlab/diagnostics.hpp"
#include "cevmlab/runner.hpp"
#include "cevmlab/scenarios.hpp"

using namespace cevmlab;

namespace {

TFunctional analytic_fn(const ModelSpec& m, double x, double y) {
    return [&m, x, y](double t) { return ScanPoint{t, m.prelimit(t, x, y), 0.0}; };
}

std::vector<ProbeFit> analytic_probes(const ModelSpec& m, int n_terms = 12) {
    std::vector<ProbeFit> fits;
    for (const auto& p : m.probes)
        fits.push_back(probe(analytic_fn(m, m.ref_x, m.ref_y), p, m.ref_x, m.ref_y, n_terms,
                             m.prelimit_t_min, m.scan_t_max));
    return fits;
}

std::vector<double> default_grid(const ModelSpec& m) {
    const double lo = std::max(100.0, m.prelimit_t_min);
    const double hi = std::min(1e232, m.scan_t_max);
    const double ratio = std::pow(hi / lo, 1.0 / 23.0);
    return geometric_grid(lo, ratio, 24);
}

}  // namespace

TEST_SUITE("diagnostics") {
    TEST_CASE("scan of a constant functional") {
        const auto grid = geometric_grid(10.0, 2.0, 12);
        const auto sc = scan([](double t) { return ScanPoint{t, 0.5, 0.0}; }, grid);
        for (const auto& p : sc) CHECK(p.value == 0.5);
        const auto v = classify(sc, {}, 0.02);
        CHECK(v.kind == VerdictKind::Converges);
        CHECK(v.limit == doctest::Approx(0.5));
        CHECK_THROWS_AS(scan([](double t) { return ScanPoint{t, 0.0, 0.0}; },
                             geometric_grid(10.0, 2.0, 5)),
                        std::invalid_argument);
    }

    TEST_CASE("four-branch joint pre-limit fills its oscillation band") {
        const ModelSpec& m = *scenario_by_id("S6").find("mevt");
        const auto sc = scan(analytic_fn(m, 0.0, 0.0), default_grid(m));
        double lo = kInf, hi = -kInf;
        for (const auto& p : sc) {
            CHECK(p.value >= 1.0 / 6.0 - 1e-6);
            CHECK(p.value <= 0.5 + 0.2);  // the vanishing second branch adds O(1/t)
            lo = std::min(lo, p.value);
            hi = std::max(hi, p.value);
        }
        CHECK(lo < 0.22);
        CHECK(hi > 0.45);
    }

    TEST_CASE("Gumbel-shift joint pre-limit fills its band") {
        const ModelSpec& m = *scenario_by_id("S7").find("mevt");
        const auto sc = scan(analytic_fn(m, 0.0, 0.0), default_grid(m));
        double lo = kInf, hi = -kInf;
        for (const auto& p : sc) {
            lo = std::min(lo, p.value);
            hi = std::max(hi, p.value);
        }
        CHECK(lo < 1.05 / (4.0 * std::exp(1.0)));
        CHECK(hi > 0.245);
    }

    TEST_CASE("probe fits of the declared subsequences") {
        {
            const ModelSpec& m = *scenario_by_id("S6").find("mevt");
            const auto fits = analytic_probes(m);
            REQUIRE(fits.size() == 2);
            CHECK(fits[0].stable);
            CHECK(fits[1].stable);
            CHECK(std::abs(fits[0].constant - 0.5) < 1e-6);
            CHECK(std::abs(fits[1].constant - 1.0 / 6.0) < 1e-6);
        }
        {
            const ModelSpec& m = *scenario_by_id("S7").find("mevt");
            const auto fits = analytic_probes(m);
            REQUIRE(fits.size() == 2);
            // Doubly exponential subsequences overflow past the second term.
            CHECK(fits[0].truncated);
            CHECK(fits[0].terms_used == 2);
            CHECK(fits[1].truncated);
            CHECK(fits[1].terms_used == 1);
            CHECK(std::abs(fits[0].constant - 0.25) < 1e-9);
            CHECK(std::abs(fits[1].constant - 1.0 / (4.0 * std::exp(1.0))) < 1e-9);
        }
        {
            const ModelSpec& m = *scenario_by_id("S5").find("cev_xy");
            const auto fits = analytic_probes(m);
            REQUIRE(fits.size() == 2);
            CHECK(std::abs(fits[0].constant - 1.0 / 3.0) < 1e-6);
            CHECK(std::abs(fits[1].constant - 2.0 / 9.0) < 1e-6);
        }
        {
            // A constant functional fits the same constant on every probe.
            const ModelSpec& m = *scenario_by_id("S6").find("mevt");
            auto constant = [](double t) { return ScanPoint{t, 0.125, 0.0}; };
            for (const auto& p : m.probes) {
                const auto fit = probe(constant, p, 0.0, 0.0, 8, 1.0);
                CHECK(fit.stable);
                CHECK(fit.constant == 0.125);
            }
        }
        CHECK_THROWS_AS(probe([](double t) { return ScanPoint{t, 0.0, 0.0}; },
                              scenario_by_id("S6").find("mevt")->probes[0], 0.0, 0.0, 2),
                        std::invalid_argument);
    }

    TEST_CASE("verdict matrix in analytic mode") {
        RunConfig cfg;
        cfg.mode = RunConfig::Mode::analytic;
        const RunResult r = run_verify(cfg);
        CHECK(r.mismatches.empty());
        auto verdict_of = [&](const char* sc, const char* tag) -> const VerdictRecord& {
            for (const auto& v : r.verdicts)
                if (v.scenario == sc && v.tag == tag) return v;
            FAIL("missing verdict ", sc, "/", tag);
            static VerdictRecord dummy;
            return dummy;
        };
        CHECK(verdict_of("S1", "cev_xy").verdict.kind == VerdictKind::Converges);
        CHECK(verdict_of("S1", "cev_xy_alt").verdict.kind == VerdictKind::Converges);
        CHECK(verdict_of("S1", "cev_xy").verdict.limit !=
              verdict_of("S1", "cev_xy_alt").verdict.limit);
        CHECK(verdict_of("S5", "mevt").verdict.kind == VerdictKind::Converges);
        CHECK(verdict_of("S5", "cev_xy").verdict.kind == VerdictKind::Oscillates);
        CHECK(verdict_of("S6", "cev_xy").verdict.kind == VerdictKind::Converges);
        CHECK(verdict_of("S6", "cev_yx").verdict.kind == VerdictKind::Converges);
        CHECK(verdict_of("S6", "mevt").verdict.kind == VerdictKind::Oscillates);
        CHECK(verdict_of("S6", "mevt").verdict.liminf == doctest::Approx(1.0 / 6.0));
        CHECK(verdict_of("S6", "mevt").verdict.limsup == doctest::Approx(0.5));
        CHECK(verdict_of("S7", "cev_xy").verdict.kind == VerdictKind::Converges);
        CHECK(verdict_of("S7", "mevt").verdict.kind == VerdictKind::Oscillates);
        CHECK(verdict_of("S8", "mevt").verdict.kind == VerdictKind::Converges);
        CHECK(verdict_of("S8", "hrv").verdict.kind == VerdictKind::Oscillates);
        CHECK(verdict_of("S8", "hrv_first").verdict.kind == VerdictKind::Degenerate);
        for (const char* tag : {"cev_cand_sqrt", "cev_cand_lin", "cev_cand_quad",
                                "cev_cand_gumbel", "cev_cand_affine"})
            CHECK(verdict_of("S4", tag).verdict.kind == VerdictKind::Degenerate);
        for (int i = 1; i <= 5; ++i)
            CHECK(verdict_of("S2", ("standardized_f" + std::to_string(i)).c_str())
                      .verdict.kind == VerdictKind::Degenerate);
    }

    TEST_CASE("Monte Carlo verdicts agree with analytic mode where declared") {
        RunConfig cfg;
        cfg.mode = RunConfig::Mode::montecarlo;
        cfg.n = 200'000;
        cfg.scenario_ids = {"S1", "S2", "S3", "S4", "S9"};
        const RunResult r = run_verify(cfg);
        for (const auto& v : r.verdicts)
            CHECK_MESSAGE(v.ok, v.scenario, "/", v.tag, ": ", to_string(v.verdict.kind));
    }

    TEST_CASE("classification is scale-equivariant") {
        const auto grid = geometric_grid(10.0, 2.0, 12);
        for (double k : {0.25, 1.0, 7.0}) {
            // Converging case.
            std::vector<ScanPoint> sc;
            for (double t : grid) sc.push_back({t, k * (1.0 + 1.0 / t), 0.0});
            const auto v = classify(sc, {}, k * 0.02);
            CHECK(v.kind == VerdictKind::Converges);
            CHECK(v.limit == doctest::Approx(k).epsilon(1e-2));

            // Oscillating case driven by two stable probes.
            std::vector<ScanPoint> osc;
            for (size_t i = 0; i < grid.size(); ++i)
                osc.push_back({grid[i], k * (i % 2 ? 1.0 : 2.0), 0.0});
            ProbeFit a{"a", k * 2.0, true, 3, false, {}};
            ProbeFit b{"b", k * 1.0, true, 3, false, {}};
            const auto w = classify(osc, {a, b}, k * 0.02);
            CHECK(w.kind == VerdictKind::Oscillates);
            CHECK(w.liminf == doctest::Approx(k * 1.0));
            CHECK(w.limsup == doctest::Approx(k * 2.0));
        }
    }

    TEST_CASE("ambiguous evidence stays indeterminate") {
        const auto grid = geometric_grid(10.0, 2.0, 12);
        std::vector<ScanPoint> osc;
        for (size_t i = 0; i < grid.size(); ++i)
            osc.push_back({grid[i], i % 2 ? 1.0 : 2.0, 0.0});
        CHECK(classify(osc, {}, 0.02).kind == VerdictKind::Indeterminate);
        ProbeFit unstable{"u", 1.0, false, 4, false, {}};
        ProbeFit other{"v", 2.0, true, 4, false, {}};
        CHECK(classify(osc, {unstable, other}, 0.02).kind == VerdictKind::Indeterminate);
    }
}
