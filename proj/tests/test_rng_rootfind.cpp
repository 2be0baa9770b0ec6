#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cevmlab/rng.hpp"
#include "cevmlab/rootfind.hpp"
#include "cevmlab/scenarios.hpp"

using namespace cevmlab;

TEST_SUITE("rng_rootfind") {
    TEST_CASE("counter rng is a pure function of its inputs") {
        const CounterRng a(42), b(42), c(43);
        CHECK(a.bits(7, 0) == b.bits(7, 0));
        CHECK(a.bits(7, 0) != c.bits(7, 0));
        CHECK(a.bits(7, 0) != a.bits(8, 0));
        CHECK(a.bits(7, 0) != a.bits(7, 1));
        for (uint64_t i = 0; i < 2000; ++i) {
            const double u = a.u01(i, 0);
            CHECK(u > 0.0);
            CHECK(u < 1.0);
        }
    }

    TEST_CASE("uniform draws have a sane mean") {
        const CounterRng rng(7);
        double sum = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) sum += rng.u01(uint64_t(i), 2);
        CHECK(std::abs(sum / n - 0.5) < 0.005);
    }

    TEST_CASE("bisection hits the stated tolerance") {
        auto cube = [](double x) { return x * x * x; };
        const double r = inverse_monotone(cube, 10.0, 0.0, 10.0);
        CHECK(std::abs(cube(r) - 10.0) <= 1e-12 * 10.0);

        auto dec = [](double x) { return 1.0 / x; };
        const double r2 = inverse_monotone(dec, 0.25, 1.0, 100.0);
        CHECK(r2 == doctest::Approx(4.0).epsilon(1e-10));

        CHECK_THROWS_AS(inverse_monotone(cube, 1e9, 0.0, 10.0), std::invalid_argument);
    }

    TEST_CASE("closed-form helpers invert at the printed anchor points") {
        // g(1) = 2, psi(e) = 1, g_{1/2}(1) = 1.
        CHECK(scenario_fn::g_osc_inv(2.0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(scenario_fn::psi_log_inv(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
        CHECK(scenario_fn::g_c_inv(0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(scenario_fn::g_c_inv(-0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    }

    TEST_CASE("inversions compose with the forward maps") {
        for (int i = 1; i <= 50; ++i) {
            const double v = 2.0 + i * 3.7;
            const double y = scenario_fn::g_osc_inv(v);
            CHECK(std::abs(scenario_fn::g_osc(y) - v) <= 1e-12 * std::max(1.0, v));
        }
        for (int i = 1; i <= 50; ++i) {
            const double u = i / 50.0;
            for (double c : {0.5, -0.5}) {
                const double w = scenario_fn::g_c_inv(c, u);
                CHECK(std::abs(scenario_fn::g_c(c, w) - u) <= 1e-12);
            }
        }
        for (int i = 0; i <= 40; ++i) {
            const double u = 0.9 / (1 << (i % 20)) + 1e-6;
            const double z = scenario_fn::pareto_mix_inv(u);
            CHECK(std::abs(scenario_fn::pareto_mix_surv(z) - u) <= 1e-12);
        }
    }

    TEST_CASE("expand_bracket reaches far targets") {
        auto f = [](double t) { return t * t; };
        auto [lo, hi] = expand_bracket(f, 1e9);
        CHECK(f(lo) <= 1e9);
        CHECK(f(hi) >= 1e9);
        auto g = [](double t) { return 1.0 / t; };
        auto [lo2, hi2] = expand_bracket(g, 1e-7);
        CHECK(g(hi2) <= 1e-7);
        CHECK(g(lo2) >= 1e-7);
    }
}
