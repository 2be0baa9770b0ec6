#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cevmlab/margins.hpp"

using namespace cevmlab;

TEST_SUITE("margins") {
    TEST_CASE("support intervals by sign of gamma") {
        const EviSupport e0 = support_interval(0.0);
        CHECK(e0.q_lower == -kInf);
        CHECK(e0.q_upper == kInf);

        const EviSupport e1 = support_interval(1.0);
        CHECK(e1.q_lower == doctest::Approx(-1.0));
        CHECK(e1.q_upper == kInf);

        const EviSupport em = support_interval(-1.0);
        CHECK(em.q_lower == -kInf);
        CHECK(em.q_upper == doctest::Approx(1.0));

        CHECK(e1.q_lower < e1.q_upper);
        CHECK_THROWS_AS(support_interval(kInf), std::domain_error);
    }

    TEST_CASE("gev tail values and domain") {
        CHECK(gev_tail(1.0, 0.0) == 1.0);
        CHECK(gev_tail(0.0, 0.0) == 1.0);
        CHECK(gev_tail(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK_THROWS_AS(gev_tail(1.0, -1.5), std::domain_error);
        CHECK_THROWS_AS(gev_tail(-2.0, 0.6), std::domain_error);
    }

    TEST_CASE("gev tail is strictly decreasing with value 1 at 0") {
        for (double gamma : {-2.0, -1.0, -0.5, 0.0, 0.25, 1.0, 2.0}) {
            const EviSupport e = support_interval(gamma);
            CHECK(gev_tail(gamma, 0.0) == 1.0);
            const double lo = std::max(e.q_lower, -8.0) + 1e-3;
            const double hi = std::min(e.q_upper, 8.0) - 1e-3;
            double prev = kInf;
            for (int i = 0; i <= 200; ++i) {
                const double x = lo + (hi - lo) * i / 200.0;
                const double v = gev_tail(gamma, x);
                CHECK(v < prev);
                CHECK(v > 0.0);
                prev = v;
            }
        }
    }

    TEST_CASE("gamma -> 0 continuity of the tail") {
        for (int i = 0; i <= 60; ++i) {
            const double x = -3.0 + 6.0 * i / 60.0;
            CHECK(std::abs(gev_tail(1e-8, x) - std::exp(-x)) < 1e-6);
        }
    }

    TEST_CASE("marginal transform values") {
        CHECK(marginal_transform(0.0, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(marginal_transform(1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(marginal_transform(-1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK_THROWS_AS(marginal_transform(1.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(marginal_transform(1.0, -2.0), std::domain_error);
    }

    TEST_CASE("transform round trips to 1e-12") {
        for (double gamma : {-2.0, -1.0, -0.3, 0.0, 0.3, 1.0, 2.0}) {
            for (int i = 1; i <= 40; ++i) {
                const double x = 0.05 * i;  // (0, 2]
                const double u = marginal_transform(gamma, x);
                const double back = inverse_marginal_transform(gamma, u);
                CHECK(std::abs(back - x) <= 1e-12 * std::max(1.0, std::abs(x)));
            }
        }
    }

    TEST_CASE("pareto standardization") {
        CHECK(pareto_standardize(0.0) == 1.0);
        CHECK(pareto_standardize(0.5) == 2.0);
        CHECK(pareto_standardize(0.99) == doctest::Approx(100.0).epsilon(1e-12));
        CHECK(pareto_standardize(1.0) == kInf);
        CHECK_THROWS_AS(pareto_standardize(-0.1), std::domain_error);
        CHECK_THROWS_AS(pareto_standardize(1.1), std::domain_error);
    }
}
