#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "psifrac/error.hpp"
#include "psifrac/special_functions.hpp"

using namespace psifrac;

TEST_SUITE("special_functions") {
    TEST_CASE("gamma matches an independent Lanczos evaluation") {
        for (double x = 0.05; x < 170.0; x *= 1.17) {
            const double ref = static_cast<double>(oracle::gamma_lanczos(x));
            CHECK(std::abs(gamma_fn(x) - ref) <= 1e-13 * ref);
        }
        CHECK(gamma_fn(1.0) == 1.0);
        CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-15));
        CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
    }

    TEST_CASE("gamma rejects its poles and overflow") {
        CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
        CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
        CHECK_THROWS_AS(gamma_fn(171.0), OverflowError);
    }

    TEST_CASE("E_1 is the exponential") {
        for (int i = 0; i < 50; ++i) {
            const double z = 30.0 * i / 49.0;
            CHECK(std::abs(mittag_leffler(1.0, z) - std::exp(z)) <= 1e-10 * std::exp(z));
        }
    }

    TEST_CASE("E_alpha(0) is exactly one") {
        for (int i = 1; i <= 20; ++i) CHECK(mittag_leffler(i / 20.0, 0.0) == 1.0);
    }

    TEST_CASE("E_1/2 has the erfc closed form") {
        for (double z = 0.0; z <= 5.0; z += 0.25) {
            const double ref = std::exp(z * z) * (1.0 + std::erf(z));
            CHECK(std::abs(mittag_leffler(0.5, z) - ref) <= 1e-12 * ref);
        }
    }

    TEST_CASE("E_alpha agrees with an extended-precision series") {
        for (double a : {0.3, 0.55, 0.7, 0.9, 1.0})
            // stay inside double range: E_a(z) ~ exp(z^(1/a)) / a
            for (double z = 0.0; z <= std::min(12.0, 0.95 * std::pow(700.0, a)); z += 0.25) {
                const double ref = static_cast<double>(oracle::ml_series(a, z));
                CHECK(std::abs(mittag_leffler(a, z) - ref) <= 1e-11 * ref);
            }
    }

    TEST_CASE("E_alpha is increasing in z") {
        for (double a : {0.4, 0.8}) {
            double prev = 0.0;
            for (double z = 0.0; z < std::min(20.0, std::pow(700.0, a)); z += 0.5) {
                const double v = mittag_leffler(a, z);
                CHECK(v > prev);
                prev = v;
            }
        }
    }

    TEST_CASE("asymptotic branch takes over past the switch threshold") {
        MLParams p;
        p.alpha = 0.8;
        p.max_terms = 60;
        const double zs = ml_switch_threshold(p);
        CHECK(zs > 0.0);
        CHECK(ml_series_terms(p, zs * 0.999) <= p.max_terms / 2);
        CHECK(ml_series_terms(p, zs * 1.001) > p.max_terms / 2);
        const double z = 2.0 * zs;
        const double asym = std::exp(std::pow(z, 1.0 / p.alpha)) / p.alpha;
        CHECK(mittag_leffler(p, z) == doctest::Approx(asym).epsilon(1e-15));
        // What the leading term neglects is the algebraic tail, -1/(z Gamma(1 - alpha)) to first order.
        const double ref = static_cast<double>(oracle::ml_series(p.alpha, z));
        const double tail = -1.0 / (z * static_cast<double>(oracle::gamma_lanczos(1.0 - p.alpha)));
        CHECK(std::abs((ref - asym) - tail) <= 0.25 * std::abs(tail));
    }

    TEST_CASE("Mittag-Leffler domain and overflow errors") {
        CHECK_THROWS_AS(mittag_leffler(0.5, -1.0), DomainError);
        CHECK_THROWS_AS(mittag_leffler(1.0, 1e4), OverflowError);
        MLParams bad;
        bad.alpha = 0.0;
        CHECK_THROWS_AS(bad.validate(), DomainError);
        bad.alpha = 1.5;
        CHECK_THROWS_AS(bad.validate(), DomainError);
        MLParams tol;
        tol.rel_tol = 0.0;
        CHECK_THROWS_AS(tol.validate(), DomainError);
    }
}
