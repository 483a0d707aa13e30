#include <doctest.h>

#include <cmath>

#include "psifrac/error.hpp"
#include "psifrac/psi_kernel.hpp"

using namespace psifrac;

TEST_SUITE("psi_kernel") {
    TEST_CASE("builtin kernels evaluate their closed forms") {
        const PsiKernel id = make_builtin("identity");
        const PsiKernel p2 = make_builtin("power:2");
        const PsiKernel ls = make_builtin("log_shift");
        const PsiKernel be = make_builtin("bounded_exp");
        for (double t : {0.0, 0.3, 1.0, 2.5}) {
            CHECK(id.eval(t) == t);
            CHECK(p2.eval(t) == doctest::Approx(t * t));
            CHECK(p2.deriv(t) == doctest::Approx(2 * t));
            CHECK(ls.eval(t) == doctest::Approx(std::log(1 + t)));
            CHECK(ls.deriv(t) == doctest::Approx(1 / (1 + t)));
            CHECK(be.eval(t) == doctest::Approx(1 - std::exp(-t)));
            CHECK(be.deriv(t) == doctest::Approx(std::exp(-t)));
        }
        CHECK(id.name() == "identity");
        CHECK(id.t_lo() == 0.0);
        CHECK(id.t_hi() == 50.0);
    }

    TEST_CASE("builtins pass the probe, including saturating and singular ones") {
        for (const char* s : {"identity", "power:2", "power:0.5", "log_shift", "bounded_exp"})
            CHECK(validate(make_builtin(s)).ok());
    }

    TEST_CASE("shifted values avoid cancellation") {
        const PsiKernel be = make_builtin("bounded_exp");
        CHECK(be.shifted(1e-12) == doctest::Approx(1e-12).epsilon(1e-11));
        const PsiKernel ls = make_builtin("log_shift");
        CHECK(ls.shifted(1e-14) == doctest::Approx(1e-14).epsilon(1e-13));
    }

    TEST_CASE("bad kernel specs are rejected") {
        CHECK_THROWS_AS(make_builtin("cubic"), ParseError);
        CHECK_THROWS_AS(make_builtin("power:abc"), ParseError);
        CHECK_THROWS_AS(make_builtin("power:-1"), DomainError);
        CHECK_THROWS_AS(make_builtin("power:0"), DomainError);
    }

    TEST_CASE("user kernels are validated") {
        CHECK_NOTHROW(make_kernel("cubic", [](double t) { return t * t * t + t; },
                                  [](double t) { return 3 * t * t + 1; }, 0.0, 2.0));
        // decreasing
        CHECK_THROWS_AS(make_kernel("dec", [](double t) { return -t; }, [](double) { return -1.0; }, 0.0, 1.0),
                        ValidationError);
        // derivative inconsistent with the map
        CHECK_THROWS_AS(make_kernel("bad", [](double t) { return t * t + t; }, [](double) { return 1.0; }, 0.0, 1.0),
                        ValidationError);
        const PsiKernel wrong("wrong", [](double t) { return 2 * t; }, [](double) { return 1.0; }, 0.0, 1.0);
        const ValidationReport r = validate(wrong, 64);
        CHECK_FALSE(r.ok());
        CHECK_FALSE(r.derivative_mismatch.empty());
        CHECK(r.monotonicity.empty());
        CHECK_FALSE(r.summary().empty());
    }

    TEST_CASE("covers checks the domain") {
        const PsiKernel k = make_builtin("identity", 0.0, 3.0);
        CHECK(k.covers(0.0, 3.0));
        CHECK_FALSE(k.covers(0.0, 3.5));
    }
}
