#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "stablefield/field.hpp"
#include "stablefield/filter.hpp"
#include "stablefield/quadrature.hpp"

using namespace stablefield;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("builtin registry") {
    CHECK(filter_by_name("gauss2d").dim == 2);
    CHECK(filter_by_name("box1d").dim == 1);
    CHECK_THROWS_AS(filter_by_name("nope"), std::domain_error);
    for (const auto& name : builtin_filter_names())
        CHECK_NOTHROW(validate_filter(filter_by_name(name)));
}

TEST_CASE("radial grid filter interpolates a triangle profile") {
    // psi(x) = 1 - |x| on [0, 1]
    const FilterSpec tri1 = make_radial_grid({0.0, 1.0}, {1.0, 0.0}, 1);
    const std::vector<double> half{0.5}, outside{1.5}, neg{-0.25};
    CHECK(tri1.evaluate(half) == doctest::Approx(0.5));
    CHECK(tri1.evaluate(outside) == 0.0);
    CHECK(tri1.evaluate(neg) == doctest::Approx(0.75));

    SUBCASE("d = 1 norm: integral (1-|x|)^a = 2/(a+1)") {
        for (double a : {1.0, 1.5, 2.0})
            CHECK(sigma_psi(tri1, a) ==
                  doctest::Approx(std::pow(2.0 / (a + 1.0), 1.0 / a))
                      .epsilon(1e-6));
    }
    SUBCASE("d = 2 norm: 2 pi / ((a+1)(a+2))") {
        const FilterSpec tri2 = make_radial_grid({0.0, 1.0}, {1.0, 0.0}, 2);
        for (double a : {1.0, 1.5}) {
            const double closed = 2.0 * kPi / ((a + 1.0) * (a + 2.0));
            CHECK(sigma_psi(tri2, a) ==
                  doctest::Approx(std::pow(closed, 1.0 / a)).epsilon(1e-5));
        }
    }
    SUBCASE("grid validation") {
        CHECK_THROWS_AS(make_radial_grid({0.5, 1.0}, {1.0, 0.0}, 1),
                        std::domain_error);
        CHECK_THROWS_AS(make_radial_grid({0.0, 1.0, 0.5}, {1.0, 0.5, 0.0}, 1),
                        std::domain_error);
        CHECK_THROWS_AS(make_radial_grid({0.0}, {1.0}, 1), std::domain_error);
        CHECK_THROWS_AS(make_radial_grid({0.0, 1.0}, {1.0, 0.0}, 0),
                        std::domain_error);
    }
}

TEST_CASE("filter validation catches malformed specs") {
    FilterSpec f = make_gauss2d();
    f.effective_radius = 0.0;
    CHECK_THROWS_AS(validate_filter(f), std::domain_error);
    f = make_gauss2d();
    f.delta = 1.5;
    CHECK_THROWS_AS(validate_filter(f), std::domain_error);
    f = make_gauss2d();
    f.evaluate = nullptr;
    CHECK_THROWS_AS(validate_filter(f), std::domain_error);
}

TEST_CASE("adaptive quadrature on known integrals") {
    SUBCASE("1d polynomial") {
        std::vector<double> lo{0.0}, hi{2.0};
        const double v = integrate_box(
            [](std::span<const double> x) { return x[0] * x[0] * x[0]; }, lo,
            hi);
        CHECK(v == doctest::Approx(4.0).epsilon(1e-10));
    }
    SUBCASE("2d separable gaussian over a cube") {
        const double v = integrate_cube(
            [](std::span<const double> x) {
                return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
            },
            2, 8.0);
        CHECK(v == doctest::Approx(2.0 * kPi).epsilon(1e-8));
    }
    SUBCASE("discontinuous indicator needs the forced depth") {
        QuadratureOptions deep;
        deep.base_splits = 16;
        deep.min_depth = 8;
        std::vector<double> lo{-2.0}, hi{2.0};
        const double v = integrate_box(
            [](std::span<const double> x) {
                return (x[0] >= 0.3 && x[0] < 1.1) ? 1.0 : 0.0;
            },
            lo, hi, deep);
        CHECK(v == doctest::Approx(0.8).epsilon(1e-6));
    }
    SUBCASE("evaluation budget is enforced") {
        QuadratureOptions tight;
        tight.max_evals = 100;
        CHECK_THROWS_AS(
            integrate_cube(
                [](std::span<const double> x) {
                    return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
                },
                2, 8.0, tight),
            QuadratureError);
    }
    SUBCASE("bad bounds") {
        std::vector<double> lo{1.0}, hi{0.0};
        CHECK_THROWS_AS(integrate_box(
                            [](std::span<const double>) { return 1.0; }, lo, hi),
                        std::domain_error);
    }
}
