#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsos/errors.hpp"
#include "dsos/kernel.hpp"
#include "dsos/model.hpp"
#include "dsos/quadrature.hpp"

#include <algorithm>
#include <cmath>

using namespace dsos;

// Exact N = 2 laws: x21 ~ 6u(1-u); the central line {x11, x22} ~ (y1-y2)^2;
// (x21, x12) ~ 12 min(u,v) (1 - max(u,v)).

TEST_CASE("one-point densities at N = 2") {
    KernelContext ctx(2);
    for (double u : {0.1, 0.35, 0.8}) {
        CHECK(one_point_density(ctx, 1, u) == doctest::Approx(6 * u * (1 - u)).epsilon(1e-12));
        CHECK(one_point_density(ctx, 3, u) == doctest::Approx(6 * u * (1 - u)).epsilon(1e-12));
        CHECK(one_point_density(ctx, 2, u) ==
              doctest::Approx(4 * (u * u * u + (1 - u) * (1 - u) * (1 - u))).epsilon(1e-12));
    }
}

TEST_CASE("two-point correlations at N = 2") {
    KernelContext ctx(2);
    for (auto [u, v] : {std::pair{0.3, 0.6}, std::pair{0.7, 0.2}}) {
        const double expect = 12 * std::min(u, v) * (1 - std::max(u, v));
        CHECK(correlation_rho(ctx, {{1, u}, {3, v}}) == doctest::Approx(expect).epsilon(1e-11));
        CHECK(correlation_rho(ctx, {{3, v}, {1, u}}) == doctest::Approx(expect).epsilon(1e-11));
    }
    // Ordered central-line law is 12 (y1 - y2)^2 on y1 > y2.
    const double u = 0.2;
    const double v = 0.9;
    CHECK(correlation_rho(ctx, {{2, u}, {2, v}}) == doctest::Approx(12 * (u - v) * (u - v)).epsilon(1e-11));
}

TEST_CASE("line masses equal the particle counts") {
    for (int n : {3, 4}) {
        KernelContext ctx(n);
        for (int l = 1; l <= 2 * n - 1; ++l) {
            const double mass = integrate_adaptive([&](double u) { return one_point_density(ctx, l, u); }, 0, 1, 1e-13);
            CHECK(mass == doctest::Approx(line_size(n, l)).epsilon(1e-10));
        }
    }
}

TEST_CASE("gap probabilities") {
    KernelContext one(1);
    CHECK(gap_probability_E0(one, {{1, 0.4}}).value == doctest::Approx(0.4).epsilon(1e-12));

    KernelContext ctx(2);
    // Pr(x21 < u) = 3u^2 - 2u^3.
    const double u = 0.6;
    CHECK(gap_probability_E0(ctx, {{1, u}}).value == doctest::Approx(3 * u * u - 2 * u * u * u).epsilon(1e-10));
    // The central line maximum is x22: Pr(x22 < u) = u^4.
    const auto e2 = gap_probability_E0(ctx, {{2, 0.7}});
    CHECK(e2.value == doctest::Approx(std::pow(0.7, 4)).epsilon(1e-10));
    CHECK(e2.method == "nystrom");
    const auto fr = gap_probability_E0_finite_rank(ctx, {{2, 0.7}});
    CHECK(fr.value == doctest::Approx(e2.value).epsilon(1e-9));
    // Every line below 0.7 means x22 < 0.7.
    const auto multi = gap_probability_E0(ctx, {{1, 0.7}, {2, 0.7}, {3, 0.7}});
    CHECK(multi.method == "finite-rank");
    CHECK(multi.value == doctest::Approx(std::pow(0.7, 4)).epsilon(1e-9));

    CHECK_THROWS_AS(gap_probability_E0(ctx, {}), InvalidInput);
    CHECK_THROWS_AS(gap_probability_E0(ctx, {{1, 1.5}}), DomainError);
}

TEST_CASE("density of the maximum") {
    KernelContext ctx(2);
    const double u = 0.45;
    CHECK(max_height_pdf(ctx, {1}, {u}) == doctest::Approx(6 * u * (1 - u)).epsilon(1e-7));
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(KernelContext(0), InvalidInput);
    KernelContext ctx(3);
    CHECK_THROWS_AS(kernel_K(ctx, 0, 0.5, 1, 0.5), InvalidInput);
    CHECK_THROWS_AS(kernel_K(ctx, 1, 1.5, 1, 0.5), DomainError);
}
