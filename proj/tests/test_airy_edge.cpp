#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsos/airy.hpp"
#include "dsos/airy_edge.hpp"
#include "dsos/errors.hpp"
#include "dsos/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace dsos;

TEST_CASE("Airy kernel diagonal and symmetry") {
    const double X = 0.37;
    const auto a = airy(X);
    CHECK(airy_kernel(X, X) == doctest::Approx(a.aip * a.aip - X * a.ai * a.ai).epsilon(1e-14));
    CHECK(airy_kernel(X, X + 1e-9) == doctest::Approx(airy_kernel(X, X)).epsilon(1e-8));
    CHECK(airy_kernel(0.2, -1.1) == doctest::Approx(airy_kernel(-1.1, 0.2)).epsilon(1e-14));
    // K_Ai(X, Y) = int_0^inf Ai(X+u) Ai(Y+u) du
    const double q = integrate_adaptive([](double u) { return airy_ai(0.2 + u) * airy_ai(-1.1 + u); }, 0.0, 40.0, 1e-15);
    CHECK(airy_kernel(0.2, -1.1) == doctest::Approx(q).epsilon(1e-11));
}

TEST_CASE("extended kernel forms agree with direct quadrature") {
    const double X = 0.4;
    const double Y = -0.8;
    for (double lam : {0.2, 0.9, 2.5}) {
        const double fwd = -integrate_adaptive(
            [&](double u) { return std::exp(lam * u) * airy_unchecked(X + u).ai * airy_unchecked(Y + u).ai; },
            std::max(-400.0 / lam, -1500.0), 0.0, 1e-14);
        CHECK(airy_process_kernel(X, 0.0, Y, lam) == doctest::Approx(fwd).epsilon(1e-9));
        const double bwd = integrate_adaptive(
            [&](double u) { return std::exp(-lam * u) * airy_ai(X + u) * airy_ai(Y + u); }, 0.0, 40.0, 1e-15);
        CHECK(airy_process_kernel(X, lam, Y, 0.0) == doctest::Approx(bwd).epsilon(1e-10));
    }
    CHECK(airy_process_kernel(X, 1.0, Y, 1.0) == airy_kernel(X, Y));
}

TEST_CASE("heat kernel identity") {
    const double lam = 0.7;
    const double X = 0.3;
    const double Y = -0.4;
    const double whole = integrate_adaptive(
        [&](double u) { return std::exp(lam * u) * airy_unchecked(X + u).ai * airy_unchecked(Y + u).ai; }, -600.0,
        40.0, 1e-14);
    CHECK(airy_heat_kernel(lam, X, Y) == doctest::Approx(whole).epsilon(1e-8));
    CHECK_THROWS_AS(airy_heat_kernel(0.0, X, Y), DomainError);
}

TEST_CASE("Tracy-Widom regression values") {
    CHECK(tracy_widom_cdf(0.0) == doctest::Approx(kTracyWidomF2AtZero).epsilon(1e-12));
    CHECK(tracy_widom_cdf(kTracyWidomMedian) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(tracy_widom_cdf(-10.0) < 1e-8);
    CHECK(1.0 - tracy_widom_cdf(6.0) < 1e-10);
    CHECK_THROWS_AS(tracy_widom_cdf(7.0), DomainError);
    CHECK(tracy_widom_cdf_clamped(-50.0) == 0.0);
    CHECK(tracy_widom_cdf_clamped(50.0) == 1.0);
}

TEST_CASE("Tracy-Widom moments") {
    const auto s = tracy_widom_stats(64);
    CHECK(s.mean == doctest::Approx(kTracyWidomMean).epsilon(1e-10));
    CHECK(s.variance == doctest::Approx(kTracyWidomVariance).epsilon(1e-9));
    CHECK(s.mean == doctest::Approx(-1.7710868074).epsilon(1e-9));
    CHECK(s.variance == doctest::Approx(0.8131947928).epsilon(1e-9));
}

TEST_CASE("multi-time determinants") {
    const double inf = std::numeric_limits<double>::infinity();
    const double single = fredholm_det_airy({0.0}, {-1.0}).value;
    CHECK(fredholm_det_airy({0.0, 1.0}, {-1.0, inf}).value == doctest::Approx(single).epsilon(1e-12));
    const double joint = fredholm_det_airy({0.0, 0.5}, {-1.0, -1.0}).value;
    CHECK(joint < single);
    CHECK(joint > single * fredholm_det_airy({0.0}, {-1.0}).value);
    CHECK_THROWS_AS(fredholm_det_airy({1.0, 0.0}, {0.0, 0.0}), InvalidInput);
    CHECK_THROWS_AS(fredholm_det_airy({0.0}, {0.0, 1.0}), InvalidInput);
}

TEST_CASE("scaling frames") {
    const auto f = scaling_frame_uniform(0.5, 100);
    CHECK(f.sigma == doctest::Approx(0.16522526902).epsilon(1e-10));
    CHECK(f.uniform_edge == doctest::Approx(0.5 * (1 + std::sqrt(0.75))));
    CHECK(f.from_X(f.to_X(0.91)) == doctest::Approx(0.91).epsilon(1e-14));
    CHECK(f.from_s(f.to_s(0.6)) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK_THROWS_AS(scaling_frame_uniform(1.0, 10), DomainError);
    const auto e = HeightDistribution::exponential();
    const auto g = scaling_frame_general(0.5, 1000000, e);
    CHECK(g.edge == doctest::Approx(-std::log(1 - f.uniform_edge)));
    CHECK(g.density_at_edge == doctest::Approx(1 - f.uniform_edge));
    CHECK(scaled_through_cdf(g, e, g.edge) == doctest::Approx(0.0).epsilon(1e-12));
    const double x = g.from_X(-1.0);
    CHECK(scaled_through_cdf(g, e, x) == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("Johnstone variables") {
    const auto v = johnstone_vars(20, 20, 20);
    CHECK(v.psi == doctest::Approx(std::numbers::pi / 2));
    CHECK(v.M == doctest::Approx(std::cos(v.psi + v.gamma)));
    const auto [p, ai] = johnstone_check(80, 80, 80, 0.5);
    CHECK(std::abs(p - ai) < 0.1);
    CHECK_THROWS_AS(johnstone_vars(0, 1, 1), InvalidInput);
}

TEST_CASE("corner law") {
    const auto u = HeightDistribution::uniform();
    CHECK(corner_cdf(2, u, 0.5) == doctest::Approx(1.0 / 16));
    CHECK(corner_cdf(3, u, -1.0) == 0.0);
}
