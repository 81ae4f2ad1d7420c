#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsos/airy.hpp"
#include "dsos/errors.hpp"

#include <boost/math/special_functions/airy.hpp>

#include <cmath>

using namespace dsos;

TEST_CASE("values against Boost") {
    double worst = 0.0;
    for (double x = -20.0; x <= 20.0; x += 0.0371) {
        const auto a = airy(x);
        const double ref = boost::math::airy_ai(x);
        const double refp = boost::math::airy_ai_prime(x);
        // relative on the decaying side, absolute (per unit amplitude) on the oscillating side
        const double s0 = x > 0 ? std::abs(ref) : 1.0;
        const double s1 = x > 0 ? std::abs(refp) : std::max(1.0, std::sqrt(std::abs(x)));
        worst = std::max({worst, std::abs(a.ai - ref) / s0, std::abs(a.aip - refp) / s1});
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("reference points") {
    CHECK(airy_ai(0.0) == doctest::Approx(0.35502805388781723926).epsilon(1e-15));
    CHECK(airy_ai_prime(0.0) == doctest::Approx(-0.25881940379280679840).epsilon(1e-15));
    // First zero of Ai.
    CHECK(std::abs(airy_ai(-2.338107410459767)) < 1e-14);
    CHECK_THROWS_AS(airy(201.0), DomainError);
    CHECK_THROWS_AS(airy(-201.0), DomainError);
}

TEST_CASE("Airy equation by differences") {
    const double h = 1e-4;
    for (double x : {-9.0, -3.0, 1.0, 5.0}) {
        const double second = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        CHECK(second == doctest::Approx(x * airy_ai(x)).epsilon(1e-5));
    }
}
