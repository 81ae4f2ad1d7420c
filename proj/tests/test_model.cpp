#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsos/errors.hpp"
#include "dsos/model.hpp"

#include <cmath>
#include <limits>

using namespace dsos;

namespace {

GridConfig two_by_two() { return GridConfig::from_rows({{0.1, 0.4}, {0.3, 0.8}}); }

// Hook-length count of standard Young tableaux of the n x n square, as 1/C.
BigRational hook_oracle(int n) {
    BigInt cells_fact = 1;
    for (int k = 2; k <= n * n; ++k) {
        cells_fact *= k;
    }
    BigInt hooks = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            hooks *= (n - i - 1) + (n - j - 1) + 1;
        }
    }
    // linear extensions / (n^2)! = 1 / hooks
    return BigRational(BigInt(1), hooks);
}

} // namespace

TEST_CASE("validate_grid on small grids") {
    CHECK(validate_grid(two_by_two()));
    CHECK_FALSE(validate_grid(GridConfig::from_rows({{0.4, 0.1}, {0.3, 0.8}})));
    CHECK_FALSE(validate_grid(GridConfig::from_rows({{0.1, 0.4}, {0.05, 0.8}})));
    CHECK_THROWS_AS(validate_grid(GridConfig::from_rows({{0.1, NAN}, {0.3, 0.8}})), InvalidInput);
    CHECK_THROWS_AS(GridConfig::from_rows({{0.1, 0.2}, {0.3}}), InvalidInput);
}

TEST_CASE("grid_to_lines places x_ij on line N + j - i") {
    const auto ls = grid_to_lines(two_by_two());
    REQUIRE(ls.lines.size() == 3);
    CHECK(ls.line(1) == std::vector<double>{0.3});
    CHECK(ls.line(2) == std::vector<double>{0.8, 0.1});
    CHECK(ls.line(3) == std::vector<double>{0.4});
    CHECK(lines_to_grid(ls) == two_by_two());

    const auto one = grid_to_lines(GridConfig::from_rows({{0.5}}));
    CHECK(one.lines.size() == 1);
    CHECK(one.line(1) == std::vector<double>{0.5});

    CHECK_THROWS_AS(grid_to_lines(GridConfig::from_rows({{0.4, 0.1}, {0.3, 0.8}})), ConstraintViolation);
}

TEST_CASE("interlacing_valid") {
    LineSystem ls{2, {{0.3}, {0.8, 0.1}, {0.4}}};
    CHECK(interlacing_valid(ls));
    ls.line(1) = {0.05};
    CHECK_FALSE(interlacing_valid(ls));
    ls.line(1) = {0.3, 0.2};
    CHECK_THROWS_AS(interlacing_valid(ls), InvalidInput);
    CHECK_THROWS_AS(lines_to_grid(LineSystem{2, {{0.05}, {0.8, 0.1}, {0.4}}}), ConstraintViolation);
}

TEST_CASE("normalization constant") {
    CHECK(normalization_constant(1).value == 1);
    CHECK(normalization_constant(2).value == BigRational(1, 12));
    CHECK(normalization_constant(3).value == BigRational(1, 8640));
    for (int n = 1; n <= 6; ++n) {
        CHECK(normalization_constant(n).value == hook_oracle(n));
    }
    CHECK_THROWS_AS(normalization_constant(0), InvalidInput);
}

TEST_CASE("joint density") {
    const auto u = HeightDistribution::uniform();
    CHECK(joint_density(GridConfig::from_rows({{0.5}}), u) == doctest::Approx(1.0));
    CHECK(joint_density(two_by_two(), u) == doctest::Approx(12.0));
    CHECK(joint_density(GridConfig::from_rows({{0.4, 0.1}, {0.3, 0.8}}), u) == 0.0);
    // Large grids underflow to a literal zero through the log form.
    GridConfig big(40);
    for (int i = 1; i <= 40; ++i) {
        for (int j = 1; j <= 40; ++j) {
            big.at(i, j) = 50.0 + i + j + 1e-3 * j;
        }
    }
    const auto e = HeightDistribution::exponential();
    CHECK(std::isfinite(log_joint_density(big, e)));
    CHECK(joint_density(big, e) == 0.0);
}

TEST_CASE("rejection sampler") {
    const auto u = HeightDistribution::uniform();
    auto rng = make_stream(3, 0);
    const auto g1 = rejection_sample(1, u, rng);
    CHECK(g1.n == 1);
    RejectionStats st;
    for (int k = 0; k < 2000; ++k) {
        CHECK(validate_grid(rejection_sample(2, u, rng, 1'000'000, &st)));
    }
    CHECK(st.acceptance_rate() == doctest::Approx(1.0 / 12).epsilon(0.15));
    CHECK_THROWS_AS(rejection_sample(4, u, rng, 10), ResourceLimit);
}

TEST_CASE("tableau sampler yields valid grids in the support") {
    auto rng = make_stream(4, 0);
    const auto e = HeightDistribution::exponential();
    for (int n = 1; n <= 6; ++n) {
        const auto g = tableau_sample(n, e, rng);
        CHECK(validate_grid(g));
        for (double x : g.heights) {
            CHECK(x >= 0.0);
        }
    }
}

TEST_CASE("cdf transform") {
    const auto e = HeightDistribution::exponential();
    LineSystem ls{1, {{std::log(2.0)}}};
    CHECK(cdf_transform(ls, e).line(1)[0] == doctest::Approx(0.5).epsilon(1e-15));
    const auto u = HeightDistribution::uniform();
    CHECK(cdf_transform(grid_to_lines(two_by_two()), u) == grid_to_lines(two_by_two()));

    auto rng = make_stream(5, 0);
    const auto g = tableau_sample(5, e, rng);
    const auto ls5 = grid_to_lines(g);
    const auto back = inverse_transform(cdf_transform(ls5, e), e);
    for (int l = 1; l <= ls5.line_count(); ++l) {
        for (std::size_t k = 0; k < ls5.line(l).size(); ++k) {
            CHECK(std::abs(back.line(l)[k] - ls5.line(l)[k]) < 1e-10);
        }
    }
    CHECK_THROWS_AS(cdf_transform(LineSystem{1, {{-1.0}}}, e), DomainError);
    CHECK_THROWS_AS(inverse_transform(LineSystem{1, {{1.5}}}, e), DomainError);
}
