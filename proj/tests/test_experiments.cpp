#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dsos/errors.hpp"
#include "dsos/experiments.hpp"

#include <filesystem>

using namespace dsos;

namespace {

ExperimentSpec small(ExperimentKind kind) {
    ExperimentSpec s;
    s.kind = kind;
    s.n = 12;
    s.samples = 300;
    s.seed = 77;
    return s;
}

} // namespace

TEST_CASE("spec validation") {
    auto s = small(ExperimentKind::Universality);
    s.line_s = 1.0;
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s.line_s = 2.5;
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s = small(ExperimentKind::KernelValidate);
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s = small(ExperimentKind::Sample);
    s.distributions = {"gamma"};
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    CHECK_THROWS_AS(kind_from_string("nope"), InvalidInput);
    CHECK(kind_from_string("edge-fluct") == ExperimentKind::Universality);
}

TEST_CASE("spec JSON round trip") {
    auto s = small(ExperimentKind::KernelValidate);
    s.n = 3;
    s.e0_requests = {{3, 0.7}};
    s.distributions = {"uniform", "beta:2"};
    const auto back = spec_from_json(parse_json(spec_to_json(s).dump()));
    CHECK(spec_to_json(back) == spec_to_json(s));
}

TEST_CASE("results do not depend on the worker count") {
    auto s = small(ExperimentKind::Universality);
    s.distributions = {"uniform", "exp"};
    s.workers = 1;
    const auto a = run_universality(s);
    s.workers = 3;
    const auto b = run_universality(s);
    CHECK(a == b);
    CHECK(manifest_to_json(a)["summary"].dump() == manifest_to_json(b)["summary"].dump());
}

TEST_CASE("shared seeds couple the laws exactly") {
    auto s = small(ExperimentKind::Universality);
    s.distributions = {"uniform", "exp", "beta:2"};
    s.shared_seeds = true;
    const auto m = run_universality(s);
    CHECK(m.summary["max_pairwise_ks"].get<double>() == 0.0);
}

TEST_CASE("manifest and data files round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "dsos_test_experiments";
    std::filesystem::remove_all(dir);
    auto s = small(ExperimentKind::Corner);
    s.distributions = {"uniform", "exp"};
    s.out = dir.string();
    const auto m = run_experiment(s);
    const auto back = manifest_from_json(read_json((dir / "manifest.json").string()));
    CHECK(back == m);
    CHECK(std::filesystem::exists(dir / "ecdf.csv"));
    CHECK_FALSE(read_ecdf((dir / "ecdf.csv").string()).empty());

    auto t = small(ExperimentKind::TwTable);
    t.v_points = 5;
    t.out = dir.string();
    run_experiment(t);
    const auto tw = read_csv((dir / "tw.csv").string(), {"v", "F2"});
    CHECK(tw.rows.size() == 5);

    auto sh = small(ExperimentKind::Shape);
    sh.samples = 0;
    sh.resolution = 4;
    sh.out = dir.string();
    run_experiment(sh);
    CHECK(read_csv((dir / "surface.csv").string(), {"x", "y", "h"}).rows.size() == 25);
}

TEST_CASE("sample runs") {
    auto s = small(ExperimentKind::Sample);
    s.n = 2;
    s.samples = 2000;
    s.sampler = "rejection";
    const auto m = run_sample(s);
    CHECK(m.summary["acceptance_rate"].get<double>() == doctest::Approx(1.0 / 12).epsilon(0.1));
    s.sampler = "tableau";
    CHECK(run_sample(s).summary["count"] == 2000);
}

TEST_CASE("line selection") {
    CHECK(line_for_s(200, 0.5) == 100);
    CHECK(line_for_s(7, 0.5) == 4);
    CHECK(line_for_s(5, 1.99) == 9);
    CHECK(line_for_s(5, 0.01) == 1);
}
