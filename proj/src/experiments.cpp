#include "dsos/experiments.hpp"

#include "dsos/airy_edge.hpp"
#include "dsos/errors.hpp"
#include "dsos/limit_shape.hpp"
#include "dsos/rmt_sampler.hpp"
#include "dsos/stats.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

namespace dsos {

namespace {

const std::vector<std::pair<ExperimentKind, std::string>> kKindNames = {
    {ExperimentKind::Universality, "universality"}, {ExperimentKind::Shape, "shape"},
    {ExperimentKind::KernelValidate, "kernel-validate"}, {ExperimentKind::Corner, "corner"},
    {ExperimentKind::TwTable, "tw-table"}, {ExperimentKind::Sample, "sample"},
};

} // namespace

std::string to_string(ExperimentKind k) {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) {
            return name;
        }
    }
    return "unknown";
}

ExperimentKind kind_from_string(const std::string& s) {
    for (const auto& [kind, name] : kKindNames) {
        if (name == s) {
            return kind;
        }
    }
    if (s == "edge-fluct") {
        return ExperimentKind::Universality;
    }
    throw InvalidInput("unknown experiment kind: " + s);
}

int line_for_s(int n, double S) {
    const int l = static_cast<int>(std::ceil(S * n - 1e-9));
    return std::clamp(l, 1, 2 * n - 1);
}

void ExperimentSpec::validate() const {
    if (n < 1) {
        throw InvalidInput("spec: n must be positive");
    }
    if (samples < 1 && kind != ExperimentKind::Shape && kind != ExperimentKind::TwTable) {
        throw InvalidInput("spec: samples must be positive");
    }
    if (samples < 0) {
        throw InvalidInput("spec: samples must be nonnegative");
    }
    if (workers < 0) {
        throw InvalidInput("spec: workers must be nonnegative");
    }
    if (distributions.empty()) {
        throw InvalidInput("spec: at least one distribution is required");
    }
    for (const auto& d : distributions) {
        HeightDistribution::parse(d);
    }
    switch (kind) {
    case ExperimentKind::Universality: {
        if (n < 2) {
            throw InvalidInput("spec: universality needs n >= 2");
        }
        if (!(line_s > 0.0 && line_s < 2.0)) {
            throw InvalidInput("spec: line S must lie in (0,2)");
        }
        if (line_for_s(n, line_s) == n) {
            throw InvalidInput("spec: the line nearest S*n is the central line, where the edge scaling degenerates");
        }
        break;
    }
    case ExperimentKind::KernelValidate:
        if (n > 4) {
            throw InvalidInput("spec: kernel-validate is limited to n <= 4 (oracle samplers)");
        }
        if (bins < 1) {
            throw InvalidInput("spec: bins must be positive");
        }
        for (const auto& r : e0_requests) {
            if (r.line < 1 || r.line > 2 * n - 1 || !(r.u >= 0.0 && r.u <= 1.0)) {
                throw InvalidInput("spec: bad E0 request");
            }
        }
        break;
    case ExperimentKind::Shape:
        if (resolution < 2) {
            throw InvalidInput("spec: resolution must be at least 2");
        }
        break;
    case ExperimentKind::TwTable:
        if (v_points < 2 || !(v_min < v_max) || v_min < -10.0 || v_max > 6.0) {
            throw InvalidInput("spec: tw-table grid must lie in [-10, 6] with at least 2 points");
        }
        break;
    case ExperimentKind::Sample:
        if (sampler != "corank1" && sampler != "rejection" && sampler != "tableau") {
            throw InvalidInput("spec: sampler must be corank1, rejection or tableau");
        }
        break;
    case ExperimentKind::Corner:
        break;
    }
}

Json spec_to_json(const ExperimentSpec& s) {
    Json j;
    j["kind"] = to_string(s.kind);
    j["n"] = s.n;
    j["samples"] = s.samples;
    j["distributions"] = s.distributions;
    j["line_s"] = s.line_s;
    j["seed"] = s.seed;
    j["shared_seeds"] = s.shared_seeds;
    j["sampler"] = s.sampler;
    j["bins"] = s.bins;
    j["e0_requests"] = Json::array();
    for (const auto& r : s.e0_requests) {
        j["e0_requests"].push_back({{"line", r.line}, {"u", r.u}});
    }
    j["resolution"] = s.resolution;
    j["v_min"] = s.v_min;
    j["v_max"] = s.v_max;
    j["v_points"] = s.v_points;
    return j;
}

ExperimentSpec spec_from_json(const Json& j) {
    if (!j.is_object()) {
        throw ParseError("spec: expected a JSON object", 0, 0);
    }
    ExperimentSpec s;
    try {
        if (j.contains("kind")) {
            s.kind = kind_from_string(j.at("kind").get<std::string>());
        }
        auto opt = [&](const char* key, auto& field) {
            if (j.contains(key)) {
                field = j.at(key).get<std::decay_t<decltype(field)>>();
            }
        };
        opt("n", s.n);
        opt("samples", s.samples);
        opt("distributions", s.distributions);
        opt("line_s", s.line_s);
        opt("seed", s.seed);
        opt("workers", s.workers);
        opt("out", s.out);
        opt("shared_seeds", s.shared_seeds);
        opt("sampler", s.sampler);
        opt("bins", s.bins);
        opt("resolution", s.resolution);
        opt("v_min", s.v_min);
        opt("v_max", s.v_max);
        opt("v_points", s.v_points);
        if (j.contains("e0_requests")) {
            for (const auto& r : j.at("e0_requests")) {
                s.e0_requests.push_back({r.at("line").get<int>(), r.at("u").get<double>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spec: ") + e.what(), 0, 0);
    }
    return s;
}

Json manifest_to_json(const RunManifest& m) {
    Json j;
    j["version"] = m.version;
    j["spec"] = m.spec;
    j["seeds"] = m.seeds;
    j["summary"] = m.summary;
    j["timing"] = m.timing;
    return j;
}

RunManifest manifest_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("version") || !j.contains("spec") || !j.contains("summary")) {
        throw ParseError("manifest: missing version, spec or summary", 0, 0);
    }
    RunManifest m;
    m.version = j.at("version").get<std::string>();
    m.spec = j.at("spec");
    m.seeds = j.value("seeds", Json::object());
    m.summary = j.at("summary");
    m.timing = j.value("timing", Json::object());
    return m;
}

int default_workers() {
    if (const char* env = std::getenv("DSOS_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) {
            return w;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn) {
    if (workers <= 0) {
        workers = default_workers();
    }
    workers = static_cast<int>(std::min<std::int64_t>(workers, std::max<std::int64_t>(count, 1)));
    if (workers == 1) {
        for (std::int64_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const auto i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next = count;
                    return;
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

namespace {

using Clock = std::chrono::steady_clock;

std::string label_of(const std::string& descriptor) {
    std::string out;
    for (char c : descriptor) {
        out += std::isalnum(static_cast<unsigned char>(c)) || c == '.' ? c : '_';
    }
    return out;
}

void prepare_out(const ExperimentSpec& spec) {
    if (!spec.out.empty()) {
        std::filesystem::create_directories(spec.out);
    }
}

std::string out_path(const ExperimentSpec& spec, const std::string& name) {
    return (std::filesystem::path(spec.out) / name).string();
}

RunManifest start_manifest(const ExperimentSpec& spec) {
    RunManifest m;
    m.spec = spec_to_json(spec);
    m.seeds["master"] = spec.seed;
    m.seeds["scheme"] = "sample i of stream k uses mt19937_64 seeded by splitmix64 mixing of (stream master, i)";
    m.summary = Json::object();
    return m;
}

void finish_manifest(RunManifest& m, const ExperimentSpec& spec, Clock::time_point t0) {
    m.timing["wall_seconds"] = std::chrono::duration<double>(Clock::now() - t0).count();
    m.timing["workers"] = spec.workers > 0 ? spec.workers : default_workers();
}

Json quad_json(const QuadratureRule& q) {
    return {{"scheme", q.scheme},
            {"initial_nodes", q.initial_nodes},
            {"max_nodes", q.max_nodes},
            {"tolerance", q.tolerance},
            {"truncation", q.truncation}};
}

} // namespace

RunManifest run_universality(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = Clock::now();
    prepare_out(spec);
    RunManifest m = start_manifest(spec);
    const int n = spec.n;
    const int line = line_for_s(n, spec.line_s);
    const double S_line = static_cast<double>(line) / n;
    m.summary["line"] = line;
    m.summary["S_line"] = S_line;
    m.summary["quadrature"] = quad_json(QuadratureRule{});

    // Two statistics per sample: X read through H, which for a quantile-coupled sample is
    // (u - x_0) N^{2/3} / sigma with u the uniform-case value itself, and the linearised
    // frame (x - d_S) h(d_S) N^{2/3} / sigma on the raw height.
    std::vector<std::vector<double>> stats;
    std::vector<std::vector<double>> stats_linear;
    m.summary["distributions"] = Json::array();
    m.seeds["streams"] = Json::array();
    const double scale = std::cbrt(static_cast<double>(n) * n);
    for (std::size_t k = 0; k < spec.distributions.size(); ++k) {
        const auto d = HeightDistribution::parse(spec.distributions[k]);
        const auto frame = scaling_frame_general(S_line, n, d);
        const std::uint64_t master = spec.shared_seeds ? spec.seed : stream_seed(spec.seed, k + 1);
        m.seeds["streams"].push_back({{"distribution", spec.distributions[k]}, {"master", master}});

        std::vector<double> uni(static_cast<std::size_t>(spec.samples));
        parallel_for(spec.samples, spec.workers, [&](std::int64_t i) {
            auto rng = make_stream(master, static_cast<std::uint64_t>(i));
            const auto lines = sample_uniform_lines(n, line, rng);
            uni[static_cast<std::size_t>(i)] = lines[static_cast<std::size_t>(line - 1)].front();
        });
        std::vector<double> raw(uni.size());
        std::vector<double> X(uni.size());
        std::vector<double> X_linear(uni.size());
        for (std::size_t i = 0; i < uni.size(); ++i) {
            raw[i] = d.quantile(uni[i]);
            X[i] = (uni[i] - frame.uniform_edge) * scale / frame.sigma;
            X_linear[i] = frame.to_X(raw[i]);
        }
        const auto ecdf = empirical_cdf(X);
        const double ks_tw = ks_statistic(ecdf, tracy_widom_cdf_clamped);
        const double ks_lin = ks_statistic(X_linear, tracy_widom_cdf_clamped);
        const auto mo = moments(X);
        const auto mo_lin = moments(X_linear);
        m.summary["distributions"].push_back({{"distribution", spec.distributions[k]},
                                              {"edge", frame.edge},
                                              {"density_at_edge", frame.density_at_edge},
                                              {"sigma", frame.sigma},
                                              {"tau", frame.tau},
                                              {"mean_raw", moments(raw).mean},
                                              {"mean_X", mo.mean},
                                              {"variance_X", mo.variance},
                                              {"mean_X_linearized", mo_lin.mean},
                                              {"variance_X_linearized", mo_lin.variance},
                                              {"ks_tw", ks_tw},
                                              {"ks_tw_linearized", ks_lin}});
        if (!spec.out.empty()) {
            write_ecdf(out_path(spec, "ecdf_" + label_of(spec.distributions[k]) + ".csv"), ecdf);
            if (k == 0) {
                write_ecdf(out_path(spec, "ecdf.csv"), ecdf);
            }
        }
        stats.push_back(std::move(X));
        stats_linear.push_back(std::move(X_linear));
    }
    m.summary["pairwise_ks"] = Json::array();
    double worst_pair = 0.0;
    double worst_pair_lin = 0.0;
    for (std::size_t a = 0; a < stats.size(); ++a) {
        for (std::size_t b = a + 1; b < stats.size(); ++b) {
            const double ks = ks_two_sample(stats[a], stats[b]);
            const double ks_lin = ks_two_sample(stats_linear[a], stats_linear[b]);
            worst_pair = std::max(worst_pair, ks);
            worst_pair_lin = std::max(worst_pair_lin, ks_lin);
            m.summary["pairwise_ks"].push_back(
                {{"a", spec.distributions[a]}, {"b", spec.distributions[b]}, {"ks", ks}, {"ks_linearized", ks_lin}});
        }
    }
    double worst_tw = 0.0;
    double worst_tw_lin = 0.0;
    for (const auto& d : m.summary["distributions"]) {
        worst_tw = std::max(worst_tw, d["ks_tw"].get<double>());
        worst_tw_lin = std::max(worst_tw_lin, d["ks_tw_linearized"].get<double>());
    }
    m.summary["max_pairwise_ks"] = worst_pair;
    m.summary["max_pairwise_ks_linearized"] = worst_pair_lin;
    m.summary["max_ks_tw"] = worst_tw;
    m.summary["max_ks_tw_linearized"] = worst_tw_lin;
    finish_manifest(m, spec, t0);
    return m;
}

namespace {

GridConfig oracle_sample(int n, Rng& rng, RejectionStats* stats) {
    if (n <= 2) {
        return rejection_sample(n, HeightDistribution::uniform(), rng, 2'000'000'000ULL, stats);
    }
    return tableau_sample(n, HeightDistribution::uniform(), rng);
}

} // namespace

RunManifest run_kernel_validate(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = Clock::now();
    prepare_out(spec);
    RunManifest m = start_manifest(spec);
    const int n = spec.n;
    const int cells = n * n;
    const auto M = static_cast<std::size_t>(spec.samples);
    const std::uint64_t oracle_master = stream_seed(spec.seed, 1);
    const std::uint64_t corank_master = stream_seed(spec.seed, 2);
    m.seeds["streams"] = Json::array({{{"sampler", n <= 2 ? "rejection" : "tableau"}, {"master", oracle_master}},
                                      {{"sampler", "corank1"}, {"master", corank_master}}});

    std::vector<double> oracle(M * cells);
    std::vector<double> corank(M * cells);
    std::vector<std::uint64_t> attempts(M, 0);
    parallel_for(spec.samples, spec.workers, [&](std::int64_t i) {
        const auto idx = static_cast<std::size_t>(i);
        auto r1 = make_stream(oracle_master, idx);
        RejectionStats st;
        const auto g = oracle_sample(n, r1, &st);
        attempts[idx] = st.attempts;
        std::copy(g.heights.begin(), g.heights.end(), oracle.begin() + idx * cells);
        auto r2 = make_stream(corank_master, idx);
        const auto c = lines_to_grid(sample_uniform_config(n, r2));
        std::copy(c.heights.begin(), c.heights.end(), corank.begin() + idx * cells);
    });

    if (n <= 2) {
        std::uint64_t total = 0;
        for (auto a : attempts) {
            total += a;
        }
        m.summary["acceptance_rate"] = static_cast<double>(M) / static_cast<double>(total);
        m.summary["acceptance_exact"] = normalization_constant(n).real();
    }

    // Per-marginal agreement of the two samplers.
    double worst_ks = 0.0;
    std::vector<double> a(M);
    std::vector<double> b(M);
    for (int c = 0; c < cells; ++c) {
        for (std::size_t i = 0; i < M; ++i) {
            a[i] = oracle[i * cells + c];
            b[i] = corank[i * cells + c];
        }
        worst_ks = std::max(worst_ks, ks_two_sample(a, b));
    }
    m.summary["max_marginal_ks"] = worst_ks;

    KernelContext ctx(n);
    m.summary["lines"] = Json::array();
    double worst_sup = 0.0;
    for (int l = 1; l <= 2 * n - 1; ++l) {
        Histogram h_oracle(0.0, 1.0, spec.bins);
        Histogram h_corank(0.0, 1.0, spec.bins);
        const int d = l - n;
        const int i0 = std::max(1, 1 - d);
        for (std::size_t s = 0; s < M; ++s) {
            for (int k = 0; k < line_size(n, l); ++k) {
                const int i = i0 + k;
                const int j = i + d;
                const auto cell = static_cast<std::size_t>((i - 1) * n + (j - 1));
                h_oracle.add(oracle[s * cells + cell]);
                h_corank.add(corank[s * cells + cell]);
            }
        }
        double sup_o = 0.0;
        double sup_c = 0.0;
        for (int k = 0; k < spec.bins; ++k) {
            const double lo = h_oracle.left(k);
            const double w = h_oracle.width();
            const double exact = integrate_adaptive([&](double u) { return one_point_density(ctx, l, u); }, lo, lo + w,
                                                    1e-12) /
                                 w;
            sup_o = std::max(sup_o, std::abs(h_oracle.density(k, M) - exact));
            sup_c = std::max(sup_c, std::abs(h_corank.density(k, M) - exact));
        }
        const double mass = integrate_adaptive([&](double u) { return one_point_density(ctx, l, u); }, 0.0, 1.0, 1e-12);
        worst_sup = std::max({worst_sup, sup_o, sup_c});
        m.summary["lines"].push_back({{"line", l},
                                      {"rho1_integral", mass},
                                      {"expected_count", line_size(n, l)},
                                      {"sup_error_oracle", sup_o},
                                      {"sup_error_corank1", sup_c}});
    }
    m.summary["max_density_sup_error"] = worst_sup;

    m.summary["e0"] = Json::array();
    double worst_e0 = 0.0;
    for (const auto& req : spec.e0_requests) {
        const auto res = gap_probability_E0(ctx, {req});
        const int l = req.line;
        const int d = l - n;
        const int i_top = std::min(n, n - d); // largest site on the line: row i_top
        const auto cell = static_cast<std::size_t>((i_top - 1) * n + (i_top + d - 1));
        std::size_t below_o = 0;
        std::size_t below_c = 0;
        for (std::size_t s = 0; s < M; ++s) {
            below_o += oracle[s * cells + cell] < req.u;
            below_c += corank[s * cells + cell] < req.u;
        }
        const double fo = static_cast<double>(below_o) / M;
        const double fc = static_cast<double>(below_c) / M;
        worst_e0 = std::max({worst_e0, std::abs(fo - res.value), std::abs(fc - res.value)});
        auto j = e0_to_json({req}, res);
        j["mc_oracle"] = fo;
        j["mc_corank1"] = fc;
        j["delta"] = res.delta;
        j["method"] = res.method;
        m.summary["e0"].push_back(j);
    }
    m.summary["max_e0_error"] = worst_e0;

    if (n == 2) {
        // Central line {x11, x22}.
        std::vector<double> gap(M);
        for (std::size_t s = 0; s < M; ++s) {
            const double diff = corank[s * cells + 3] - corank[s * cells + 0];
            gap[s] = diff * diff;
        }
        m.summary["central_gap_sq_mean"] = moments(gap).mean;
    }
    if (!spec.out.empty()) {
        std::vector<int> lines;
        for (int l = 1; l <= 2 * n - 1; ++l) {
            lines.push_back(l);
        }
        std::vector<double> us;
        for (int k = 0; k <= 100; ++k) {
            us.push_back(k / 100.0);
        }
        write_csv(out_path(spec, "one_point.csv"), one_point_table(ctx, lines, us));
    }
    finish_manifest(m, spec, t0);
    return m;
}

RunManifest run_shape(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = Clock::now();
    prepare_out(spec);
    RunManifest m = start_manifest(spec);
    const auto surface = surface_grid(spec.resolution);
    if (!spec.out.empty()) {
        write_csv(out_path(spec, "surface.csv"), surface_table(surface));
    }
    double anti = 0.0;
    double back = 0.0;
    for (int k = 1; k < spec.resolution; ++k) {
        const double x = static_cast<double>(k) / spec.resolution;
        anti = std::max(anti, std::abs(shape_height(x, 1.0 - x).h - 0.5));
        // The surface approaches its edges like dist^{2/3}; 1e-14 puts the gap below 1e-8.
        const double e = 1e-14;
        const auto prof = boundary_profiles(x);
        back = std::max({back, std::abs(shape_height(x, 1.0 - e).h - prof[0]),
                         std::abs(shape_height(1.0 - e, x).h - prof[1]), std::abs(shape_height(x, e).h - prof[2]),
                         std::abs(shape_height(e, x).h - prof[3])});
    }
    m.summary["antidiagonal_max_error"] = anti;
    m.summary["boundary_profile_max_error"] = back;

    if (spec.samples > 0) {
        const int n = spec.n;
        const auto d = HeightDistribution::parse(spec.distributions.front());
        const auto M = static_cast<std::size_t>(spec.samples);
        std::vector<std::vector<double>> grids(M);
        parallel_for(spec.samples, spec.workers, [&](std::int64_t i) {
            auto rng = make_stream(spec.seed, static_cast<std::uint64_t>(i));
            grids[static_cast<std::size_t>(i)] = sample_config(n, d, rng).heights;
        });
        std::vector<double> mean(static_cast<std::size_t>(n * n), 0.0);
        for (const auto& g : grids) {
            for (std::size_t c = 0; c < mean.size(); ++c) {
                mean[c] += g[c];
            }
        }
        double worst = 0.0;
        double worst_interior = 0.0;
        CsvTable mc{{"x", "y", "mean", "limit"}, {}};
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                const double y = (i - 0.5) / n;
                const double x = (j - 0.5) / n;
                const double mu = mean[static_cast<std::size_t>((i - 1) * n + (j - 1))] / M;
                const double limit = d.quantile(shape_height(x, y).h);
                const double dev = std::abs(mu - limit);
                worst = std::max(worst, dev);
                if (x > 0.1 && x < 0.9 && y > 0.1 && y < 0.9) {
                    worst_interior = std::max(worst_interior, dev);
                }
                mc.rows.push_back({x, y, mu, limit});
            }
        }
        m.summary["mc_max_deviation"] = worst;
        m.summary["mc_interior_max_deviation"] = worst_interior;
        if (!spec.out.empty()) {
            write_csv(out_path(spec, "mc_surface.csv"), mc);
        }
    }
    finish_manifest(m, spec, t0);
    return m;
}

RunManifest run_corner(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = Clock::now();
    prepare_out(spec);
    RunManifest m = start_manifest(spec);
    const int n = spec.n;
    const double nn = static_cast<double>(n) * n;
    m.summary["distributions"] = Json::array();
    m.seeds["streams"] = Json::array();
    for (std::size_t k = 0; k < spec.distributions.size(); ++k) {
        const auto d = HeightDistribution::parse(spec.distributions[k]);
        const std::uint64_t master = spec.shared_seeds ? spec.seed : stream_seed(spec.seed, k + 1);
        m.seeds["streams"].push_back({{"distribution", spec.distributions[k]}, {"master", master}});
        std::vector<double> top(static_cast<std::size_t>(spec.samples));
        parallel_for(spec.samples, spec.workers, [&](std::int64_t i) {
            auto rng = make_stream(master, static_cast<std::uint64_t>(i));
            // x_NN is the largest value of the central line.
            const auto lines = sample_uniform_lines(n, n, rng);
            top[static_cast<std::size_t>(i)] = d.quantile(lines[static_cast<std::size_t>(n - 1)].front());
        });
        Json entry{{"distribution", spec.distributions[k]}};
        entry["ks_exact"] = ks_statistic(top, [&](double x) { return corner_cdf(n, d, x); });
        std::size_t below_half = 0;
        for (double x : top) {
            below_half += x < d.quantile(0.5);
        }
        entry["fraction_below_median"] = static_cast<double>(below_half) / top.size();
        entry["exact_below_median"] = std::pow(0.5, nn);
        std::vector<double> scaled(top.size());
        if (d.kind() == HeightDistribution::Kind::Uniform) {
            for (std::size_t i = 0; i < top.size(); ++i) {
                scaled[i] = nn * (1.0 - top[i]);
            }
            entry["limit"] = "exponential";
            entry["statistic"] = "N^2 (1 - x_NN)";
            entry["ks_limit"] = ks_statistic(scaled, exponential_cdf);
        } else if (d.kind() == HeightDistribution::Kind::Exponential && spec.distributions[k] == "exp") {
            for (std::size_t i = 0; i < top.size(); ++i) {
                scaled[i] = top[i] - 2.0 * std::log(static_cast<double>(n));
            }
            entry["limit"] = "gumbel";
            entry["statistic"] = "x_NN - 2 log N";
            entry["ks_limit"] = ks_statistic(scaled, gumbel_cdf);
        }
        if (!spec.out.empty()) {
            const auto e = empirical_cdf(entry.contains("ks_limit") ? scaled : top);
            write_ecdf(out_path(spec, "ecdf_" + label_of(spec.distributions[k]) + ".csv"), e);
            if (k == 0) {
                write_ecdf(out_path(spec, "ecdf.csv"), e);
            }
        }
        m.summary["distributions"].push_back(entry);
    }
    finish_manifest(m, spec, t0);
    return m;
}

RunManifest run_tw_table(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = Clock::now();
    prepare_out(spec);
    RunManifest m = start_manifest(spec);
    const QuadratureRule quad;
    CsvTable t{{"v", "F2"}, {}};
    int max_nodes = 0;
    double max_delta = 0.0;
    std::vector<double> values(static_cast<std::size_t>(spec.v_points));
    std::vector<FredholmResult> res(values.size());
    parallel_for(spec.v_points, spec.workers, [&](std::int64_t i) {
        const double v = spec.v_min + (spec.v_max - spec.v_min) * static_cast<double>(i) / (spec.v_points - 1);
        values[static_cast<std::size_t>(i)] = v;
        res[static_cast<std::size_t>(i)] = fredholm_det_airy({0.0}, {v}, quad);
    });
    for (std::size_t i = 0; i < values.size(); ++i) {
        t.rows.push_back({values[i], res[i].value});
        max_nodes = std::max(max_nodes, res[i].nodes);
        max_delta = std::max(max_delta, res[i].delta);
    }
    if (!spec.out.empty()) {
        write_csv(out_path(spec, "tw.csv"), t);
    }
    m.summary["quadrature"] = quad_json(quad);
    m.summary["max_nodes_used"] = max_nodes;
    m.summary["max_doubling_delta"] = max_delta;
    m.summary["points"] = spec.v_points;
    finish_manifest(m, spec, t0);
    return m;
}

RunManifest run_sample(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = Clock::now();
    prepare_out(spec);
    RunManifest m = start_manifest(spec);
    const auto d = HeightDistribution::parse(spec.distributions.front());
    const auto M = static_cast<std::size_t>(spec.samples);
    std::vector<GridConfig> grids(M);
    std::vector<std::uint64_t> attempts(M, 0);
    parallel_for(spec.samples, spec.workers, [&](std::int64_t i) {
        const auto idx = static_cast<std::size_t>(i);
        auto rng = make_stream(spec.seed, idx);
        if (spec.sampler == "rejection") {
            RejectionStats st;
            grids[idx] = rejection_sample(spec.n, d, rng, 2'000'000'000ULL, &st);
            attempts[idx] = st.attempts;
        } else if (spec.sampler == "tableau") {
            grids[idx] = tableau_sample(spec.n, d, rng);
        } else {
            grids[idx] = sample_config(spec.n, d, rng);
        }
    });
    std::vector<double> top(M);
    for (std::size_t i = 0; i < M; ++i) {
        top[i] = grids[i].at(spec.n, spec.n);
    }
    m.summary["sampler"] = spec.sampler;
    m.summary["count"] = M;
    m.summary["mean_corner"] = moments(top).mean;
    if (spec.sampler == "rejection") {
        std::uint64_t total = 0;
        for (auto a : attempts) {
            total += a;
        }
        m.summary["acceptance_rate"] = static_cast<double>(M) / static_cast<double>(total);
        m.summary["acceptance_exact"] = normalization_constant(spec.n).real();
    }
    if (!spec.out.empty()) {
        Json all = Json::array();
        for (const auto& g : grids) {
            all.push_back(grid_to_json(g));
        }
        write_json(out_path(spec, "samples.json"), all);
    }
    finish_manifest(m, spec, t0);
    return m;
}

RunManifest run_experiment(const ExperimentSpec& spec) {
    RunManifest m;
    switch (spec.kind) {
    case ExperimentKind::Universality:
        m = run_universality(spec);
        break;
    case ExperimentKind::KernelValidate:
        m = run_kernel_validate(spec);
        break;
    case ExperimentKind::Shape:
        m = run_shape(spec);
        break;
    case ExperimentKind::Corner:
        m = run_corner(spec);
        break;
    case ExperimentKind::TwTable:
        m = run_tw_table(spec);
        break;
    case ExperimentKind::Sample:
        m = run_sample(spec);
        break;
    }
    if (!spec.out.empty()) {
        write_json(out_path(spec, "manifest.json"), manifest_to_json(m));
    }
    return m;
}

} // namespace dsos
