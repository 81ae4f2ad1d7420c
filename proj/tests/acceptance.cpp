// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "dsos/airy.hpp"
#include "dsos/airy_edge.hpp"
#include "dsos/errors.hpp"
#include "dsos/experiments.hpp"
#include "dsos/kernel.hpp"
#include "dsos/limit_shape.hpp"
#include "dsos/model.hpp"
#include "dsos/quadrature.hpp"
#include "dsos/rmt_sampler.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

using namespace dsos;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) {
        ++failures;
    }
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

BigRational hook_product(int n) {
    BigInt hooks = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            hooks *= (n - 1 - i) + (n - 1 - j) + 1;
        }
    }
    return BigRational(BigInt(1), hooks);
}

// Diagonal read-out without any validity check.
LineSystem raw_lines(const GridConfig& g) {
    const int n = g.n;
    LineSystem ls{n, {}};
    for (int l = 1; l <= 2 * n - 1; ++l) {
        const int d = l - n;
        const int size = line_size(n, l);
        const int i0 = std::max(1, 1 - d);
        std::vector<double> line(static_cast<std::size_t>(size));
        for (int k = 0; k < size; ++k) {
            line[static_cast<std::size_t>(size - 1 - k)] = g.at(i0 + k, i0 + k + d);
        }
        ls.lines.push_back(line);
    }
    return ls;
}

Outcome c1_normalization() {
    for (int n = 1; n <= 6; ++n) {
        if (normalization_constant(n).value != hook_product(n)) {
            return {false, fmt("N=%d differs from the hook-length product", n)};
        }
    }
    std::string detail = "exact for N<=6";
    bool ok = true;
    for (const char* dist : {"uniform", "exp"}) {
        const auto d = HeightDistribution::parse(dist);
        auto rng = make_stream(101, 0);
        const std::uint64_t budget = 1'000'000;
        RejectionStats st;
        while (st.attempts < budget) {
            try {
                rejection_sample(2, d, rng, budget - st.attempts, &st);
            } catch (const ResourceLimit&) {
                break;
            }
        }
        const double p = 1.0 / 12;
        const double se = std::sqrt(p * (1 - p) / static_cast<double>(st.attempts));
        const double z = (st.acceptance_rate() - p) / se;
        ok = ok && std::abs(z) < 3.0;
        detail += fmt("; %s rate %.5f over %llu attempts (z=%.2f)", dist, st.acceptance_rate(),
                      static_cast<unsigned long long>(st.attempts), z);
    }
    return {ok, detail};
}

Outcome c2_coordinates() {
    auto rng = make_stream(202, 0);
    std::uniform_int_distribution<int> pick_n(1, 6);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto u = HeightDistribution::uniform();
    int round_trip_failures = 0;
    int equivalence_failures = 0;
    int violated = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = pick_n(rng);
        auto g = tableau_sample(n, u, rng);
        const auto ls = grid_to_lines(g);
        if (!(lines_to_grid(ls) == g) || !(grid_to_lines(lines_to_grid(ls)) == ls) || !interlacing_valid(ls)) {
            ++round_trip_failures;
        }
        // Perturb one entry; half of the time the grid becomes invalid.
        std::uniform_int_distribution<int> pick_cell(0, n * n - 1);
        g.heights[static_cast<std::size_t>(pick_cell(rng))] = unif(rng);
        const bool grid_ok = validate_grid(g);
        violated += !grid_ok;
        if (grid_ok != interlacing_valid(raw_lines(g))) {
            ++equivalence_failures;
        }
    }
    return {round_trip_failures == 0 && equivalence_failures == 0,
            fmt("10000 trials, round-trip failures %d, equivalence failures %d (%d perturbed grids invalid)",
                round_trip_failures, equivalence_failures, violated)};
}

Outcome c3_sampler_law() {
    ExperimentSpec s;
    s.kind = ExperimentKind::KernelValidate;
    s.n = 2;
    s.samples = 100000;
    s.seed = 303;
    s.bins = 50;
    s.e0_requests = {{2, 0.7}};
    const auto m = run_kernel_validate(s);
    const double ks = m.summary["max_marginal_ks"].get<double>();
    const double gap = m.summary["central_gap_sq_mean"].get<double>();
    return {ks < 0.02 && std::abs(gap - 0.4) <= 0.01,
            fmt("max marginal KS %.4f (< 0.02), E[(y1-y2)^2] = %.4f (0.400 +- 0.010)", ks, gap)};
}

Outcome c4_kernel() {
    ExperimentSpec s;
    s.kind = ExperimentKind::KernelValidate;
    s.n = 3;
    s.samples = 1000000;
    s.seed = 404;
    s.bins = 50;
    s.e0_requests = {{3, 0.7}};
    const auto m = run_kernel_validate(s);
    double mass_err = 0.0;
    for (const auto& l : m.summary["lines"]) {
        mass_err = std::max(mass_err, std::abs(l["rho1_integral"].get<double>() - l["expected_count"].get<double>()));
    }
    const double sup = m.summary["max_density_sup_error"].get<double>();
    const auto& e0 = m.summary["e0"][0];
    const double e0_err = std::abs(e0["value"].get<double>() - e0["mc_oracle"].get<double>());
    return {sup < 0.05 && mass_err < 1e-6 && e0_err < 0.01,
            fmt("density sup error %.4f (< 0.05, 50 bins), mass error %.1e (< 1e-6), E0(3,0.7) = %.5f vs MC %.5f",
                sup, mass_err, e0["value"].get<double>(), e0["mc_oracle"].get<double>())};
}

Outcome c5_limit_shape() {
    ExperimentSpec s;
    s.kind = ExperimentKind::Shape;
    s.n = 100;
    s.samples = 200;
    s.seed = 505;
    s.resolution = 40;
    const auto m = run_shape(s);
    const double anti = m.summary["antidiagonal_max_error"].get<double>();
    const double prof = m.summary["boundary_profile_max_error"].get<double>();
    const double mc = m.summary["mc_max_deviation"].get<double>();
    // The solved height must satisfy int_{c_S}^{h} rho_1 = min(x, y), checked by quadrature.
    auto rng = make_stream(505, 1);
    std::uniform_real_distribution<double> unif(0.02, 0.98);
    double resid = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double x = unif(rng);
        const double y = unif(rng);
        const auto q = ShapeQuery::at(x, y);
        const auto h = shape_height(x, y);
        const double c = support_bounds(q.S).first;
        resid = std::max(resid, std::abs(rho1_integral(q.S, c, h.h) - std::min(x, y)));
    }
    return {anti < 1e-8 && prof < 1e-8 && resid < 1e-8 && mc < 0.02,
            fmt("anti-diagonal %.1e, boundary profiles %.1e, integral equation residual %.1e, MC N=100 deviation %.4f",
                anti, prof, resid, mc)};
}

Outcome c6_johnstone() {
    double c[3];
    double err[3];
    const int ns[3] = {20, 40, 80};
    for (int k = 0; k < 3; ++k) {
        const int n = ns[k];
        err[k] = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double X = -2.0 + 4.0 * i / 400.0;
            const auto [p, ai] = johnstone_check(n, n, n, X);
            err[k] = std::max(err[k], std::abs(p - ai));
        }
        c[k] = err[k] * std::pow(n, 2.0 / 3.0);
    }
    const double cmax = std::max({c[0], c[1], c[2]});
    const double cmin = std::min({c[0], c[1], c[2]});
    return {err[0] > err[1] && err[1] > err[2] && cmax / cmin <= 2.0,
            fmt("sup errors %.4f %.4f %.4f; n^{2/3} * error = %.3f %.3f %.3f (spread %.2f <= 2)", err[0], err[1],
                err[2], c[0], c[1], c[2], cmax / cmin)};
}

// det(1 - K_Ai) on (v, v + 14) with the kernel built from its integral representation.
double integral_form_det(double v, int m) {
    const auto q = gauss_legendre(m, v, std::max(v + 14.0, 8.0));
    const auto u = composite_gauss_legendre({0, 2, 4, 6, 8, 10, 12, 14, 16, 20, 24}, 20);
    Eigen::MatrixXd A(m, static_cast<Eigen::Index>(u.x.size()));
    for (int r = 0; r < m; ++r) {
        for (std::size_t k = 0; k < u.x.size(); ++k) {
            A(r, static_cast<Eigen::Index>(k)) = airy_unchecked(q.x[r] + u.x[k]).ai * std::sqrt(u.w[k]);
        }
    }
    Eigen::MatrixXd K = A * A.transpose();
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(m, m);
    for (int r = 0; r < m; ++r) {
        for (int s = 0; s < m; ++s) {
            M(r, s) -= std::sqrt(q.w[r]) * K(r, s) * std::sqrt(q.w[s]);
        }
    }
    return M.partialPivLu().determinant();
}

Outcome c7_fredholm() {
    double worst_conv = 0.0;
    for (int i = 0; i <= 28; ++i) {
        const double v = -5.0 + 0.25 * i;
        const auto r = fredholm_det_airy({0.0}, {v});
        const double twice = fredholm_det_airy({0.0}, {v}, {}, 2 * r.nodes).value;
        worst_conv = std::max({worst_conv, r.delta, std::abs(twice - r.value)});
    }
    const double inf = std::numeric_limits<double>::infinity();
    double worst_single = 0.0;
    for (double v : {-4.0, -2.0, -1.0, 0.0, 1.5}) {
        const double single = fredholm_det_airy({0.0}, {v}).value;
        worst_single = std::max({worst_single, std::abs(single - integral_form_det(v, 96)),
                                 std::abs(single - fredholm_det_airy({-3.0, 0.0, 2.0}, {inf, v, inf}).value)});
    }
    const double f1 = fredholm_det_airy({0.0}, {-1.0}).value;
    const double f2 = fredholm_det_airy({0.0}, {0.5}).value;
    const double joint = fredholm_det_airy({0.0, 40.0}, {-1.0, 0.5}).value;
    const double fact = std::abs(joint - f1 * f2);
    return {worst_conv < 1e-8 && worst_single < 1e-10 && fact < 1e-4,
            fmt("doubling change %.1e on [-5,2], n=1 vs single-time %.1e, factorization gap at separation 40 %.1e",
                worst_conv, worst_single, fact)};
}

Outcome c8_universality() {
    ExperimentSpec s;
    s.kind = ExperimentKind::Universality;
    s.n = 200;
    s.samples = 2000;
    s.line_s = 0.5;
    s.seed = 2024;
    s.distributions = {"uniform", "exp", "beta:2"};
    const auto m = run_universality(s);
    std::ostringstream tw;
    for (const auto& d : m.summary["distributions"]) {
        tw << fmt(" %s=%.4f/%.4f", d["distribution"].get<std::string>().c_str(), d["ks_tw"].get<double>(),
                  d["ks_tw_linearized"].get<double>());
    }
    // Gated on the exact change of variables through H; the linearised frame is reported.
    const double pair = m.summary["max_pairwise_ks"].get<double>();
    const double pair_lin = m.summary["max_pairwise_ks_linearized"].get<double>();
    const double vs = m.summary["max_ks_tw"].get<double>();
    return {pair < 0.05 && vs < 0.08,
            fmt("max pairwise KS %.4f (< 0.05; linearised frame %.4f); KS vs F2 (through H/linearised):%s (< 0.08)",
                pair, pair_lin, tw.str().c_str())};
}

Outcome c9_corner() {
    ExperimentSpec s;
    s.kind = ExperimentKind::Corner;
    s.n = 50;
    s.samples = 4000;
    s.seed = 909;
    s.distributions = {"uniform", "exp"};
    const auto m = run_corner(s);
    const double ku = m.summary["distributions"][0]["ks_limit"].get<double>();
    const double ke = m.summary["distributions"][1]["ks_limit"].get<double>();
    return {ku < 0.05 && ke < 0.05,
            fmt("uniform N^2(1-x_NN) vs Exp(1) KS %.4f; exponential x_NN - 2 log N vs Gumbel KS %.4f", ku, ke)};
}

Outcome c10_conjugation() {
    auto rng = make_stream(1010, 0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> pick_line(1, 5);
    KernelContext ctx(3);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        Eigen::Matrix3d K;
        Eigen::Matrix3d G;
        const bool airy_case = trial % 2 == 1;
        double X[3];
        double t[3];
        int l[3];
        for (int i = 0; i < 3; ++i) {
            X[i] = airy_case ? -3.0 + 5.0 * unif(rng) : unif(rng);
            t[i] = 2.0 * unif(rng);
            l[i] = pick_line(rng);
        }
        double g[3];
        for (int i = 0; i < 3; ++i) {
            g[i] = std::exp(6.0 * (unif(rng) - 0.5));
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                K(i, j) = airy_case ? airy_process_kernel(X[i], t[i], X[j], t[j]) : kernel_K(ctx, l[i], X[i], l[j], X[j]);
                G(i, j) = g[i] * K(i, j) / g[j];
            }
        }
        const double a = K.determinant();
        const double b = G.determinant();
        const double scale = std::max(std::abs(K(0, 0) * K(1, 1) * K(2, 2)), std::abs(a)) + 1e-300;
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), scale));
    }
    return {worst < 1e-12, fmt("200 random 3x3 cases (finite-N and Airy kernels), worst relative change %.1e", worst)};
}

} // namespace

int main() {
    criterion(1, "normalization", c1_normalization);
    criterion(2, "coordinate equivalence", c2_coordinates);
    criterion(3, "sampler law at N=2", c3_sampler_law);
    criterion(4, "kernel correctness at N=3", c4_kernel);
    criterion(5, "limit shape", c5_limit_shape);
    criterion(6, "Jacobi edge expansion", c6_johnstone);
    criterion(7, "Tracy-Widom / Fredholm", c7_fredholm);
    criterion(8, "edge universality at N=200", c8_universality);
    criterion(9, "corner laws at N=50", c9_corner);
    criterion(10, "conjugation invariance", c10_conjugation);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
