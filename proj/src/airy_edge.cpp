#include "dsos/airy_edge.hpp"

#include "dsos/airy.hpp"
#include "dsos/errors.hpp"
#include "dsos/jacobi.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dsos {

double airy_kernel(double X, double Y) {
    const auto a = airy_unchecked(X);
    if (std::abs(X - Y) < 1e-7 * std::max(1.0, std::abs(X))) {
        // K(X,X) = Ai'(X)^2 - X Ai(X)^2, corrected to first order in Y - X.
        const double m = 0.5 * (X + Y);
        const auto c = airy_unchecked(m);
        return c.aip * c.aip - m * c.ai * c.ai;
    }
    const auto b = airy_unchecked(Y);
    return (a.ai * b.aip - a.aip * b.ai) / (X - Y);
}

double airy_heat_kernel(double lambda, double X, double Y) {
    if (!(lambda > 0.0)) {
        throw DomainError("airy_heat_kernel: lambda must be positive");
    }
    const double d = X - Y;
    return std::exp(lambda * lambda * lambda / 12.0 - 0.5 * lambda * (X + Y) - d * d / (4.0 * lambda)) /
           std::sqrt(4.0 * std::numbers::pi * lambda);
}

namespace {

// Composite Gauss-Legendre nodes for the u-integral of the extended kernel.
// Block (s, t) with lambda = t - s; `lowest` is the smallest argument offset X.
struct UGrid {
    std::vector<double> u;
    std::vector<double> w; // includes e^{lambda u} and the overall sign
    bool heat = false;     // subtract the Gaussian term
};

UGrid make_ugrid(double lambda, double lowest) {
    UGrid g;
    const auto& ref = gauss_legendre(20);
    auto add = [&](double a, double b, double sign) {
        const int panels = std::max(1, static_cast<int>(std::ceil(b - a)));
        const double width = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double lo = a + p * width;
            for (std::size_t k = 0; k < ref.x.size(); ++k) {
                const double u = lo + 0.5 * width * (ref.x[k] + 1.0);
                g.u.push_back(u);
                g.w.push_back(sign * 0.5 * width * ref.w[k] * std::exp(lambda * u));
            }
        }
    };
    // Ai(z)^2 < 1e-20 for z > 10.
    const double upper = std::max(1.0, 10.5 - lowest);
    if (lambda <= 0.0) {
        add(0.0, upper, 1.0);
    } else if (lambda >= 1.0) {
        add(-40.0 / lambda, 0.0, -1.0);
    } else {
        add(0.0, upper, 1.0);
        g.heat = true;
    }
    return g;
}

double extended_by_quadrature(double X, double s, double Y, double t) {
    const double lambda = t - s;
    const auto g = make_ugrid(lambda, std::min(X, Y));
    double sum = 0.0;
    for (std::size_t k = 0; k < g.u.size(); ++k) {
        sum += g.w[k] * airy_unchecked(X + g.u[k]).ai * airy_unchecked(Y + g.u[k]).ai;
    }
    if (g.heat) {
        sum -= airy_heat_kernel(lambda, X, Y);
    }
    return sum;
}

} // namespace

double airy_process_kernel(double X, double s, double Y, double t) {
    if (!std::isfinite(X) || !std::isfinite(Y) || !std::isfinite(s) || !std::isfinite(t)) {
        throw InvalidInput("airy_process_kernel: non-finite argument");
    }
    if (s == t) {
        return airy_kernel(X, Y);
    }
    return extended_by_quadrature(X, s, Y, t);
}

namespace {

struct Block {
    double time;
    std::vector<double> x;
    std::vector<double> w;
};

double fredholm_once(const std::vector<double>& times, const std::vector<double>& thresholds, double end, int m) {
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(thresholds[i] < end)) {
            continue;
        }
        const auto q = gauss_legendre(m, thresholds[i], end);
        blocks.push_back({times[i], q.x, q.w});
    }
    if (blocks.empty()) {
        return 1.0;
    }
    const auto nb = static_cast<Eigen::Index>(blocks.size());
    const Eigen::Index dim = nb * m;
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(dim, dim);
    for (Eigen::Index bi = 0; bi < nb; ++bi) {
        const auto& bl = blocks[bi];
        for (Eigen::Index bj = 0; bj < nb; ++bj) {
            const auto& br = blocks[bj];
            Eigen::MatrixXd k(m, m);
            if (bl.time == br.time) {
                std::vector<AiryPair> fa(m);
                std::vector<AiryPair> fb(m);
                for (int r = 0; r < m; ++r) {
                    fa[r] = airy_unchecked(bl.x[r]);
                    fb[r] = airy_unchecked(br.x[r]);
                }
                for (int r = 0; r < m; ++r) {
                    for (int c = 0; c < m; ++c) {
                        const double d = bl.x[r] - br.x[c];
                        k(r, c) = d == 0.0 ? fa[r].aip * fa[r].aip - bl.x[r] * fa[r].ai * fa[r].ai
                                           : (fa[r].ai * fb[c].aip - fa[r].aip * fb[c].ai) / d;
                    }
                }
            } else {
                const double lambda = br.time - bl.time;
                const double lowest = std::min(bl.x.front(), br.x.front());
                const auto g = make_ugrid(lambda, lowest);
                const auto nu = static_cast<Eigen::Index>(g.u.size());
                Eigen::MatrixXd left(m, nu);
                Eigen::MatrixXd right(m, nu);
                for (Eigen::Index c = 0; c < nu; ++c) {
                    for (int r = 0; r < m; ++r) {
                        left(r, c) = airy_unchecked(bl.x[r] + g.u[c]).ai * g.w[c];
                        right(r, c) = airy_unchecked(br.x[r] + g.u[c]).ai;
                    }
                }
                k.noalias() = left * right.transpose();
                if (g.heat) {
                    for (int r = 0; r < m; ++r) {
                        for (int c = 0; c < m; ++c) {
                            k(r, c) -= airy_heat_kernel(lambda, bl.x[r], br.x[c]);
                        }
                    }
                }
            }
            for (int r = 0; r < m; ++r) {
                const double sr = std::sqrt(bl.w[r]);
                for (int c = 0; c < m; ++c) {
                    a(bi * m + r, bj * m + c) -= sr * k(r, c) * std::sqrt(br.w[c]);
                }
            }
        }
    }
    return a.partialPivLu().determinant();
}

} // namespace

FredholmResult fredholm_det_airy(const std::vector<double>& times, const std::vector<double>& thresholds,
                                 const QuadratureRule& quad, int fixed_nodes) {
    if (times.empty() || times.size() != thresholds.size()) {
        throw InvalidInput("fredholm_det_airy: times and thresholds must be nonempty and of equal length");
    }
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || std::isnan(thresholds[i]) || thresholds[i] == -INFINITY) {
            throw InvalidInput("fredholm_det_airy: bad time or threshold");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw InvalidInput("fredholm_det_airy: times must be strictly increasing");
        }
        if (std::isfinite(thresholds[i])) {
            top = std::max(top, thresholds[i]);
        }
    }
    FredholmResult res;
    if (!std::isfinite(top)) {
        res.value = 1.0;
        return res;
    }
    const double end = std::max(top + quad.truncation, 8.0);
    res.truncation_end = end;
    if (fixed_nodes > 0) {
        res.value = fredholm_once(times, thresholds, end, fixed_nodes);
        res.nodes = fixed_nodes;
        return res;
    }
    int m = quad.initial_nodes;
    double prev = fredholm_once(times, thresholds, end, m);
    while (m * 2 <= quad.max_nodes) {
        m *= 2;
        const double cur = fredholm_once(times, thresholds, end, m);
        if (std::abs(cur - prev) < quad.tolerance) {
            res.value = cur;
            res.nodes = m;
            res.delta = std::abs(cur - prev);
            return res;
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "fredholm_det_airy: no convergence by " << m << " nodes (last value " << prev << ")";
    throw NumericalError(msg.str());
}

double tracy_widom_cdf(double v, const QuadratureRule& quad) {
    if (!(v >= -10.0 && v <= 6.0)) {
        throw DomainError("tracy_widom_cdf: v outside [-10, 6]");
    }
    return fredholm_det_airy({0.0}, {v}, quad).value;
}

double tracy_widom_cdf_clamped(double v) {
    if (std::isnan(v)) {
        throw InvalidInput("tracy_widom_cdf_clamped: NaN");
    }
    if (v <= -10.0) {
        return 0.0;
    }
    if (v >= 6.0) {
        return 1.0;
    }
    return tracy_widom_cdf(v);
}

TracyWidomStats tracy_widom_stats(int nodes) {
    auto F = [nodes](double v) { return fredholm_det_airy({0.0}, {v}, {}, nodes).value; };
    const auto& ref = gauss_legendre(16);
    double mean = 0.0;
    double second = 0.0;
    // Panels of unit width on [-10, 6]; the tails beyond contribute below 1e-12.
    for (int p = -10; p < 6; ++p) {
        for (std::size_t k = 0; k < ref.x.size(); ++k) {
            const double v = p + 0.5 * (ref.x[k] + 1.0);
            const double w = 0.5 * ref.w[k];
            const double f = F(v);
            if (v < 0.0) {
                mean -= w * f;
                second += w * 2.0 * (-v) * f;
            } else {
                mean += w * (1.0 - f);
                second += w * 2.0 * v * (1.0 - f);
            }
        }
    }
    double lo = -3.0;
    double hi = 0.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (F(mid) < 0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {mean, second - mean * mean, 0.5 * (lo + hi)};
}

double ScalingFrame::to_X(double x) const {
    return (x - edge) * density_at_edge * std::cbrt(double(n) * n) / sigma;
}

double ScalingFrame::from_X(double X) const {
    return edge + X * sigma / (density_at_edge * std::cbrt(double(n) * n));
}

double ScalingFrame::to_s(double S_x) const { return (S_x - S) * std::cbrt(double(n)) / tau; }

double ScalingFrame::from_s(double s) const { return S + s * tau / std::cbrt(double(n)); }

ScalingFrame scaling_frame_uniform(double S, int n) {
    if (!(S > 0.0 && S < 2.0)) {
        throw DomainError("scaling_frame: S must lie in (0,2)");
    }
    if (S == 1.0) {
        throw DomainError("scaling_frame: degenerate scaling at S = 1 (sigma = 0)");
    }
    if (n < 1) {
        throw InvalidInput("scaling_frame: n must be positive");
    }
    const double root = std::sqrt(S * (2.0 - S));
    const double d = 1.0 - S;
    ScalingFrame f;
    f.S = S;
    f.n = n;
    f.uniform_edge = 0.5 * (1.0 + root);
    f.edge = f.uniform_edge;
    f.sigma = std::cbrt(d * d * d * d / (16.0 * root));
    f.tau = d * d * root / (2.0 * f.sigma);
    f.density_at_edge = 1.0;
    return f;
}

ScalingFrame scaling_frame_general(double S, int n, const HeightDistribution& d) {
    auto f = scaling_frame_uniform(S, n);
    f.edge = d.quantile(f.uniform_edge);
    f.density_at_edge = d.pdf(f.edge);
    if (!std::isfinite(f.edge) || !(f.density_at_edge > 0.0) || !std::isfinite(f.density_at_edge)) {
        throw DomainError("scaling_frame_general: density must be finite and nonzero at the edge");
    }
    return f;
}

double scaled_through_cdf(const ScalingFrame& frame, const HeightDistribution& d, double x) {
    return (d.cdf(x) - frame.uniform_edge) * std::cbrt(double(frame.n) * frame.n) / frame.sigma;
}

JohnstoneVars johnstone_vars(int n, double a, double b) {
    if (n < 1 || a < 0.0 || b < 0.0) {
        throw InvalidInput("johnstone_vars: need n >= 1 and a, b >= 0");
    }
    JohnstoneVars v;
    v.kappa = 2.0 * n + a + b + 1.0;
    v.psi = std::acos((a - b) / v.kappa);
    v.gamma = std::acos((a + b) / v.kappa);
    v.M = std::cos(v.psi + v.gamma);
    const double s4 = std::pow(std::sin(v.psi + v.gamma), 4);
    v.sigma = std::cbrt(2.0 * s4 / (v.kappa * v.kappa * std::sin(v.psi) * std::sin(v.gamma)));
    return v;
}

std::pair<double, double> johnstone_check(int n, double a, double b, double X) {
    const auto jv = johnstone_vars(n, a, b);
    const double x = 0.5 * (1.0 - jv.M) + 0.5 * jv.sigma * X;
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError("johnstone_check: x outside (0,1)");
    }
    const auto p = jacobi_eval_log({n, a, b}, x);
    const double log_pref =
        0.5 * (std::log(jv.kappa) + std::log(jv.sigma) + log_jacobi_norm({n, a, b}) - std::log(2.0) -
               (a + 1.0) * std::log(x) - (b + 1.0) * std::log1p(-x));
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double scaled = p.sign == 0 ? 0.0 : sign * p.sign * std::exp(p.log_abs - log_pref);
    return {scaled, airy_ai(X)};
}

double corner_cdf(int n, const HeightDistribution& d, double X) {
    if (n < 1) {
        throw InvalidInput("corner_cdf: n must be positive");
    }
    const double h = d.cdf(X);
    if (h <= 0.0) {
        return 0.0;
    }
    return std::exp(double(n) * n * std::log(h));
}

} // namespace dsos
