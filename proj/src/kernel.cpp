#include "dsos/kernel.hpp"

#include "dsos/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dsos {

namespace {

double log_factorial(int k) { return std::lgamma(k + 1.0); }

double log_weight(int alpha, double x) {
    if (alpha == 0) {
        return 0.0;
    }
    const double w = x * (1.0 - x);
    if (!(w > 0.0)) {
        return -std::numeric_limits<double>::infinity();
    }
    return alpha * std::log(w);
}

} // namespace

KernelContext::KernelContext(int n, int line_offset) : n_(n), offset_(line_offset) {
    if (n < 1) {
        throw InvalidInput("KernelContext: n must be positive");
    }
    bases_.reserve(static_cast<std::size_t>(n));
    for (int alpha = 0; alpha < n; ++alpha) {
        bases_.emplace_back(alpha, n - alpha);
    }
}

int KernelContext::internal_line(int l) const {
    const int li = l + offset_;
    if (li < 1 || li > 2 * n_ - 1) {
        std::ostringstream msg;
        msg << "kernel: line " << l << " outside 1.." << 2 * n_ - 1;
        throw InvalidInput(msg.str());
    }
    return li;
}

int KernelContext::line_size(int l) const { return n_ - std::abs(l - n_); }

int KernelContext::weight_exponent(int l) const { return std::abs(n_ - l); }

int KernelContext::alpha(int s, int t) const { return std::min(line_size(s), line_size(t)); }

int KernelContext::degree(int j, int l) const { return left_half(l) ? l - j : 2 * n_ - l - j; }

double KernelContext::log_gauge(int j, int l) const {
    const int nl = line_size(l);
    if (j < 1 || j > nl) {
        throw InvalidInput("log_gauge: index outside 1..N(l)");
    }
    // (l-j)! * sqrt(N_deg) simplifies on both halves to
    // sqrt((N-j)!^2 (l-j)! / ((2N-2j+1) (2N-l-j)!)).
    return 0.5 * (2.0 * log_factorial(n_ - j) + log_factorial(l - j) - std::log(2.0 * n_ - 2.0 * j + 1.0) -
                  log_factorial(2 * n_ - l - j));
}

const SymmetricJacobiBasis& KernelContext::basis(int l) const {
    return bases_[static_cast<std::size_t>(weight_exponent(l))];
}

namespace {

// int_0^u (u-y)^m / m! (y(1-y))^e dy, exact Gauss-Legendre for the polynomial integrand.
double virtual_psi(int m, int e, double u) {
    if (!(u > 0.0)) {
        return 0.0;
    }
    const int q = (m + 2 * e) / 2 + 1;
    const auto& ref = gauss_legendre(q);
    const double half = 0.5 * u;
    double sum = 0.0;
    for (int k = 0; k < q; ++k) {
        const double y = half * (ref.x[k] + 1.0);
        sum += ref.w[k] * std::pow(u - y, m) * std::pow(y * (1.0 - y), e);
    }
    return sum * half / std::exp(log_factorial(m));
}

// Ratios r_k = p_k / p_0 on line l, degrees 0..N(l)-1.
void ratios(const KernelContext& ctx, int l, double x, std::vector<double>& r) {
    r.assign(static_cast<std::size_t>(std::max(1, ctx.line_size(l))), 0.0);
    ctx.basis(l).eval_ratio(x, r);
}

} // namespace

double KernelContext::psi(int j, int l, double u, double shift) const {
    const int nl = line_size(l);
    if (j < 1 || j > n_) {
        throw InvalidInput("psi: index outside 1..N");
    }
    if (j > nl) {
        if (!left_half(l)) {
            return 0.0;
        }
        return virtual_psi(j - l - 1, n_ - j, u) * std::exp(-shift);
    }
    std::vector<double> r;
    ratios(*this, l, u, r);
    const auto& b = basis(l);
    const double lw = left_half(l) ? log_weight(b.alpha(), u) : 0.0;
    return std::exp(log_gauge(j, l) - shift + b.log_p0() + lw) * r[static_cast<std::size_t>(degree(j, l))];
}

double KernelContext::phi(int j, int l, double v, double shift) const {
    const int nl = line_size(l);
    if (j < 1 || j > n_) {
        throw InvalidInput("phi: index outside 1..N");
    }
    if (j > nl) {
        if (left_half(l)) {
            return 0.0;
        }
        // Propagated forward from line m = 2N - j, the last line that holds index j.
        const int m = 2 * n_ - j;
        return std::exp(-log_gauge(j, m) + shift + basis(m).log_p0()) * virtual_psi(l - m - 1, n_ - j, v);
    }
    std::vector<double> r;
    ratios(*this, l, v, r);
    const auto& b = basis(l);
    const double lw = left_half(l) ? 0.0 : log_weight(b.alpha(), v);
    return std::exp(-log_gauge(j, l) + shift + b.log_p0() + lw) * r[static_cast<std::size_t>(degree(j, l))];
}

double KernelContext::transition(int s, int t, double u, double v) const {
    if (!(s < t)) {
        return 0.0;
    }
    const int m = t - s - 1;
    if (t <= n_) {
        return v < u ? std::pow(u - v, m) / std::exp(log_factorial(m)) : 0.0;
    }
    if (s >= n_) {
        return v > u ? std::pow(v - u, m) / std::exp(log_factorial(m)) : 0.0;
    }
    const int a = n_ - s - 1;
    const int b = t - n_ - 1;
    const double top = std::min(u, v);
    if (!(top > 0.0)) {
        return 0.0;
    }
    const int q = (a + b) / 2 + 1;
    const auto& ref = gauss_legendre(q);
    const double half = 0.5 * top;
    double sum = 0.0;
    for (int k = 0; k < q; ++k) {
        const double y = half * (ref.x[k] + 1.0);
        sum += ref.w[k] * std::pow(u - y, a) * std::pow(v - y, b);
    }
    return sum * half / std::exp(log_factorial(a) + log_factorial(b));
}

namespace {

double kernel_internal(const KernelContext& ctx, int s, double u, int t, double v) {
    const int n = ctx.n();
    std::vector<double> rs;
    std::vector<double> rt;
    ratios(ctx, s, u, rs);
    ratios(ctx, t, v, rt);
    const auto& bs = ctx.basis(s);
    const auto& bt = ctx.basis(t);
    const double ls = bs.log_p0() + (ctx.left_half(s) ? log_weight(bs.alpha(), u) : 0.0);
    const double lt = bt.log_p0() + (ctx.left_half(t) ? 0.0 : log_weight(bt.alpha(), v));
    double sum = 0.0;
    const int shared = ctx.alpha(s, t);
    for (int j = 1; j <= shared; ++j) {
        const double c = std::exp(ctx.log_gauge(j, s) - ctx.log_gauge(j, t) + ls + lt);
        sum += c * rs[static_cast<std::size_t>(ctx.degree(j, s))] * rt[static_cast<std::size_t>(ctx.degree(j, t))];
    }
    if (s < t) {
        // Indices carried by only one of the two lines, through the virtual extensions.
        for (int j = shared + 1; j <= n; ++j) {
            const bool psi_alive = j <= ctx.line_size(s) || ctx.left_half(s);
            const bool phi_alive = j <= ctx.line_size(t) || !ctx.left_half(t);
            if (psi_alive && phi_alive) {
                sum += ctx.psi(j, s, u) * ctx.phi(j, t, v);
            }
        }
        sum -= ctx.transition(s, t, u, v);
    }
    return sum;
}

void check_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string(what) + ": position outside [0,1]");
    }
}

} // namespace

double kernel_K(const KernelContext& ctx, int s, double u, int t, double v) {
    const int si = ctx.internal_line(s);
    const int ti = ctx.internal_line(t);
    check_unit(u, "kernel_K");
    check_unit(v, "kernel_K");
    return kernel_internal(ctx, si, u, ti, v);
}

double kernel_sym(const KernelContext& ctx, int l, double u, double v) {
    const int li = ctx.internal_line(l);
    check_unit(u, "kernel_sym");
    check_unit(v, "kernel_sym");
    std::vector<double> ru;
    std::vector<double> rv;
    ratios(ctx, li, u, ru);
    ratios(ctx, li, v, rv);
    const auto& b = ctx.basis(li);
    const double c = std::exp(2.0 * b.log_p0() + 0.5 * (log_weight(b.alpha(), u) + log_weight(b.alpha(), v)));
    double sum = 0.0;
    for (int k = 0; k < ctx.line_size(li); ++k) {
        sum += ru[static_cast<std::size_t>(k)] * rv[static_cast<std::size_t>(k)];
    }
    return c * sum;
}

double one_point_density(const KernelContext& ctx, int l, double u) { return kernel_sym(ctx, l, u, u); }

double correlation_rho(const KernelContext& ctx, const std::vector<LinePoint>& points) {
    const auto k = static_cast<Eigen::Index>(points.size());
    if (k < 1) {
        throw InvalidInput("correlation_rho: need at least one point");
    }
    Eigen::MatrixXd m(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            m(i, j) = kernel_K(ctx, points[i].line, points[i].x, points[j].line, points[j].x);
        }
    }
    if (k == 1) {
        return m(0, 0);
    }
    return m.partialPivLu().determinant();
}

namespace {

struct Normalised {
    std::vector<int> lines; // internal labels, ascending
    std::vector<double> u;
};

Normalised normalise(const KernelContext& ctx, const std::vector<GapRequest>& requests) {
    if (requests.empty()) {
        throw InvalidInput("gap_probability_E0: no requests");
    }
    std::vector<std::pair<int, double>> items;
    for (const auto& r : requests) {
        if (!(r.u >= 0.0 && r.u <= 1.0)) {
            throw DomainError("gap_probability_E0: threshold outside [0,1]");
        }
        items.emplace_back(ctx.internal_line(r.line), r.u);
    }
    std::sort(items.begin(), items.end());
    Normalised out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0 && items[i].first == items[i - 1].first) {
            throw InvalidInput("gap_probability_E0: repeated line in requests");
        }
        out.lines.push_back(items[i].first);
        out.u.push_back(items[i].second);
    }
    return out;
}

template <class Eval>
GapResult refine(Eval&& eval, const QuadratureRule& quad, int fixed_nodes, const char* method) {
    if (fixed_nodes > 0) {
        return {eval(fixed_nodes), fixed_nodes, 0.0, method};
    }
    if (quad.initial_nodes < 1 || quad.max_nodes < quad.initial_nodes) {
        throw InvalidInput("gap_probability_E0: bad node limits");
    }
    int nodes = quad.initial_nodes;
    double prev = eval(nodes);
    while (nodes * 2 <= quad.max_nodes) {
        nodes *= 2;
        const double cur = eval(nodes);
        const double delta = std::abs(cur - prev);
        if (delta < quad.tolerance) {
            return {cur, nodes, delta, method};
        }
        prev = cur;
        if (nodes * 2 > quad.max_nodes) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "gap_probability_E0: no convergence at " << nodes << " nodes (last values " << prev
                << ", " << cur << ")";
            throw NumericalError(msg.str());
        }
    }
    std::ostringstream msg;
    msg << "gap_probability_E0: max_nodes " << quad.max_nodes << " allows no refinement";
    throw NumericalError(msg.str());
}

double nystrom_single(const KernelContext& ctx, int l, double u, int m) {
    if (u >= 1.0) {
        return 1.0;
    }
    const auto q = gauss_legendre(m, u, 1.0);
    const int nl = ctx.line_size(l);
    const auto& b = ctx.basis(l);
    Eigen::MatrixXd f(m, nl);
    std::vector<double> r;
    for (int i = 0; i < m; ++i) {
        ratios(ctx, l, q.x[i], r);
        const double c = std::exp(b.log_p0() + 0.5 * log_weight(b.alpha(), q.x[i])) * std::sqrt(q.w[i]);
        for (int k = 0; k < nl; ++k) {
            f(i, k) = c * r[static_cast<std::size_t>(k)];
        }
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - f * f.transpose();
    return a.partialPivLu().determinant();
}

// One Gauss-Legendre panel with barycentric interpolation weights.
struct Panel {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> x;
    std::vector<double> w;
    std::vector<double> lambda;
};

Panel make_panel(double a, double b, int p) {
    const auto& ref = gauss_legendre(p);
    Panel panel;
    panel.a = a;
    panel.b = b;
    panel.x.resize(p);
    panel.w.resize(p);
    panel.lambda.resize(p);
    const double half = 0.5 * (b - a);
    for (int k = 0; k < p; ++k) {
        panel.x[k] = a + half * (ref.x[k] + 1.0);
        panel.w[k] = half * ref.w[k];
        // Barycentric weights of Gauss-Legendre points.
        panel.lambda[k] = ((k % 2) ? -1.0 : 1.0) * std::sqrt((1.0 - ref.x[k] * ref.x[k]) * ref.w[k]);
    }
    return panel;
}

// Interpolation coefficients c with f(v) = sum_k c_k f(x_k).
void interp_coeffs(const Panel& panel, double v, Eigen::RowVectorXd& c) {
    const auto p = static_cast<Eigen::Index>(panel.x.size());
    c.setZero(p);
    double den = 0.0;
    for (Eigen::Index k = 0; k < p; ++k) {
        const double d = v - panel.x[k];
        if (d == 0.0) {
            c.setZero(p);
            c(k) = 1.0;
            return;
        }
        c(k) = panel.lambda[k] / d;
        den += c(k);
    }
    c /= den;
}

struct LineData {
    int line = 0;
    double u = 0.0;
    std::vector<Panel> panels;
    std::vector<Eigen::Index> offsets; // first row of each panel
    Eigen::Index rows = 0;
};

double finite_rank(const KernelContext& ctx, const Normalised& req, int p) {
    const int n = ctx.n();
    const std::size_t count = req.lines.size();

    // Per-index gauge, balancing the factorial prefactors across the requested lines.
    std::vector<double> shift(static_cast<std::size_t>(n + 1), 0.0);
    for (int j = 1; j <= n; ++j) {
        double sum = 0.0;
        int used = 0;
        for (int l : req.lines) {
            if (j <= ctx.line_size(l)) {
                sum += ctx.log_gauge(j, l);
                ++used;
            }
        }
        shift[j] = used ? sum / used : ctx.log_gauge(j, n);
    }

    std::vector<LineData> data(count);
    for (std::size_t i = 0; i < count; ++i) {
        auto& d = data[i];
        d.line = req.lines[i];
        d.u = req.u[i];
        std::vector<double> breaks{d.u};
        for (double other : req.u) {
            if (other > d.u && other < 1.0) {
                breaks.push_back(other);
            }
        }
        breaks.push_back(1.0);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            d.offsets.push_back(d.rows);
            d.panels.push_back(make_panel(breaks[k], breaks[k + 1], p));
            d.rows += p;
        }
    }

    // g = (1 + T)^{-1} Psi on the restricted domains, solved from the last line back.
    std::vector<Eigen::MatrixXd> g(count);
    const int q = p + n + 2;
    const auto& ref = gauss_legendre(q);
    Eigen::RowVectorXd coeffs;
    for (std::size_t ii = count; ii-- > 0;) {
        const auto& d = data[ii];
        auto& gi = g[ii];
        gi.setZero(d.rows, n);
        for (std::size_t pi = 0; pi < d.panels.size(); ++pi) {
            const auto& panel = d.panels[pi];
            for (std::size_t k = 0; k < panel.x.size(); ++k) {
                const Eigen::Index row = d.offsets[pi] + static_cast<Eigen::Index>(k);
                const double x = panel.x[k];
                for (int j = 1; j <= n; ++j) {
                    gi(row, j - 1) = ctx.psi(j, d.line, x, shift[j]);
                }
                for (std::size_t mm = ii + 1; mm < count; ++mm) {
                    const auto& dm = data[mm];
                    const bool below_only = dm.line <= n;    // support v < x
                    const bool above_only = d.line >= n;     // support v > x
                    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(n);
                    for (std::size_t pm = 0; pm < dm.panels.size(); ++pm) {
                        const auto& pan = dm.panels[pm];
                        double cuts[3] = {pan.a, pan.b, pan.b};
                        int segs = 1;
                        if (x > pan.a && x < pan.b) {
                            cuts[1] = x;
                            segs = 2;
                        }
                        for (int sgi = 0; sgi < segs; ++sgi) {
                            const double c0 = cuts[sgi];
                            const double c1 = cuts[sgi + 1];
                            if (!(c1 > c0)) {
                                continue;
                            }
                            if (below_only && c0 >= x) {
                                continue;
                            }
                            if (above_only && c1 <= x) {
                                continue;
                            }
                            const double half = 0.5 * (c1 - c0);
                            const auto block = g[mm].middleRows(dm.offsets[pm], static_cast<Eigen::Index>(pan.x.size()));
                            for (int r = 0; r < q; ++r) {
                                const double v = c0 + half * (ref.x[r] + 1.0);
                                const double kv = ctx.transition(d.line, dm.line, x, v);
                                if (kv == 0.0) {
                                    continue;
                                }
                                interp_coeffs(pan, v, coeffs);
                                acc.noalias() += (half * ref.w[r] * kv) * (coeffs * block);
                            }
                        }
                    }
                    gi.row(row) -= acc;
                }
            }
        }
    }

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& d = data[i];
        for (std::size_t pi = 0; pi < d.panels.size(); ++pi) {
            const auto& panel = d.panels[pi];
            for (std::size_t k = 0; k < panel.x.size(); ++k) {
                const Eigen::Index row = d.offsets[pi] + static_cast<Eigen::Index>(k);
                for (int j = 1; j <= n; ++j) {
                    const double f = panel.w[k] * ctx.phi(j, d.line, panel.x[k], shift[j]);
                    if (f != 0.0) {
                        m.row(j - 1) += f * g[i].row(row);
                    }
                }
            }
        }
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - m;
    return a.partialPivLu().determinant();
}

} // namespace

GapResult gap_probability_E0_finite_rank(const KernelContext& ctx, const std::vector<GapRequest>& requests,
                                         const QuadratureRule& quad, int fixed_nodes) {
    const auto req = normalise(ctx, requests);
    return refine([&](int p) { return finite_rank(ctx, req, p); }, quad, fixed_nodes, "finite-rank");
}

GapResult gap_probability_E0(const KernelContext& ctx, const std::vector<GapRequest>& requests,
                             const QuadratureRule& quad, int fixed_nodes) {
    const auto req = normalise(ctx, requests);
    if (req.lines.size() == 1) {
        return refine([&](int m) { return nystrom_single(ctx, req.lines[0], req.u[0], m); }, quad, fixed_nodes,
                      "nystrom");
    }
    return refine([&](int p) { return finite_rank(ctx, req, p); }, quad, fixed_nodes, "finite-rank");
}

double max_height_pdf(const KernelContext& ctx, const std::vector<int>& lines, const std::vector<double>& thresholds,
                      const QuadratureRule& quad, double h) {
    if (lines.empty() || lines.size() != thresholds.size()) {
        throw InvalidInput("max_height_pdf: lines and thresholds must be nonempty and of equal length");
    }
    if (!(h > 0.0)) {
        throw InvalidInput("max_height_pdf: step must be positive");
    }
    for (double u : thresholds) {
        if (!(u - h >= 0.0 && u + h <= 1.0)) {
            throw DomainError("max_height_pdf: threshold too close to the boundary for the stencil");
        }
    }
    std::vector<GapRequest> req(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        req[i] = {lines[i], thresholds[i]};
    }
    const int nodes = gap_probability_E0(ctx, req, quad).nodes;
    const std::size_t dim = lines.size();
    auto mixed = [&](double step) {
        double sum = 0.0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
            double sign = 1.0;
            for (std::size_t i = 0; i < dim; ++i) {
                const bool up = (mask >> i) & 1U;
                req[i].u = thresholds[i] + (up ? step : -step);
                sign *= up ? 1.0 : -1.0;
            }
            sum += sign * gap_probability_E0(ctx, req, quad, nodes).value;
        }
        return sum / std::pow(2.0 * step, static_cast<double>(dim));
    };
    const double coarse = mixed(h);
    const double fine = mixed(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

} // namespace dsos
