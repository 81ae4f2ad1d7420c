#pragma once

#include "dsos/jacobi.hpp"
#include "dsos/quadrature.hpp"

#include <string>
#include <vector>

namespace dsos {

/// Precomputed ingredients of the finite-N correlation kernel on lines 1..2N-1.
///
/// The kernel has the form
///   K(s,u; t,v) = sum_j Psi_j^(s)(u) Phi_j^(t)(v) - [s < t] phi^(s,t)(u,v),
/// where on line l the weight exponent is |N - l| and Psi/Phi are built from rescaled
/// Jacobi polynomials with parameters (|N-l|, |N-l|). On the left half (l <= N) the
/// weight sits on Psi, on the right half on Phi. The factorial prefactors are kept as
/// logarithms: log_gauge(j, l) = log((l-j)!) + (1/2) log N_deg.
class KernelContext {
public:
    explicit KernelContext(int n, int line_offset = 0);

    int n() const noexcept { return n_; }
    int line_offset() const noexcept { return offset_; }
    int line_count() const noexcept { return 2 * n_ - 1; }
    int line_size(int l) const;
    int weight_exponent(int l) const;
    /// Number of shared terms between two lines: min(N(s), N(t)).
    int alpha(int s, int t) const;
    bool left_half(int l) const { return l <= n_; }
    /// Polynomial degree attached to index j on line l.
    int degree(int j, int l) const;
    double log_gauge(int j, int l) const;
    const SymmetricJacobiBasis& basis(int l) const;

    /// Maps a caller line label to the internal label and checks the range.
    int internal_line(int l) const;

    /// Psi_j^(l)(u) * exp(-shift), Phi_j^(l)(v) * exp(shift). Includes the virtual
    /// left-half functions Psi_j^(s) for j > s.
    double psi(int j, int l, double u, double shift = 0.0) const;
    double phi(int j, int l, double v, double shift = 0.0) const;

    /// Transition kernel phi^(s,t)(u,v) between lines s < t.
    double transition(int s, int t, double u, double v) const;

private:
    int n_;
    int offset_;
    std::vector<SymmetricJacobiBasis> bases_; // by weight exponent 0..N-1
};

/// K(s,u; t,v) for lines 1 <= s,t <= 2N-1 (shifted by the context's offset).
double kernel_K(const KernelContext& ctx, int s, double u, int t, double v);

/// Symmetrised same-line kernel sqrt(w(u) w(v)) sum_n p_n(u) p_n(v).
double kernel_sym(const KernelContext& ctx, int l, double u, double v);

/// One-point density K(l,u; l,u).
double one_point_density(const KernelContext& ctx, int l, double u);

struct LinePoint {
    int line = 0;
    double x = 0.0;
};

/// k-point correlation det[K(l_i, x_i; l_j, x_j)].
double correlation_rho(const KernelContext& ctx, const std::vector<LinePoint>& points);

/// No particle above u on the given line.
struct GapRequest {
    int line = 0;
    double u = 0.0;
};

struct GapResult {
    double value = 0.0;
    int nodes = 0;        // per-panel node count actually used
    double delta = 0.0;   // change over the last doubling
    std::string method;   // "nystrom" or "finite-rank"
};

/// E_0 = det(1 - K) on the union of (u_i, 1) over the requested lines.
///
/// A single line uses Nystrom discretisation with Gauss-Legendre nodes. Several lines
/// use the equivalent N x N determinant det(I - <Phi, (1 + T)^{-1} Psi>), where T is the
/// (nilpotent) transition part; all functions are piecewise polynomials, so every
/// integral is done by panel Gauss-Legendre split at the jumps. Node counts double from
/// quad.initial_nodes until successive values differ by less than quad.tolerance.
/// With fixed_nodes > 0 that node count is used without refinement.
GapResult gap_probability_E0(const KernelContext& ctx, const std::vector<GapRequest>& requests,
                             const QuadratureRule& quad = {}, int fixed_nodes = 0);

/// The finite-rank route for any request set (used as a cross-check on single lines).
GapResult gap_probability_E0_finite_rank(const KernelContext& ctx, const std::vector<GapRequest>& requests,
                                         const QuadratureRule& quad = {}, int fixed_nodes = 0);

/// Joint density of the maxima on the given lines: d^n E_0 / du_1 ... du_n by central
/// differences with step h, extrapolated once (h and h/2). Node counts are frozen at the
/// value converged at the centre so that the stencil sees one discretisation.
double max_height_pdf(const KernelContext& ctx, const std::vector<int>& lines,
                      const std::vector<double>& thresholds, const QuadratureRule& quad = {},
                      double h = 1e-4);

} // namespace dsos
