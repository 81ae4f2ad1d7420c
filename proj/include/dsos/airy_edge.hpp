#pragma once

#include "dsos/distribution.hpp"
#include "dsos/quadrature.hpp"

#include <utility>
#include <vector>

namespace dsos {

/// Single-time Airy kernel (Ai(X)Ai'(Y) - Ai'(X)Ai(Y)) / (X - Y), with its diagonal limit.
double airy_kernel(double X, double Y);

/// Extended Airy kernel:
///   s >= t:  int_0^inf e^{(t-s)u} Ai(u+X) Ai(u+Y) du
///   s <  t: -int_{-inf}^0 e^{(t-s)u} Ai(u+X) Ai(u+Y) du
double airy_process_kernel(double X, double s, double Y, double t);

/// int_R e^{lambda u} Ai(X+u) Ai(Y+u) du for lambda > 0 (a Gaussian in X - Y).
double airy_heat_kernel(double lambda, double X, double Y);

struct FredholmResult {
    double value = 0.0;
    int nodes = 0;
    double delta = 0.0;
    double truncation_end = 0.0;
};

/// det(1 - K^{AiryP}) on the union of (V_i, inf) at times s_1 < ... < s_n, by block
/// Nystrom with Gauss-Legendre nodes on [V_i, T], T = max(max_i V_i + quad.truncation, 8).
/// Thresholds may be +inf (that block is empty).
FredholmResult fredholm_det_airy(const std::vector<double>& times, const std::vector<double>& thresholds,
                                 const QuadratureRule& quad = {}, int fixed_nodes = 0);

/// F_2(v) for v in [-10, 6].
double tracy_widom_cdf(double v, const QuadratureRule& quad = {});

/// F_2 clamped to the tails outside [-10, 6] (F_2(-10) < 1e-8, 1 - F_2(6) < 1e-10).
double tracy_widom_cdf_clamped(double v);

struct TracyWidomStats {
    double mean;
    double variance;
    double median;
};

/// Moments and median of F_2 from quadrature of the Nystrom CDF.
TracyWidomStats tracy_widom_stats(int nodes = 64);

/// Regression constants, computed once with tracy_widom_stats(128) and the
/// 256-node determinant at v = 0.
inline constexpr double kTracyWidomMean = -1.7710868074123;
inline constexpr double kTracyWidomVariance = 0.8131947928212;
inline constexpr double kTracyWidomMedian = -1.8049124089;
inline constexpr double kTracyWidomF2AtZero = 0.96937282835526;

/// Edge scaling data for the line S (S != 1).
struct ScalingFrame {
    double S = 0.0;
    int n = 0;
    double uniform_edge = 0.0;    // x_0(S) = (1 + sqrt(S(2-S))) / 2
    double edge = 0.0;            // x_0(S) or d_S(h) = H^{-1}(x_0(S))
    double sigma = 0.0;           // sigma^3 = (1-S)^4 / (16 sqrt(S(2-S)))
    double tau = 0.0;             // (1-S)^2 sqrt(S(2-S)) / (2 sigma)
    double density_at_edge = 1.0; // h(d_S(h)); 1 for the uniform law

    /// X = (x - edge) h_edge N^{2/3} / sigma.
    double to_X(double x) const;
    double from_X(double X) const;
    /// s = (S_x - S) N^{1/3} / tau.
    double to_s(double S_x) const;
    double from_s(double s) const;
};

ScalingFrame scaling_frame_uniform(double S, int n);
ScalingFrame scaling_frame_general(double S, int n, const HeightDistribution& d);

/// The frame read through H: (H(x) - x_0(S)) N^{2/3} / sigma. Agrees with to_X to first
/// order at the edge and gives identical values for quantile-coupled samples.
double scaled_through_cdf(const ScalingFrame& frame, const HeightDistribution& d, double x);

struct JohnstoneVars {
    double kappa;
    double psi;
    double gamma;
    double M;
    double sigma;
};

JohnstoneVars johnstone_vars(int n, double a, double b);

/// (scaled P~_n^{(a,b)}(x), Ai(X)) at x = (1 - M_n)/2 + sigma_n X / 2. The polynomial is
/// divided by sqrt(kappa sigma N / (2 x^{a+1} (1-x)^{b+1})) and by (-1)^n, the sign of
/// P~_n beyond its largest zero.
std::pair<double, double> johnstone_check(int n, double a, double b, double X);

/// Pr(x_NN <= X) = H(X)^{N^2}.
double corner_cdf(int n, const HeightDistribution& d, double X);

} // namespace dsos
