#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dsos {

/// Nodes and weights of a one-dimensional quadrature formula.
struct QuadratureNodes {
    std::vector<double> x;
    std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Rules are computed once per n and cached.
const QuadratureNodes& gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped affinely onto [a, b].
QuadratureNodes gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre rule: `points` per panel on each [breaks[k], breaks[k+1]].
QuadratureNodes composite_gauss_legendre(const std::vector<double>& breaks, int points);

/// Integrates f over [a, b] with a fixed n-point Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

/// Adaptive integration: bisects [a, b] until the 20-point and
/// 40-point Gauss-Legendre results agree to `tol` (absolute) on each panel.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-13, int max_depth = 30);

/// Discretisation settings for Fredholm determinants.
///
/// Each integration interval receives `initial_nodes` Gauss-Legendre points; the count
/// doubles until two successive determinants differ by less than `tolerance` or
/// `max_nodes` is exceeded. Semi-infinite intervals (V, inf) are truncated to
/// (V, max(V) + truncation).
struct QuadratureRule {
    std::string scheme = "gauss-legendre";
    int initial_nodes = 32;
    int max_nodes = 512;
    double tolerance = 1e-8;
    double truncation = 14.0;
    std::string transformation = "affine";
};

} // namespace dsos
