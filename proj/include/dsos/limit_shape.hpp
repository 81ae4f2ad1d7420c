#pragma once

#include "dsos/distribution.hpp"

#include <array>
#include <utility>
#include <vector>

namespace dsos {

/// Support (c_S, d_S) = (1/2 -+ sqrt(S(2-S))/2) of the scaled line density; S in (0,2).
std::pair<double, double> support_bounds(double S);

/// Line density rho_1(y, S) = sqrt((d_S - y)(y - c_S)) / (pi y (1-y)) on the open support,
/// 0 outside.
double density_rho1(double y, double S);

/// int_lo^hi rho_1(y, S) dy for c_S <= lo <= hi <= d_S, after y = c + (d-c) sin^2(theta),
/// which removes the square-root endpoint behaviour (and the 1/sqrt pole at S = 1).
double rho1_integral(double S, double lo, double hi);

struct ShapeQuery {
    double x = 0.0;
    double y = 0.0;
    double S = 0.0;       // 1 + x - y
    double t = 0.0;       // x / S
    double d_tilde = 0.0; // sqrt(S(2-S))

    static ShapeQuery at(double x, double y);
};

struct ShapeHeight {
    double h = 0.0;
    double v = 0.0;
    bool boundary = false; // residual failed to bracket; h is the nearer end of the support
};

/// Interior height of the limiting surface at (x, y) in the open unit square.
///
/// Solves G(v) = min(x, y) for v in [-1 + 1e-12, 1 - 1e-12] by bisection, where
///   G(v) = (arcsin v + pi/2 - c (arctan(c v / sqrt(1 - v^2)) + pi/2)) / pi,  c = |1 - S|,
/// is the closed form of int_{c_S}^{h} rho_1 with h = (1 + v sqrt(S(2-S))) / 2.
ShapeHeight shape_height(double x, double y);

/// The closed-form counting function G(v) above.
double shape_mass(double v, double S);

/// Boundary profiles {h(x,1), h(1,x), h(x,0), h(0,x)} of the limiting surface.
std::array<double, 4> boundary_profiles(double x);

/// Support of line S for a general law: quantiles of the uniform-case endpoints.
std::pair<double, double> support_general(double S, const HeightDistribution& d);

struct SurfacePoint {
    double x;
    double y;
    double h;
};

/// The surface on a (resolution+1)^2 grid over [0,1]^2; edges use boundary_profiles.
std::vector<SurfacePoint> surface_grid(int resolution);

} // namespace dsos
