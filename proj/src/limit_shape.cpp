#include "dsos/limit_shape.hpp"

#include "dsos/errors.hpp"
#include "dsos/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dsos {

namespace {

constexpr double pi = std::numbers::pi;

void check_line(double S) {
    if (!(S > 0.0 && S < 2.0)) {
        throw DomainError("limit shape: S must lie in (0,2)");
    }
}

} // namespace

std::pair<double, double> support_bounds(double S) {
    check_line(S);
    const double r = 0.5 * std::sqrt(S * (2.0 - S));
    return {0.5 - r, 0.5 + r};
}

double density_rho1(double y, double S) {
    const auto [c, d] = support_bounds(S);
    if (!(y > c && y < d)) {
        return 0.0;
    }
    return std::sqrt((d - y) * (y - c)) / (pi * y * (1.0 - y));
}

double rho1_integral(double S, double lo, double hi) {
    const auto [c, d] = support_bounds(S);
    if (!(lo >= c - 1e-15 && hi <= d + 1e-15 && lo <= hi)) {
        throw DomainError("rho1_integral: limits outside the support");
    }
    const double width = d - c;
    auto theta_of = [&](double y) {
        const double s = std::clamp((y - c) / width, 0.0, 1.0);
        return std::asin(std::sqrt(s));
    };
    // rho dy = 2 (d-c)^2 sin^2 cos^2 / (pi y (1-y)) dtheta.
    auto integrand = [&](double th) {
        const double s = std::sin(th);
        const double co = std::cos(th);
        const double y = c + width * s * s;
        const double yy = y * (1.0 - y);
        if (c == 0.0) {
            // S = 1: y(1-y) = sin^2 cos^2 exactly, the ratio is 1.
            return 2.0 / pi;
        }
        return 2.0 * width * width * s * s * co * co / (pi * yy);
    };
    return integrate_adaptive(integrand, theta_of(lo), theta_of(hi), 1e-14);
}

ShapeQuery ShapeQuery::at(double x, double y) {
    ShapeQuery q;
    q.x = x;
    q.y = y;
    q.S = 1.0 + x - y;
    q.t = q.S > 0.0 ? x / q.S : 0.0;
    q.d_tilde = std::sqrt(std::max(0.0, q.S * (2.0 - q.S)));
    return q;
}

double shape_mass(double v, double S) {
    check_line(S);
    const double c = std::abs(1.0 - S);
    const double root = std::sqrt(std::max(0.0, 1.0 - v * v));
    double arct = 0.0;
    if (root == 0.0) {
        arct = v > 0.0 ? pi / 2 : -pi / 2;
    } else {
        arct = std::atan(c * v / root);
    }
    return (std::asin(v) + pi / 2 - c * (arct + pi / 2)) / pi;
}

ShapeHeight shape_height(double x, double y) {
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) {
        throw DomainError("shape_height: (x,y) must lie in the open unit square");
    }
    const auto q = ShapeQuery::at(x, y);
    const double target = std::min(x, y);
    const double eps = 1e-12;
    double lo = -1.0 + eps;
    double hi = 1.0 - eps;
    ShapeHeight out;
    const double rlo = shape_mass(lo, q.S) - target;
    const double rhi = shape_mass(hi, q.S) - target;
    if (rlo > 0.0 || rhi < 0.0) {
        out.boundary = true;
        out.v = rlo > 0.0 ? lo : hi;
        out.h = 0.5 * (1.0 + out.v * q.d_tilde);
        return out;
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double r = shape_mass(mid, q.S) - target;
        if (std::abs(r) < 1e-15) {
            lo = hi = mid;
            break;
        }
        if (r < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.v = 0.5 * (lo + hi);
    out.h = 0.5 * (1.0 + out.v * q.d_tilde);
    return out;
}

std::array<double, 4> boundary_profiles(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("boundary_profiles: x outside [0,1]");
    }
    const double top = 0.5 * (1.0 + std::sqrt(x * (2.0 - x)));
    const double bottom = 0.5 * (1.0 - std::sqrt(1.0 - x * x));
    return {top, top, bottom, bottom};
}

std::pair<double, double> support_general(double S, const HeightDistribution& d) {
    const auto [c, e] = support_bounds(S);
    const double lo = d.quantile(c);
    const double hi = d.quantile(e);
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("support_general: endpoint diverges (S = 1 with unbounded support)");
    }
    return {lo, hi};
}

std::vector<SurfacePoint> surface_grid(int resolution) {
    if (resolution < 1) {
        throw InvalidInput("surface_grid: resolution must be positive");
    }
    std::vector<SurfacePoint> out;
    out.reserve(static_cast<std::size_t>((resolution + 1) * (resolution + 1)));
    for (int i = 0; i <= resolution; ++i) {
        const double y = double(i) / resolution;
        for (int j = 0; j <= resolution; ++j) {
            const double x = double(j) / resolution;
            double h = 0.0;
            if (i == resolution) {
                h = boundary_profiles(x)[0];
            } else if (j == resolution) {
                h = boundary_profiles(y)[1];
            } else if (i == 0) {
                h = boundary_profiles(x)[2];
            } else if (j == 0) {
                h = boundary_profiles(y)[3];
            } else {
                h = shape_height(x, y).h;
            }
            out.push_back({x, y, h});
        }
    }
    return out;
}

} // namespace dsos
