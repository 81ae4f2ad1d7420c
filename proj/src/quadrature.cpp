#include "dsos/quadrature.hpp"

#include "dsos/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace dsos {

namespace {

QuadratureNodes compute_gauss_legendre(int n) {
    QuadratureNodes q;
    q.x.resize(n);
    q.w.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, refined by Newton on P_n.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        // Recompute derivative at the converged node.
        double p0 = 1.0;
        double p1 = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        q.x[i] = -z;
        q.x[n - 1 - i] = z;
        q.w[i] = w;
        q.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        q.x[n / 2] = 0.0;
    }
    return q;
}

} // namespace

const QuadratureNodes& gauss_legendre(int n) {
    if (n < 1) {
        throw InvalidInput("gauss_legendre: node count must be positive");
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<QuadratureNodes>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<QuadratureNodes>(compute_gauss_legendre(n));
    }
    return *slot;
}

QuadratureNodes gauss_legendre(int n, double a, double b) {
    const auto& ref = gauss_legendre(n);
    QuadratureNodes q;
    q.x.resize(n);
    q.w.resize(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (int i = 0; i < n; ++i) {
        q.x[i] = mid + half * ref.x[i];
        q.w[i] = half * ref.w[i];
    }
    return q;
}

QuadratureNodes composite_gauss_legendre(const std::vector<double>& breaks, int points) {
    QuadratureNodes q;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        if (!(breaks[k + 1] > breaks[k])) {
            continue;
        }
        auto panel = gauss_legendre(points, breaks[k], breaks[k + 1]);
        q.x.insert(q.x.end(), panel.x.begin(), panel.x.end());
        q.w.insert(q.w.end(), panel.w.begin(), panel.w.end());
    }
    return q;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    const auto q = gauss_legendre(n, a, b);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += q.w[i] * f(q.x[i]);
    }
    return sum;
}

namespace {

double adaptive_step(const std::function<double(double)>& f, double a, double b, double coarse,
                     double tol, int depth) {
    const double fine = integrate_gl(f, a, b, 40);
    if (std::abs(fine - coarse) <= tol || depth <= 0) {
        return fine;
    }
    const double m = 0.5 * (a + b);
    return adaptive_step(f, a, m, integrate_gl(f, a, m, 20), 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, integrate_gl(f, m, b, 20), 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          int max_depth) {
    if (a == b) {
        return 0.0;
    }
    return adaptive_step(f, a, b, integrate_gl(f, a, b, 20), tol, max_depth);
}

} // namespace dsos
