#include "dsos/jacobi.hpp"

#include "dsos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dsos {

double LogValue::value() const {
    if (sign == 0) {
        return 0.0;
    }
    return sign * std::exp(log_abs);
}

namespace {

// One step of the standard recurrence: coefficients of P_{k} from P_{k-1}, P_{k-2}.
struct Step {
    double c1; // multiplies P_{k-1}
    double c2; // multiplies P_{k-2}
};

Step recurrence(int k, double a, double b, double z) {
    const double s = 2.0 * k + a + b;
    const double d = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * z + a * a - b * b) / d;
    const double c2 = -2.0 * (k + a - 1.0) * (k + b - 1.0) * s / d;
    return {c1, c2};
}

} // namespace

LogValue jacobi_eval_log(const JacobiParams& p, double x) {
    if (p.n < 0) {
        throw DomainError("jacobi_eval: negative degree");
    }
    const double z = 1.0 - 2.0 * x;
    const double a = p.a;
    const double b = p.b;
    double prev = 1.0;
    if (p.n == 0) {
        return {0.0, 1};
    }
    double cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (z - 1.0);
    double log_scale = 0.0;
    for (int k = 2; k <= p.n; ++k) {
        const auto st = recurrence(k, a, b, z);
        const double next = st.c1 * cur + st.c2 * prev;
        prev = cur;
        cur = next;
        const double mag = std::max(std::abs(cur), std::abs(prev));
        if (mag > 1e150 || (mag > 0.0 && mag < 1e-150)) {
            cur /= mag;
            prev /= mag;
            log_scale += std::log(mag);
        }
    }
    if (cur == 0.0) {
        return {-std::numeric_limits<double>::infinity(), 0};
    }
    return {log_scale + std::log(std::abs(cur)), cur > 0.0 ? 1 : -1};
}

double jacobi_eval(const JacobiParams& p, double x) {
    if (p.n + p.a + p.b <= 150.0) {
        const double z = 1.0 - 2.0 * x;
        if (p.n == 0) {
            return 1.0;
        }
        double prev = 1.0;
        double cur = (p.a + 1.0) + 0.5 * (p.a + p.b + 2.0) * (z - 1.0);
        for (int k = 2; k <= p.n; ++k) {
            const auto st = recurrence(k, p.a, p.b, z);
            const double next = st.c1 * cur + st.c2 * prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    return jacobi_eval_log(p, x).value();
}

double log_jacobi_norm(const JacobiParams& p) {
    const double n = p.n;
    if (p.n < 0 || n + p.a + 1.0 <= 0.0 || n + p.b + 1.0 <= 0.0 || n + p.a + p.b + 1.0 <= 0.0) {
        throw DomainError("jacobi_norm: factorial argument out of range");
    }
    return std::lgamma(n + p.a + 1.0) + std::lgamma(n + p.b + 1.0) - std::log(2.0 * n + p.a + p.b + 1.0) -
           std::lgamma(n + 1.0) - std::lgamma(n + p.a + p.b + 1.0);
}

double jacobi_norm(const JacobiParams& p) { return std::exp(log_jacobi_norm(p)); }

SymmetricJacobiBasis::SymmetricJacobiBasis(int alpha, int nmax) : alpha_(alpha), nmax_(nmax) {
    if (alpha < 0 || nmax < 0) {
        throw InvalidInput("SymmetricJacobiBasis: alpha and nmax must be nonnegative");
    }
    log_p0_ = -0.5 * log_jacobi_norm({0, double(alpha), double(alpha)});
    sqrt_beta_.assign(static_cast<std::size_t>(nmax + 1), 0.0);
    // Monic Gegenbauer-type recurrence in z: beta_k = k(k+2a)/((2k+2a+1)(2k+2a-1)).
    for (int k = 1; k <= nmax; ++k) {
        const double kk = k;
        const double a2 = 2.0 * alpha;
        sqrt_beta_[k] = std::sqrt(kk * (kk + a2) / ((2.0 * kk + a2 + 1.0) * (2.0 * kk + a2 - 1.0)));
    }
}

void SymmetricJacobiBasis::eval_ratio(double x, std::span<double> r) const {
    const double z = 1.0 - 2.0 * x;
    const std::size_t count = std::min(r.size(), static_cast<std::size_t>(nmax_ + 1));
    if (count == 0) {
        return;
    }
    r[0] = 1.0;
    if (count == 1) {
        return;
    }
    r[1] = z / sqrt_beta_[1];
    for (std::size_t k = 1; k + 1 < count; ++k) {
        r[k + 1] = (z * r[k] - sqrt_beta_[k] * r[k - 1]) / sqrt_beta_[k + 1];
    }
}

} // namespace dsos
