#include "dsos/airy.hpp"

#include "dsos/errors.hpp"
#include "dsos/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace dsos {

namespace {

// Ai(0) and -Ai'(0).
constexpr long double c1 = 0.355028053887817239260063186004183176L;
constexpr long double c2 = 0.258819403792806798405183560189203963L;

AiryPair maclaurin(double xd) {
    // Ai = c1 f - c2 g, f = sum 3^k (1/3)_k x^{3k}/(3k)!, g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!.
    const long double x = xd;
    const long double x3 = x * x * x;
    long double f = 1.0L;
    long double g = x;
    long double fp = 0.0L;
    long double gp = 1.0L;
    long double tf = 1.0L; // current term of f
    long double tg = x;    // current term of g
    for (int k = 1; k < 200; ++k) {
        tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
        tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
        f += tf;
        g += tg;
        // d/dx of x^{3k} term is 3k/x times it; of x^{3k+1} term is (3k+1)/x times it.
        if (x != 0.0L) {
            fp += tf * (3.0L * k) / x;
            gp += tg * (3.0L * k + 1.0L) / x;
        }
        if (std::fabs(tf) + std::fabs(tg) < 1e-30L * (std::fabs(f) + std::fabs(g) + 1.0L)) {
            break;
        }
    }
    return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

AiryPair positive_integral(double x) {
    // Ai(x)  = e^{-zeta}/pi int_0^inf exp(-r t^2) cos(t^3/3) dt,        r = sqrt(x)
    // Ai'(x) = -r Ai(x) - e^{-zeta}/(2 pi r) int_0^inf t^2 exp(-r t^2) cos(t^3/3) dt
    const double r = std::sqrt(x);
    const double zeta = 2.0 / 3.0 * x * r;
    const double top = std::sqrt(46.0 / r);
    const int panels = 8;
    const auto& ref = gauss_legendre(24);
    double i0 = 0.0;
    double i2 = 0.0;
    const double width = top / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = p * width;
        for (std::size_t k = 0; k < ref.x.size(); ++k) {
            const double t = a + 0.5 * width * (ref.x[k] + 1.0);
            const double w = 0.5 * width * ref.w[k];
            const double e = std::exp(-r * t * t) * std::cos(t * t * t / 3.0);
            i0 += w * e;
            i2 += w * t * t * e;
        }
    }
    const double pref = std::exp(-zeta) / std::numbers::pi;
    const double ai = pref * i0;
    return {ai, -r * ai - pref * i2 / (2.0 * r)};
}

AiryPair negative_asymptotic(double x) {
    // Ai(-z) ~ (cos(chi) P + sin(chi) Q) / (sqrt(pi) z^{1/4}),  chi = zeta - pi/4
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    double u = 1.0; // u_0
    double p = 0.0;
    double q = 0.0;
    double pv = 0.0;
    double qv = 0.0;
    double prev_mag = INFINITY;
    double zeta_pow = 1.0;
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            // u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k)
            u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
            zeta_pow *= zeta;
        }
        const double term = u / zeta_pow;
        if (std::abs(term) > prev_mag) {
            break;
        }
        prev_mag = std::abs(term);
        const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        const double vterm = v / zeta_pow;
        // Sign pattern (-1)^{floor(k/2)}; even k feed P, odd k feed Q.
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p += sign * term;
            pv += sign * vterm;
        } else {
            q += sign * term;
            qv += sign * vterm;
        }
        if (prev_mag < 1e-17) {
            break;
        }
    }
    const double chi = zeta - std::numbers::pi / 4.0;
    const double s = std::sin(chi);
    const double c = std::cos(chi);
    const double z4 = std::sqrt(std::sqrt(z));
    const double sq = std::sqrt(std::numbers::pi);
    const double ai = (c * p + s * q) / (sq * z4);
    const double aip = z4 / sq * (s * pv - c * qv);
    return {ai, aip};
}

} // namespace

AiryPair airy_unchecked(double x) {
    if (std::isnan(x)) {
        throw DomainError("airy: NaN argument");
    }
    if (x > 4.5) {
        if (x > 104.0) {
            return {0.0, -0.0};
        }
        return positive_integral(x);
    }
    if (x >= -8.0) {
        return maclaurin(x);
    }
    return negative_asymptotic(x);
}

AiryPair airy(double x) {
    if (!(std::abs(x) <= 200.0)) {
        throw DomainError("airy: |x| > 200");
    }
    return airy_unchecked(x);
}

double airy_ai(double x) { return airy(x).ai; }

double airy_ai_prime(double x) { return airy(x).aip; }

} // namespace dsos
