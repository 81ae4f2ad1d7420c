#pragma once

namespace dsos {

struct AiryPair {
    double ai;
    double aip;
};

/// Ai(x) and Ai'(x) for |x| <= 200 (DomainError beyond).
///
/// Regimes: Maclaurin series in extended precision on [-8, 4.5]; for x > 4.5 the
/// steepest-descent integral e^{-zeta}/pi int_0^inf exp(-sqrt(x) t^2) cos(t^3/3) dt;
/// for x < -8 the oscillatory asymptotic expansion truncated at its smallest term.
AiryPair airy(double x);

double airy_ai(double x);
double airy_ai_prime(double x);

/// Same evaluation without the |x| <= 200 guard; used by quadratures whose nodes
/// can run further into the oscillatory region.
AiryPair airy_unchecked(double x);

} // namespace dsos
