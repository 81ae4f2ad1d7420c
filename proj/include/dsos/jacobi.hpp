#pragma once

#include <span>
#include <vector>

namespace dsos {

/// Degree and parameters of a rescaled Jacobi polynomial P~_n^{(a,b)}(x) = P_n^{(a,b)}(1 - 2x).
struct JacobiParams {
    int n = 0;
    double a = 0.0;
    double b = 0.0;
};

/// sign * exp(log_abs); sign is 0 for an exact zero.
struct LogValue {
    double log_abs = 0.0;
    int sign = 1;
    double value() const;
};

/// P~_n^{(a,b)}(x) by the three-term recurrence in z = 1 - 2x.
/// For n + a + b > 150 the recurrence is run with periodic rescaling and the
/// result is rebuilt from its logarithm (it may overflow to +-inf).
double jacobi_eval(const JacobiParams& p, double x);

/// Overflow-free form of jacobi_eval.
LogValue jacobi_eval_log(const JacobiParams& p, double x);

/// N_n^{(a,b)} = int_0^1 x^a (1-x)^b P~_n^2 dx
///             = Gamma(n+a+1) Gamma(n+b+1) / ((2n+a+b+1) n! Gamma(n+a+b+1)).
double jacobi_norm(const JacobiParams& p);
double log_jacobi_norm(const JacobiParams& p);

/// Orthonormal polynomials for the weight (x(1-x))^alpha on [0,1].
///
/// eval_ratio fills r[k] = p_k(x) / p_0 for k = 0..nmax, with p_0 = N_0^{-1/2} constant;
/// callers combine r with log_p0() to keep large prefactors in log space.
class SymmetricJacobiBasis {
public:
    SymmetricJacobiBasis() = default;
    SymmetricJacobiBasis(int alpha, int nmax);

    int alpha() const noexcept { return alpha_; }
    int nmax() const noexcept { return nmax_; }
    double log_p0() const noexcept { return log_p0_; }

    void eval_ratio(double x, std::span<double> r) const;

private:
    int alpha_ = 0;
    int nmax_ = 0;
    double log_p0_ = 0.0;
    std::vector<double> sqrt_beta_; // sqrt_beta_[k] couples degrees k and k-1
};

} // namespace dsos
