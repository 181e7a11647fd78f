#pragma once

// Scalar special functions: log-gamma, gamma-ratio constants of the
// beta-type densities and the normal CDF on the imaginary axis.

#include <charconv>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "sylvester/errors.hpp"

namespace sylvester {

using ComplexScalar = std::complex<double>;

namespace detail {

// Shortest decimal that reads back as x.
inline std::string fmt_num(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline double checked_exp(double log_value, const char* what) {
    if (log_value > std::log(std::numeric_limits<double>::max()))
        throw OverflowError(std::string(what) + ": result exceeds double range");
    return std::exp(log_value);
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("log_gamma: requires finite x > 0, got " + detail::fmt_num(x));
    return boost::math::lgamma(x);
}

/// ln c_{d,beta} where c_{d,beta} = Gamma(d/2+beta+1) / (pi^{d/2} Gamma(beta+1)).
inline double log_beta_const(int d, double beta) {
    if (d < 1) throw DomainError("beta_const: dimension must be >= 1");
    if (!(beta > -1.0))
        throw DomainError("beta_const: requires beta > -1, got " + detail::fmt_num(beta));
    const double half_d = 0.5 * d;
    return log_gamma(half_d + beta + 1.0) - half_d * std::log(std::numbers::pi) -
           log_gamma(beta + 1.0);
}

/// Normalizing constant of the beta density (1 - |x|^2)^beta on the unit ball of R^d.
inline double beta_const(int d, double beta) {
    return detail::checked_exp(log_beta_const(d, beta), "beta_const");
}

/// ln c~_{d,beta} where c~_{d,beta} = Gamma(beta) / (pi^{d/2} Gamma(beta - d/2)).
inline double log_beta_prime_const(int d, double beta) {
    if (d < 1) throw DomainError("beta_prime_const: dimension must be >= 1");
    const double half_d = 0.5 * d;
    if (!(beta > half_d))
        throw DomainError("beta_prime_const: requires beta > d/2 = " + detail::fmt_num(half_d) +
                          ", got " + detail::fmt_num(beta));
    return log_gamma(beta) - half_d * std::log(std::numbers::pi) - log_gamma(beta - half_d);
}

/// Normalizing constant of the beta-prime density (1 + |x|^2)^{-beta} on R^d.
inline double beta_prime_const(int d, double beta) {
    return detail::checked_exp(log_beta_prime_const(d, beta), "beta_prime_const");
}

/// ln of Gamma(n+1) / (Gamma(k+1) Gamma(n-k+1)).
inline double log_gen_binomial(double n, double k) {
    if (!(n > -1.0) || !(k > -1.0) || !(k < n + 1.0))
        throw DomainError("gen_binomial: requires n > -1 and -1 < k < n+1, got n=" +
                          detail::fmt_num(n) + ", k=" + detail::fmt_num(k));
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

/// Binomial coefficient with real arguments, read through the Gamma function.
inline double gen_binomial(double n, double k) {
    return detail::checked_exp(log_gen_binomial(n, k), "gen_binomial");
}

/// Largest |y| accepted by h_imag_cdf: exp(y^2/2) stays a factor 10 below DBL_MAX.
inline const double kMaxImagArg =
    std::sqrt(2.0 * (std::log(std::numeric_limits<double>::max()) - std::log(10.0)));

/// Below this |y| the power series is summed; above it the asymptotic expansion.
/// At the crossover the optimally truncated asymptotic series is accurate to
/// about exp(-y^2/2) ~ 1e-14 relative.
inline constexpr double kImagCdfCrossover = 8.0;

/// h(y) = (1/sqrt(2 pi)) * integral_0^y exp(t^2/2) dt, so that Phi(i y) = 1/2 + i h(y).
inline double h_imag_cdf(double y) {
    if (std::isnan(y)) throw DomainError("h_imag_cdf: NaN argument");
    const double ay = std::fabs(y);
    if (ay > kMaxImagArg)
        throw OverflowError("h_imag_cdf: |y| = " + detail::fmt_num(ay) + " exceeds " +
                            detail::fmt_num(kMaxImagArg));
    const double inv_sqrt_2pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
    double result;
    if (ay <= kImagCdfCrossover) {
        // sum_k y^{2k+1} / ((2k+1) 2^k k!), all terms positive
        const double y2_half = 0.5 * ay * ay;
        double power = ay;
        double sum = ay;
        for (int k = 1; k < 400; ++k) {
            power *= y2_half / k;
            const double term = power / (2 * k + 1);
            sum += term;
            if (term <= 1e-17 * sum) break;
        }
        result = sum * inv_sqrt_2pi;
    } else {
        // exp(y^2/2)/y * sum_k (2k-1)!! / y^{2k}, truncated at its smallest term
        const double inv_y2 = 1.0 / (ay * ay);
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 400; ++k) {
            const double next = term * (2 * k - 1) * inv_y2;
            if (next >= term) break;
            term = next;
            sum += term;
            if (term <= 1e-17 * sum) break;
        }
        result = std::exp(0.5 * ay * ay - std::log(ay)) * inv_sqrt_2pi * sum;
    }
    return std::signbit(y) ? -result : result;
}

/// Phi(i y) for the standard normal CDF continued to the imaginary axis.
inline ComplexScalar phi_imaginary(double y) { return {0.5, h_imag_cdf(y)}; }

}  // namespace sylvester
