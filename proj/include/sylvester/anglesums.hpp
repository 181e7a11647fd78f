#pragma once

// Expected internal angle sums at the vertices of Gaussian (regular), beta
// and beta-prime simplices with n vertices, evaluated from their
// one-dimensional complex-contour integral representations.
//
// All three integrands have the shape
//     outer(x) * Re[(1/2 + i I(x))^{n-1}],
// whose factors separately overflow for large n while the product stays
// moderate, so magnitudes are combined in log space and exponentiated once.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "sylvester/errors.hpp"
#include "sylvester/quad.hpp"
#include "sylvester/specfun.hpp"

namespace sylvester {

/// Vertex count above which results carry inflated error estimates.
inline constexpr int kAngleSumGuaranteedN = 20;
/// Largest vertex count accepted at all.
inline constexpr int kAngleSumMaxN = 40;

struct GaussianLimit {};
struct BetaVariant {
    double beta;
};
struct BetaPrimeVariant {
    double beta;
};

struct AngleSumQuery {
    int n = 2;
    std::variant<GaussianLimit, BetaVariant, BetaPrimeVariant> variant;
    QuadratureConfig cfg;
};

namespace detail {

inline double log_cosh(double x) {
    const double ax = std::fabs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

inline void check_vertex_count(int n, int min_n, const char* what) {
    if (n < min_n)
        throw DomainError(std::string(what) + ": requires n >= " + std::to_string(min_n) +
                          ", got " + std::to_string(n));
    if (n > kAngleSumMaxN)
        throw DomainError(std::string(what) + ": n = " + std::to_string(n) +
                          " exceeds the supported maximum " + std::to_string(kAngleSumMaxN));
}

// Cancellation in Re[(1/2 + iI)^{n-1}] grows with n; past the guaranteed
// range the error estimate is widened.
inline double widen_for_size(int n, double err) {
    return n > kAngleSumGuaranteedN ? 10.0 * err : err;
}

// Integral of the imaginary part over [-cut, cut], folded onto [0, cut] so the
// odd contributions cancel pointwise before summation.
template <class F>
AdaptiveOutcome imaginary_residual(const F& imag_part, double cut, const QuadratureConfig& cfg) {
    const auto breaks = uniform_breaks(0.0, cut, kInitialPieces);
    return adaptive([&](double x) { return imag_part(x) + imag_part(-x); }, breaks, cfg.abs_tol,
                    cfg.rel_tol, cfg.max_refinements);
}

// Shared evaluator for the beta and beta-prime integrals
//   n * c_out * integral (cosh x)^{-outer_power} Re[(1/2 + i I(x))^{n-1}] dx,
//   I(x) = c_in * integral_0^x (cosh y)^{inner_power} dy.
inline EvalResult beta_type_angle_sum(int n, double log_c_out, double outer_power, double log_c_in,
                                      double inner_power, const QuadratureConfig& cfg) {
    cfg.validate();
    const double c_in = std::exp(log_c_in);
    const double log_outer = std::log(static_cast<double>(n)) + log_c_out;
    const int m = n - 1;

    // |I(x)| <= c_in (1+|x|) cosh(x)^{max(q,0)}, so the integrand is bounded by
    // n c_out (1/2 + c_in)^{n-1} (1+|x|)^{n-1} cosh(x)^{-rate}.
    const double q_plus = std::max(inner_power, 0.0);
    const double rate = outer_power - m * q_plus;
    if (!(rate > 0.0)) throw DomainError("angle sum integral does not converge for these parameters");
    const Envelope env = Envelope::exponential(
        rate, m, log_outer + m * std::log(0.5 + c_in) + rate * std::numbers::ln2);
    const double cut = truncation_point(env, cfg.abs_tol / cfg.truncation_margin);

    const double width = 2.0 / (cfg.inner_grid_factor * std::max(1.0, std::fabs(inner_power)));
    const long panels = std::max(1L, static_cast<long>(std::ceil(cut / width)));
    if (panels > 2'000'000) throw DomainError("angle sum: inner grid too large for these parameters");
    std::vector<double> grid(panels + 1);
    for (long i = 0; i <= panels; ++i) grid[i] = cut * static_cast<double>(i) / panels;
    const auto inner = cumulative_integral(
        [c_in, inner_power](double y) {
            return inner_power == 0.0 ? c_in : c_in * std::exp(inner_power * log_cosh(y));
        },
        grid, Symmetry::even);

    auto log_magnitude = [&](double x, double ix) {
        return log_outer - outer_power * log_cosh(x) + m * std::log(std::hypot(0.5, ix));
    };
    auto real_part = [&](double x) {
        const double ix = inner(x);
        return std::exp(log_magnitude(x, ix)) * std::cos(m * std::atan2(ix, 0.5));
    };
    auto imag_part = [&](double x) {
        const double ix = inner(x);
        return std::exp(log_magnitude(x, ix)) * std::sin(m * std::atan2(ix, 0.5));
    };

    const auto re = integrate_line_impl(real_part, env, cfg, Parity::even);
    if (!re.converged)
        throw NonConvergence("angle sum: outer integral did not converge", re.result.value,
                             re.result.abs_error_estimate);
    const auto im = imaginary_residual(imag_part, re.cut, cfg);

    EvalResult out = re.result;
    const double inner_err = m * inner.max_relative_error() * re.abs_integral;
    out.abs_error_estimate = widen_for_size(n, out.abs_error_estimate + inner_err);
    out.imaginary_residual = std::fabs(im.value);
    out.nodes_used = re.result.nodes_used + im.nodes;
    return out;
}

}  // namespace detail

/// Sum of the normalized internal angles at the vertices of the regular
/// simplex with n vertices (equivalently the expected angle sum of a
/// Gaussian simplex), via n/sqrt(2pi) * integral Re[Phi(ix/sqrt n)^{n-1}] e^{-x^2/2} dx.
inline EvalResult gaussian_angle_sum(int n, const QuadratureConfig& cfg = {}) {
    detail::check_vertex_count(n, 2, "gaussian_angle_sum");
    cfg.validate();
    const int m = n - 1;
    const double dn = n;
    // substituting x = sqrt(n) u leaves an e^{-u^2/2} envelope
    const double log_scale = 1.5 * std::log(dn) - 0.5 * std::log(2.0 * std::numbers::pi);
    const Envelope env = Envelope::gaussian(1.0, m, log_scale);
    auto log_magnitude = [&](double u, double h) {
        return log_scale - 0.5 * dn * u * u + m * std::log(std::hypot(0.5, h));
    };
    auto real_part = [&](double u) {
        const double h = h_imag_cdf(u);
        return std::exp(log_magnitude(u, h)) * std::cos(m * std::atan2(h, 0.5));
    };
    auto imag_part = [&](double u) {
        const double h = h_imag_cdf(u);
        return std::exp(log_magnitude(u, h)) * std::sin(m * std::atan2(h, 0.5));
    };
    const auto re = detail::integrate_line_impl(real_part, env, cfg, Parity::even);
    if (!re.converged)
        throw NonConvergence("gaussian_angle_sum: integral did not converge", re.result.value,
                             re.result.abs_error_estimate);
    const auto im = detail::imaginary_residual(imag_part, re.cut, cfg);
    EvalResult out = re.result;
    // h is accurate to ~1e-14 relative; that error enters (n-1) times
    out.abs_error_estimate =
        detail::widen_for_size(n, out.abs_error_estimate + m * 1e-14 * re.abs_integral);
    out.imaginary_residual = std::fabs(im.value);
    out.nodes_used = re.result.nodes_used + im.nodes;
    return out;
}

/// Checks that the beta angle-sum integral is defined for (n, beta):
/// beta >= -1 for any n >= 3, extended to beta >= -3/2 once n >= 4.
inline void validate_beta_angle_sum(int n, double beta) {
    detail::check_vertex_count(n, 3, "beta_angle_sum");
    if (!std::isfinite(beta)) throw DomainError("beta_angle_sum: beta must be finite");
    const double lower = n >= 4 ? -1.5 : -1.0;
    if (!(beta >= lower))
        throw DomainError("beta_angle_sum: requires beta >= " + detail::fmt_num(lower) + " for n = " +
                          std::to_string(n) + ", got " + detail::fmt_num(beta));
}

/// Expected internal angle sum at the vertices of the beta simplex with n
/// vertices, i.e. the convex hull of n i.i.d. points with density proportional
/// to (1-|x|^2)^beta on the unit ball of R^{n-1}.
inline EvalResult beta_angle_sum(int n, double beta, const QuadratureConfig& cfg = {}) {
    validate_beta_angle_sum(n, beta);
    const double alpha = 2.0 * beta + n - 1.0;
    return detail::beta_type_angle_sum(n, log_beta_const(1, 0.5 * alpha * n), alpha * n + 2.0,
                                       log_beta_const(1, 0.5 * (alpha - 1.0)), alpha, cfg);
}

/// Checks the convergence condition alpha = 2 beta - n + 1 > 1/n.
inline void validate_beta_prime_angle_sum(int n, double beta) {
    detail::check_vertex_count(n, 2, "beta_prime_angle_sum");
    if (!std::isfinite(beta)) throw DomainError("beta_prime_angle_sum: beta must be finite");
    const double alpha = 2.0 * beta - n + 1.0;
    if (!(alpha * n > 1.0))
        throw DomainError("beta_prime_angle_sum: requires 2*beta > n - 1 + 1/n = " +
                          detail::fmt_num(n - 1.0 + 1.0 / n) + ", got beta = " + detail::fmt_num(beta));
}

/// Expected internal angle sum at the vertices of the beta-prime simplex with
/// n vertices in R^{n-1}.
inline EvalResult beta_prime_angle_sum(int n, double beta, const QuadratureConfig& cfg = {}) {
    validate_beta_prime_angle_sum(n, beta);
    const double alpha = 2.0 * beta - n + 1.0;
    return detail::beta_type_angle_sum(n, log_beta_prime_const(1, 0.5 * alpha * n),
                                       alpha * n - 1.0, log_beta_prime_const(1, 0.5 * (alpha + 1.0)),
                                       alpha - 1.0, cfg);
}

inline EvalResult angle_sum(const AngleSumQuery& q) {
    return std::visit(
        [&](const auto& v) -> EvalResult {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, GaussianLimit>)
                return gaussian_angle_sum(q.n, q.cfg);
            else if constexpr (std::is_same_v<V, BetaVariant>)
                return beta_angle_sum(q.n, v.beta, q.cfg);
            else
                return beta_prime_angle_sum(q.n, v.beta, q.cfg);
        },
        q.variant);
}

}  // namespace sylvester
