#pragma once

// Probability that d+2 i.i.d. points of a Gaussian, beta or beta-prime law in
// R^d form a simplex. Quadrature route: twice the expected vertex angle sum of
// a (d+1)-dimensional simplex of the same family, with the beta parameter
// shifted by -1/2 (beta) or +1/2 (beta-prime).

#include <optional>
#include <string>
#include <string_view>

#include "sylvester/anglesums.hpp"
#include "sylvester/distribution.hpp"
#include "sylvester/errors.hpp"
#include "sylvester/quad.hpp"
#include "sylvester/registry.hpp"

namespace sylvester {

enum class SolveMethod { automatic, quadrature, closed_form };

inline std::optional<SolveMethod> parse_solve_method(std::string_view s) {
    if (s == "auto") return SolveMethod::automatic;
    if (s == "quadrature") return SolveMethod::quadrature;
    if (s == "closed-form" || s == "closed_form") return SolveMethod::closed_form;
    return std::nullopt;
}

/// Largest dimension reachable by quadrature (d+2 vertices, see kAngleSumMaxN).
inline constexpr int kMaxQuadratureDim = kAngleSumMaxN - 2;

/// Validity region of the quadrature route, beyond Distribution::validate().
inline void validate_quadrature_route(const Distribution& dist) {
    dist.validate();
    if (dist.d > kMaxQuadratureDim)
        throw DomainError("quadrature route supports d <= " + std::to_string(kMaxQuadratureDim) +
                          ", got d = " + std::to_string(dist.d));
    if (dist.family == Family::beta && dist.d == 1 && dist.beta < -0.5)
        throw DomainError("beta quadrature route requires beta >= -1/2 when d = 1, got " +
                          detail::fmt_num(dist.beta));
    if (dist.family == Family::beta_prime) {
        const double threshold = dist.d + 1.0 / (dist.d + 2.0);
        if (!(2.0 * dist.beta > threshold))
            throw DomainError("beta-prime quadrature requires 2*beta > d + (d+2)^{-1} = " +
                              detail::fmt_num(threshold) + ", got 2*beta = " +
                              detail::fmt_num(2.0 * dist.beta));
    }
}

inline EvalResult sylvester_quadrature(const Distribution& dist, const QuadratureConfig& cfg) {
    validate_quadrature_route(dist);
    const int n = dist.d + 2;
    EvalResult r;
    switch (dist.family) {
        case Family::gaussian: r = gaussian_angle_sum(n, cfg); break;
        case Family::beta: r = beta_angle_sum(n, dist.beta - 0.5, cfg); break;
        case Family::beta_prime: r = beta_prime_angle_sum(n, dist.beta + 0.5, cfg); break;
    }
    r.value *= 2.0;
    r.abs_error_estimate *= 2.0;
    r.imaginary_residual *= 2.0;
    return r;
}

/// p_d(mu) for the three families. `automatic` prefers an exact registry entry
/// and falls back to quadrature.
inline EvalResult sylvester_probability(const Distribution& dist,
                                        SolveMethod method = SolveMethod::automatic,
                                        const QuadratureConfig& cfg = {},
                                        const Registry& registry = Registry::standard()) {
    dist.validate();
    if (method != SolveMethod::quadrature) {
        if (auto exact = registry.lookup(dist)) return *exact;
        if (method == SolveMethod::closed_form)
            throw NotInRegistry("no closed form registered for " + dist.label());
    }
    return sylvester_quadrature(dist, cfg);
}

}  // namespace sylvester
