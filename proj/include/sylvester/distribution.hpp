#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "sylvester/errors.hpp"
#include "sylvester/specfun.hpp"

namespace sylvester {

enum class Family { gaussian, beta, beta_prime };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::gaussian: return "gauss";
        case Family::beta: return "beta";
        case Family::beta_prime: return "betaprime";
    }
    return "unknown";
}

inline std::optional<Family> parse_family(std::string_view s) {
    if (s == "gauss" || s == "gaussian") return Family::gaussian;
    if (s == "beta") return Family::beta;
    if (s == "betaprime" || s == "beta-prime" || s == "beta_prime") return Family::beta_prime;
    return std::nullopt;
}

/// A rotationally invariant law on R^d: standard Gaussian, beta with density
/// proportional to (1-|x|^2)^beta on the unit ball, or beta-prime with
/// density proportional to (1+|x|^2)^{-beta}. Beta with beta = -1 stands for
/// the uniform law on the unit sphere.
struct Distribution {
    Family family = Family::gaussian;
    int d = 1;
    double beta = 0.0;  // unused for the Gaussian family

    static Distribution gaussian(int d) { return {Family::gaussian, d, 0.0}; }
    static Distribution beta_ball(int d, double beta) { return {Family::beta, d, beta}; }
    static Distribution beta_prime(int d, double beta) { return {Family::beta_prime, d, beta}; }

    bool has_beta() const { return family != Family::gaussian; }

    void validate() const {
        if (d < 1) throw DomainError("distribution: dimension must be >= 1, got " + std::to_string(d));
        if (!has_beta()) return;
        if (!std::isfinite(beta)) throw DomainError("distribution: beta must be finite");
        if (family == Family::beta && !(beta >= -1.0))
            throw DomainError("beta distribution requires beta >= -1, got " + detail::fmt_num(beta));
        if (family == Family::beta_prime && !(beta > 0.5 * d))
            throw DomainError("beta-prime distribution requires beta > d/2 = " +
                              detail::fmt_num(0.5 * d) + ", got " + detail::fmt_num(beta));
    }

    std::string label() const {
        std::string s = std::string(to_string(family)) + ":d=" + std::to_string(d);
        if (has_beta()) s += ":beta=" + detail::fmt_num(beta);
        return s;
    }
};

}  // namespace sylvester
