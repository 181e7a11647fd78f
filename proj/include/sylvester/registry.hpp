#pragma once

// Exact values of simplex probabilities known in closed form. Every entry is
// an expression evaluated on demand through log-gamma / generalized binomials
// or elementary functions; no entry stores a pre-rounded decimal.

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sylvester/distribution.hpp"
#include "sylvester/quad.hpp"
#include "sylvester/specfun.hpp"

namespace sylvester {

struct ClosedFormEntry {
    std::string name;
    Family family;
    std::function<bool(int d, double beta)> matches;
    std::function<double(int d)> value;
    std::function<std::string(int d)> expression;
};

namespace closed_form {

inline constexpr double kKeyTolerance = 1e-12;

inline bool same(double a, double b) { return std::fabs(a - b) <= kKeyTolerance; }

/// Uniform law in the ball (beta = 0), any d.
inline double kingman(int d) {
    const double n = d + 1.0;
    const double log_p = std::log(d + 2.0) - d * std::numbers::ln2 +
                         n * log_gen_binomial(n, 0.5 * n) - log_gen_binomial(n * n, 0.5 * n * n);
    return std::exp(log_p);
}

/// Beta law with beta = 1, any d.
inline double beta_one(int d) {
    const double m = d + 2.0;
    const double log_p = std::log(2.0 * std::numbers::pi * m * (m * m + 1.0) * (m * m + d + 4.0)) -
                         std::log(d + 5.0) - m * (2.0 * d + 5.0) * std::numbers::ln2 +
                         (d + 1.0) * log_gen_binomial(d + 3.0, 0.5 * (d + 3.0)) +
                         log_gen_binomial(m * m, 0.5 * m * m);
    return std::exp(log_p);
}

/// Beta-prime law with beta = d/2 + 1, any d: 4(2d+3) / C(2d+4, d+2).
inline double beta_prime_special(int d) {
    return std::exp(std::log(4.0 * (2.0 * d + 3.0)) - log_gen_binomial(2.0 * d + 4.0, d + 2.0));
}

inline double inv_pi2() { return 1.0 / (std::numbers::pi * std::numbers::pi); }

/// Arcsine law (beta = -1/2), d = 2..5.
inline double arcsine(int d) {
    const double ip2 = inv_pi2();
    switch (d) {
        case 2: return 1.0 / 4.0;
        case 3: return 539.0 / 144.0 * ip2 - 1.0 / 3.0;
        case 4: return 25411.0 / 3670016.0;
        case 5:
            return 1.0 / 3.0 + 113537407.0 / 24192000.0 * ip2 * ip2 -
                   2144238917.0 / 570810240.0 * ip2;
        default: return std::numeric_limits<double>::quiet_NaN();
    }
}

inline std::string arcsine_text(int d) {
    switch (d) {
        case 2: return "1/4";
        case 3: return "539/(144 pi^2) - 1/3";
        case 4: return "25411/3670016";
        case 5: return "1/3 + 113537407/(24192000 pi^4) - 2144238917/(570810240 pi^2)";
        default: return "";
    }
}

/// Semispherical law (beta = 1/2), d = 2..4.
inline double semispherical(int d) {
    switch (d) {
        case 2: return 401.0 / 1280.0;
        case 3: return 1692197.0 / 423360.0 * inv_pi2() - 1.0 / 3.0;
        case 4: return 112433094897.0 / 8598524526592.0;
        default: return std::numeric_limits<double>::quiet_NaN();
    }
}

inline std::string semispherical_text(int d) {
    switch (d) {
        case 2: return "401/1280";
        case 3: return "1692197/(423360 pi^2) - 1/3";
        case 4: return "112433094897/8598524526592";
        default: return "";
    }
}

/// Standard Gaussian law, d = 2, 3.
inline double gaussian(int d) {
    if (d == 2) return 1.0 - 6.0 / std::numbers::pi * std::asin(1.0 / 3.0);
    if (d == 3) return 0.5 - 5.0 / std::numbers::pi * std::asin(0.25);
    return std::numeric_limits<double>::quiet_NaN();
}

inline std::string gaussian_text(int d) {
    if (d == 2) return "1 - (6/pi) asin(1/3)";
    if (d == 3) return "1/2 - (5/pi) asin(1/4)";
    return "";
}

inline std::string kingman_text(int d) {
    const int n = d + 1;
    return std::to_string(d + 2) + "/2^" + std::to_string(d) + " * C(" + std::to_string(n) + ", " +
           std::to_string(n) + "/2)^" + std::to_string(n) + " / C(" + std::to_string(n * n) + ", " +
           std::to_string(n * n) + "/2)";
}

inline std::string beta_one_text(int d) {
    const int m = d + 2;
    return "2 pi " + std::to_string(m) + " (" + std::to_string(m * m + 1) + ") (" +
           std::to_string(m * m + d + 4) + ") / (" + std::to_string(d + 5) + " 2^" +
           std::to_string(m * (2 * d + 5)) + ") * C(" + std::to_string(d + 3) + ", " +
           std::to_string(d + 3) + "/2)^" + std::to_string(d + 1) + " * C(" + std::to_string(m * m) +
           ", " + std::to_string(m * m) + "/2)";
}

inline std::string beta_prime_special_text(int d) {
    return std::to_string(4 * (2 * d + 3)) + " / C(" + std::to_string(2 * d + 4) + ", " +
           std::to_string(d + 2) + ")";
}

}  // namespace closed_form

/// Immutable collection of closed-form entries, searched in order.
class Registry {
public:
    explicit Registry(std::vector<ClosedFormEntry> entries) : entries_(std::move(entries)) {}

    static const Registry& standard() {
        static const Registry registry(default_entries());
        return registry;
    }

    const ClosedFormEntry* find(const Distribution& dist) const {
        for (const auto& e : entries_)
            if (e.family == dist.family && e.matches(dist.d, dist.beta)) return &e;
        return nullptr;
    }

    std::optional<EvalResult> lookup(const Distribution& dist) const {
        const auto* e = find(dist);
        if (e == nullptr) return std::nullopt;
        double v = e->value(dist.d);
        if (auto it = perturbed_.find(dist.label()); it != perturbed_.end()) v *= it->second;
        EvalResult r;
        r.value = v;
        // a handful of correctly rounded operations
        r.abs_error_estimate = 16.0 * std::numeric_limits<double>::epsilon() * std::fabs(v);
        r.method = Method::closed_form;
        return r;
    }

    std::optional<std::string> expression(const Distribution& dist) const {
        const auto* e = find(dist);
        if (e == nullptr) return std::nullopt;
        return e->expression(dist.d);
    }

    /// Copy whose value for the given key (Distribution::label()) is scaled by
    /// `factor`. Test-only fault injection.
    Registry with_perturbation(const std::string& key, double factor) const {
        Registry copy = *this;
        copy.perturbed_[key] = factor;
        return copy;
    }

    const std::vector<ClosedFormEntry>& entries() const { return entries_; }

private:
    static std::vector<ClosedFormEntry> default_entries() {
        namespace cf = closed_form;
        std::vector<ClosedFormEntry> v;
        auto always = [](int) { return std::string("1"); };
        auto one = [](int) { return 1.0; };
        // d+2 = 3 points on a line always span a segment with one point inside
        for (Family f : {Family::gaussian, Family::beta, Family::beta_prime})
            v.push_back({"line", f, [](int d, double) { return d == 1; }, one, always});
        v.push_back({"sphere", Family::beta, [](int d, double b) { return d >= 2 && cf::same(b, -1.0); },
                     [](int) { return 0.0; }, [](int) { return std::string("0"); }});
        v.push_back({"kingman", Family::beta, [](int, double b) { return cf::same(b, 0.0); }, cf::kingman,
                     cf::kingman_text});
        v.push_back({"beta-one", Family::beta, [](int, double b) { return cf::same(b, 1.0); },
                     cf::beta_one, cf::beta_one_text});
        v.push_back({"arcsine", Family::beta,
                     [](int d, double b) { return d >= 2 && d <= 5 && cf::same(b, -0.5); }, cf::arcsine,
                     cf::arcsine_text});
        v.push_back({"semispherical", Family::beta,
                     [](int d, double b) { return d >= 2 && d <= 4 && cf::same(b, 0.5); },
                     cf::semispherical, cf::semispherical_text});
        v.push_back({"betaprime-special", Family::beta_prime,
                     [](int d, double b) { return cf::same(b, 0.5 * d + 1.0); }, cf::beta_prime_special,
                     cf::beta_prime_special_text});
        v.push_back({"gauss", Family::gaussian, [](int d, double) { return d == 2 || d == 3; },
                     cf::gaussian, cf::gaussian_text});
        return v;
    }

    std::vector<ClosedFormEntry> entries_;
    std::map<std::string, double> perturbed_;
};

/// Exact value for the distribution if the registry holds one.
inline std::optional<EvalResult> closed_form_lookup(const Distribution& dist,
                                                    const Registry& registry = Registry::standard()) {
    return registry.lookup(dist);
}

/// Large-d asymptotic 2 sqrt(3) d pi^{-d-1} of the simplex probability for the
/// multivariate Cauchy law (beta-prime with beta = (d+1)/2). An approximation,
/// reported with an unbounded error estimate.
inline EvalResult cauchy_asymptotic(int d) {
    if (d < 1) throw DomainError("cauchy_asymptotic: requires d >= 1");
    EvalResult r;
    r.value = 2.0 * std::sqrt(3.0) * d * std::exp(-(d + 1.0) * std::log(std::numbers::pi));
    r.abs_error_estimate = std::numeric_limits<double>::infinity();
    r.method = Method::asymptotic;
    return r;
}

}  // namespace sylvester
