#pragma once

// One-dimensional adaptive quadrature (Gauss-Kronrod 7/15 with global
// interval bisection) on finite intervals and on the real line, plus a
// cumulative evaluator I(x) = integral_0^x g for nested inner integrals.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "sylvester/errors.hpp"
#include "sylvester/specfun.hpp"

namespace sylvester {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Maximum bisection depth of any subinterval.
    int max_refinements = 20;
    /// The truncated tails may contribute at most abs_tol / truncation_margin.
    double truncation_margin = 10.0;
    /// Inner-integral panels per unit of outer resolution.
    int inner_grid_factor = 4;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw DomainError("QuadratureConfig: rel_tol and abs_tol must be > 0");
        if (max_refinements < 1) throw DomainError("QuadratureConfig: max_refinements must be >= 1");
        if (inner_grid_factor < 1) throw DomainError("QuadratureConfig: inner_grid_factor must be >= 1");
        if (!(truncation_margin >= 1.0))
            throw DomainError("QuadratureConfig: truncation_margin must be >= 1");
    }
};

enum class Method { quadrature, closed_form, asymptotic };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::closed_form: return "closed_form";
        case Method::asymptotic: return "asymptotic";
    }
    return "unknown";
}

struct EvalResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    Method method = Method::quadrature;
    long nodes_used = 0;
    /// Magnitude of the separately integrated imaginary part (complex-valued
    /// integrands only; zero otherwise).
    double imaginary_residual = 0.0;
};

/// Decay bound |f(x)| <= exp(log_scale) (1+|x|)^poly_degree exp(-x^2/(2 sigma^2) - rate |x|).
/// sigma = infinity drops the Gaussian factor, rate = 0 drops the exponential one.
struct Envelope {
    double log_scale = 0.0;
    double poly_degree = 0.0;
    double sigma = std::numeric_limits<double>::infinity();
    double rate = 0.0;

    static Envelope gaussian(double sigma, double poly_degree = 0.0, double log_scale = 0.0) {
        return {log_scale, poly_degree, sigma, 0.0};
    }
    static Envelope exponential(double rate, double poly_degree = 0.0, double log_scale = 0.0) {
        return {log_scale, poly_degree, std::numeric_limits<double>::infinity(), rate};
    }

    double log_bound(double x) const {
        const double ax = std::fabs(x);
        double v = log_scale + poly_degree * std::log1p(ax) - rate * ax;
        if (std::isfinite(sigma)) v -= 0.5 * ax * ax / (sigma * sigma);
        return v;
    }

    /// Upper bound on integral_{|x|>t} of the envelope; +inf if none is available at t.
    double two_sided_tail(double t) const {
        double kappa = rate - std::max(poly_degree, 0.0) / (1.0 + t);
        if (std::isfinite(sigma)) kappa += t / (sigma * sigma);
        if (!(kappa > 0.0)) return std::numeric_limits<double>::infinity();
        return 2.0 * std::exp(log_bound(t)) / kappa;
    }
};

/// Integrand parity hint for integrate_line.
enum class Parity { none, even };

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double kronrod = 0.0;
    double error = 0.0;
    double abs_integral = 0.0;
    int depth = 0;
    bool settled = false;  // error is at the roundoff floor
};

template <class F>
Panel gauss_kronrod15(const F& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double k15 = fc * kWgk[7];
    double g7 = fc * kWg[3];
    double kabs = std::fabs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        k15 += kWgk[j] * (f1 + f2);
        kabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) g7 += kWg[j / 2] * (f1 + f2);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.depth = depth;
    p.kronrod = k15 * half;
    p.abs_integral = kabs * std::fabs(half);
    const double diff = std::fabs((k15 - g7) * half);
    const double floor = 50.0 * kEps * p.abs_integral;
    p.settled = diff <= floor;
    p.error = std::max(diff, floor);
    if (!std::isfinite(p.kronrod)) p.error = std::numeric_limits<double>::infinity();
    return p;
}

struct AdaptiveOutcome {
    double value = 0.0;
    double error = 0.0;
    double abs_integral = 0.0;
    long nodes = 0;
    bool converged = false;
};

inline constexpr std::size_t kMaxPanels = 20000;

/// Global adaptive bisection starting from the given breakpoints.
/// Stops when the summed error is below max(abs_tol, rel_tol |value|).
template <class F>
AdaptiveOutcome adaptive(const F& f, std::span<const double> breaks, double abs_tol,
                         double rel_tol, int max_depth) {
    auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(by_error)> active(by_error);
    std::vector<Panel> done;
    long nodes = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        active.push(gauss_kronrod15(f, breaks[i], breaks[i + 1], 0));
        nodes += 15;
    }
    auto totals = [&](double& value, double& error) {
        // summed in left-endpoint order so the result does not depend on queue history
        std::vector<Panel> all = done;
        auto copy = active;
        while (!copy.empty()) {
            all.push_back(copy.top());
            copy.pop();
        }
        std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
        value = 0.0;
        error = 0.0;
        for (const auto& p : all) {
            value += p.kronrod;
            error += p.error;
        }
    };
    double value_sum = 0.0;
    double error_sum = 0.0;
    double settled_sum = 0.0;  // error held by panels at the roundoff floor
    {
        auto copy = active;
        while (!copy.empty()) {
            value_sum += copy.top().kronrod;
            error_sum += copy.top().error;
            if (copy.top().settled) settled_sum += copy.top().error;
            copy.pop();
        }
    }
    AdaptiveOutcome out;
    while (!active.empty()) {
        const double target = std::max(abs_tol, rel_tol * std::fabs(value_sum));
        if (error_sum <= target) {
            out.converged = true;
            break;
        }
        // only roundoff is left, which bisection cannot reduce
        if (error_sum - settled_sum <= target && settled_sum > 0.0) {
            out.converged = true;
            break;
        }
        if (active.size() + done.size() >= kMaxPanels) break;
        Panel worst = active.top();
        active.pop();
        if (worst.settled || worst.depth >= max_depth) {
            done.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gauss_kronrod15(f, worst.a, mid, worst.depth + 1);
        Panel right = gauss_kronrod15(f, mid, worst.b, worst.depth + 1);
        nodes += 30;
        value_sum += left.kronrod + right.kronrod - worst.kronrod;
        error_sum += left.error + right.error - worst.error;
        for (const Panel* q : {&left, &right})
            if (q->settled) settled_sum += q->error;
        active.push(left);
        active.push(right);
    }
    totals(out.value, out.error);
    const bool exhausted = active.empty();
    double abs_sum = 0.0;
    for (const auto& p : done) abs_sum += p.abs_integral;
    while (!active.empty()) {
        abs_sum += active.top().abs_integral;
        active.pop();
    }
    out.abs_integral = abs_sum;
    out.nodes = nodes;
    if (!out.converged) {
        // Panels at the roundoff floor cannot be improved by bisection; the
        // outcome still counts as converged when only they exceed the target.
        double reducible = 0.0;
        for (const auto& p : done)
            if (!p.settled) reducible += p.error;
        out.converged = out.error <= std::max(abs_tol, rel_tol * std::fabs(out.value)) ||
                        (exhausted && done.size() < kMaxPanels &&
                         reducible <= std::max(abs_tol, rel_tol * std::fabs(out.value)));
    }
    return out;
}

inline std::vector<double> uniform_breaks(double a, double b, int pieces) {
    std::vector<double> br(pieces + 1);
    for (int i = 0; i <= pieces; ++i) br[i] = a + (b - a) * i / pieces;
    br.back() = b;
    return br;
}

inline constexpr int kInitialPieces = 8;

}  // namespace detail

/// Adaptive integral of f over the finite interval [a, b].
template <class F>
EvalResult integrate_interval(const F& f, double a, double b, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw DomainError("integrate_interval: bounds must be finite");
    if (a == b) return {};
    const auto breaks = detail::uniform_breaks(a, b, detail::kInitialPieces);
    const auto r = detail::adaptive(f, breaks, cfg.abs_tol, cfg.rel_tol, cfg.max_refinements);
    if (!r.converged)
        throw NonConvergence("integrate_interval: tolerance not reached", r.value, r.error);
    return {r.value, r.error, Method::quadrature, r.nodes, 0.0};
}

/// Point beyond which both tails of the envelope hold at most `budget`.
inline double truncation_point(const Envelope& env, double budget) {
    if (!(budget > 0.0)) throw DomainError("truncation_point: budget must be > 0");
    constexpr double kMaxCut = 1e6;
    double hi = 1.0;
    while (!(env.two_sided_tail(hi) <= budget)) {
        hi *= 2.0;
        if (hi > kMaxCut)
            throw DomainError("integrate_line: envelope does not fall below the truncation budget");
    }
    double lo = hi > 1.0 ? 0.5 * hi : 0.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (env.two_sided_tail(mid) <= budget)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace detail {

struct LineOutcome {
    EvalResult result;
    double abs_integral = 0.0;
    double cut = 0.0;
    bool converged = false;
};

template <class F>
LineOutcome integrate_line_impl(const F& f, const Envelope& envelope, const QuadratureConfig& cfg,
                                Parity parity) {
    cfg.validate();
    const double tail_budget = cfg.abs_tol / cfg.truncation_margin;
    const double cut = truncation_point(envelope, tail_budget);
    const double tail = envelope.two_sided_tail(cut);
    // the inner tolerance leaves room for the truncated tails
    const double abs_tol = std::max(cfg.abs_tol - tail, 0.5 * cfg.abs_tol);
    LineOutcome out;
    out.cut = cut;
    if (parity == Parity::even) {
        const auto breaks = uniform_breaks(0.0, cut, kInitialPieces);
        const auto r = adaptive(f, breaks, 0.5 * abs_tol, cfg.rel_tol, cfg.max_refinements);
        out.result = {2.0 * r.value, 2.0 * r.error + tail, Method::quadrature, r.nodes, 0.0};
        out.abs_integral = 2.0 * r.abs_integral;
        out.converged = r.converged;
    } else {
        auto breaks = uniform_breaks(-cut, cut, 2 * kInitialPieces);
        breaks[kInitialPieces] = 0.0;
        const auto r = adaptive(f, breaks, abs_tol, cfg.rel_tol, cfg.max_refinements);
        out.result = {r.value, r.error + tail, Method::quadrature, r.nodes, 0.0};
        out.abs_integral = r.abs_integral;
        out.converged = r.converged;
    }
    return out;
}

}  // namespace detail

/// Integral of f over the real line. The envelope bounds |f| and fixes the
/// truncation point; the reported error covers discretization and truncation.
/// With Parity::even the half-line [0, inf) is integrated and doubled.
template <class F>
EvalResult integrate_line(const F& f, const Envelope& envelope, const QuadratureConfig& cfg = {},
                          Parity parity = Parity::none) {
    auto out = detail::integrate_line_impl(f, envelope, cfg, parity);
    if (!out.converged)
        throw NonConvergence("integrate_line: tolerance not reached after " +
                                 std::to_string(cfg.max_refinements) + " refinements",
                             out.result.value, out.result.abs_error_estimate);
    return out.result;
}

enum class Symmetry { none, even };

/// I(x) = integral_0^x g(y) dy, tabulated at the grid nodes by composite
/// Gauss-Kronrod panels and completed between nodes by a sub-panel rule.
/// Immutable after construction; queries are const and thread-safe provided g is.
class CumulativeIntegral {
public:
    CumulativeIntegral(std::function<double(double)> g, std::span<const double> grid,
                       Symmetry symmetry = Symmetry::none)
        : g_(std::move(g)), symmetry_(symmetry) {
        if (grid.size() < 2) throw DomainError("cumulative_integral: grid needs at least two nodes");
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            if (!(grid[i] < grid[i + 1]))
                throw DomainError("cumulative_integral: grid must be strictly increasing");
        if (!(grid.front() <= 0.0 && grid.back() >= 0.0))
            throw DomainError("cumulative_integral: grid must contain 0");
        if (symmetry_ == Symmetry::even) {
            for (double x : grid)
                if (x >= 0.0) nodes_.push_back(x);
        } else {
            nodes_.assign(grid.begin(), grid.end());
        }
        auto zero = std::lower_bound(nodes_.begin(), nodes_.end(), 0.0);
        if (zero == nodes_.end() || *zero != 0.0) zero = nodes_.insert(zero, 0.0);
        const std::size_t z = static_cast<std::size_t>(zero - nodes_.begin());
        values_.assign(nodes_.size(), 0.0);
        errors_.assign(nodes_.size(), 0.0);
        for (std::size_t i = z; i + 1 < nodes_.size(); ++i) {
            const auto p = detail::gauss_kronrod15(g_, nodes_[i], nodes_[i + 1], 0);
            values_[i + 1] = values_[i] + p.kronrod;
            errors_[i + 1] = errors_[i] + panel_error(p);
        }
        for (std::size_t i = z; i > 0; --i) {
            const auto p = detail::gauss_kronrod15(g_, nodes_[i - 1], nodes_[i], 0);
            values_[i - 1] = values_[i] - p.kronrod;
            errors_[i - 1] = errors_[i] + panel_error(p);
        }
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (!std::isfinite(values_[i]))
                throw OverflowError("cumulative_integral: inner integral exceeds double range");
    }

    double operator()(double x) const {
        if (symmetry_ == Symmetry::even && std::signbit(x)) return -(*this)(-x);
        if (x < nodes_.front() || x > nodes_.back())
            throw DomainError("cumulative_integral: query " + detail::fmt_num(x) +
                              " outside the tabulated grid");
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
        std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
        k = k == 0 ? 0 : k - 1;
        if (k + 1 == nodes_.size() || nodes_[k] == x) return values_[k];
        // complete from the node nearer to 0 so that I(0) = 0 stays exact
        if (nodes_[k] >= 0.0) return values_[k] + detail::gauss_kronrod15(g_, nodes_[k], x, 0).kronrod;
        return values_[k + 1] - detail::gauss_kronrod15(g_, x, nodes_[k + 1], 0).kronrod;
    }

    /// Accumulated error estimate of the tabulated value at the node nearest x.
    double error_bound(double x) const {
        if (symmetry_ == Symmetry::even) x = std::fabs(x);
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
        std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
        k = std::min(k, nodes_.size() - 1);
        return std::max(errors_[k], k > 0 ? errors_[k - 1] : 0.0);
    }

    /// Largest relative error estimate over the nonzero tabulated values.
    double max_relative_error() const {
        double r = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (values_[i] != 0.0) r = std::max(r, errors_[i] / std::fabs(values_[i]));
        return r;
    }

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> values() const { return values_; }
    std::size_t evaluations() const { return 15 * (nodes_.size() - 1); }

private:
    // QUADPACK's scaled Kronrod error estimate; the raw |K15 - G7| gap grossly
    // overstates the error of the Kronrod value on well-resolved panels.
    static double panel_error(const detail::Panel& p) {
        const double raw = std::fabs(p.error);
        const double floor = 50.0 * detail::kEps * p.abs_integral;
        if (raw == 0.0 || p.abs_integral == 0.0) return floor;
        const double scaled = p.abs_integral * std::min(1.0, std::pow(200.0 * raw / p.abs_integral, 1.5));
        return std::max(scaled, floor);
    }

    std::function<double(double)> g_;
    Symmetry symmetry_;
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> errors_;
};

/// Builds the cumulative evaluator of g on the sorted grid (which must contain 0).
inline CumulativeIntegral cumulative_integral(std::function<double(double)> g,
                                              std::span<const double> grid,
                                              Symmetry symmetry = Symmetry::none) {
    return CumulativeIntegral(std::move(g), grid, symmetry);
}

}  // namespace sylvester
