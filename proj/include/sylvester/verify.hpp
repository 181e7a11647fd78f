#pragma once

// Acceptance checks cross-validating the quadrature, closed-form and Monte
// Carlo routes. Each criterion yields one pass/fail verdict plus diagnostic
// lines; reference values are taken from the supplied registry, so a
// corrupted entry surfaces under its key.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sylvester/anglesums.hpp"
#include "sylvester/geomc.hpp"
#include "sylvester/quad.hpp"
#include "sylvester/registry.hpp"
#include "sylvester/sylvester.hpp"

namespace sylvester {

enum class Suite { basic, full };

struct VerifyOptions {
    Suite suite = Suite::basic;
    std::uint64_t seed = 42;
    int workers = 1;
    const Registry* registry = &Registry::standard();

    std::int64_t mc_trials() const { return suite == Suite::full ? 1'000'000 : 100'000; }
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = true;
    bool blocking = true;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    double seconds = 0.0;

    void fail(std::string msg) {
        passed = false;
        failures.push_back(std::move(msg));
    }
    void note(std::string msg) { notes.push_back(std::move(msg)); }
};

inline constexpr int kCriterionCount = 12;

/// A test integral with a known value, for checking that reported error
/// estimates bound the actual error.
struct KnownIntegral {
    std::string name;
    std::function<EvalResult()> evaluate;
    double truth;
};

inline std::vector<KnownIntegral> error_honesty_suite(const QuadratureConfig& cfg = {}) {
    using std::numbers::pi;
    const double sqrt2pi = std::sqrt(2.0 * pi);
    auto interval = [cfg](std::function<double(double)> f, double a, double b) {
        return [f, a, b, cfg] { return integrate_interval(f, a, b, cfg); };
    };
    auto line = [cfg](std::function<double(double)> f, Envelope env, Parity p = Parity::none) {
        return [f, env, p, cfg] { return integrate_line(f, env, cfg, p); };
    };
    return {
        {"x^2 on [0,1]", interval([](double x) { return x * x; }, 0, 1), 1.0 / 3.0},
        {"exp on [0,1]", interval([](double x) { return std::exp(x); }, 0, 1), std::numbers::e - 1.0},
        {"sin on [0,pi]", interval([](double x) { return std::sin(x); }, 0, pi), 2.0},
        {"1/(1+x^2) on [0,1]", interval([](double x) { return 1.0 / (1.0 + x * x); }, 0, 1), pi / 4.0},
        {"sqrt on [0,1]", interval([](double x) { return std::sqrt(x); }, 0, 1), 2.0 / 3.0},
        {"log on [0,1]", interval([](double x) { return std::log(x); }, 0, 1), -1.0},
        {"cbrt on [0,1]", interval([](double x) { return std::cbrt(x); }, 0, 1), 0.75},
        {"cos(10x) on [0,1]", interval([](double x) { return std::cos(10.0 * x); }, 0, 1),
         std::sin(10.0) / 10.0},
        {"|x-1/3| on [0,1]", interval([](double x) { return std::fabs(x - 1.0 / 3.0); }, 0, 1), 5.0 / 18.0},
        {"exp(-x^2) on [-3,3]", interval([](double x) { return std::exp(-x * x); }, -3, 3),
         std::sqrt(pi) * std::erf(3.0)},
        {"1/x on [1,e^2]", interval([](double x) { return 1.0 / x; }, 1, std::exp(2.0)), 2.0},
        {"x exp(-x) on [0,10]", interval([](double x) { return x * std::exp(-x); }, 0, 10),
         1.0 - 11.0 * std::exp(-10.0)},
        {"tanh on [-1,2]", interval([](double x) { return std::tanh(x); }, -1, 2),
         std::log(std::cosh(2.0)) - std::log(std::cosh(1.0))},
        {"1/(1+25x^2) on [-1,1]", interval([](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1, 1),
         0.4 * std::atan(5.0)},
        {"sin^2 on [0,2pi]", interval([](double x) { return std::sin(x) * std::sin(x); }, 0, 2 * pi), pi},
        {"sqrt|x| on [-1,1]", interval([](double x) { return std::sqrt(std::fabs(x)); }, -1, 1), 4.0 / 3.0},
        {"exp(-x^2/2) on R", line([](double x) { return std::exp(-0.5 * x * x); }, Envelope::gaussian(1.0)),
         sqrt2pi},
        {"x^2 exp(-x^2/2) on R (even)",
         line([](double x) { return x * x * std::exp(-0.5 * x * x); }, Envelope::gaussian(1.0, 2.0),
              Parity::even),
         sqrt2pi},
        {"sech^2 on R",
         line([](double x) { return 1.0 / (std::cosh(x) * std::cosh(x)); },
              Envelope::exponential(2.0, 0.0, std::log(4.0))),
         2.0},
        {"exp(-|x|) cos x on R", line([](double x) { return std::exp(-std::fabs(x)) * std::cos(x); },
                                      Envelope::exponential(1.0)),
         1.0},
    };
}

namespace detail {

inline std::string sci(double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

inline double rel_err(double v, double ref) { return std::fabs(v - ref) / std::fabs(ref); }

inline QuadratureConfig acceptance_cfg() {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-16;  // small enough that rel_tol governs tiny probabilities
    return cfg;
}

inline EvalResult quad(const Distribution& dist, const QuadratureConfig& cfg = acceptance_cfg()) {
    return sylvester_probability(dist, SolveMethod::quadrature, cfg);
}

// Reference value from the registry under test.
inline double reference(const Distribution& dist, const Registry& reg, CriterionResult& res) {
    auto r = reg.lookup(dist);
    if (!r) {
        res.fail("no registry entry for " + dist.label());
        return std::nan("");
    }
    return r->value;
}

inline void compare(CriterionResult& res, const Distribution& dist, double value, double ref,
                    double tol, bool relative) {
    const double err = relative ? rel_err(value, ref) : std::fabs(value - ref);
    const std::string kind = relative ? "rel" : "abs";
    const std::string line = dist.label() + ": quadrature " + sci(value) + " vs registry " + sci(ref) +
                             ", " + kind + " err " + sci(err);
    if (!(err <= tol))
        res.fail(line + " > " + sci(tol));
    else
        res.note(line);
}

template <class Body>
void guarded(CriterionResult& res, Body body) {
    try {
        body();
    } catch (const std::exception& e) {
        res.fail(std::string("exception: ") + e.what());
    }
}

inline bool within(double est, double se, double ref, double k = 4.0) {
    return std::fabs(est - ref) <= k * se;
}

// Monotone-direction summary of a sequence: +1 non-decreasing, -1
// non-increasing, 0 neither. Steps smaller than the combined error estimates
// count as ties.
inline int monotone_direction(const std::vector<double>& v, const std::vector<double>& err) {
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double slack = err[i] + err[i - 1];
        if (v[i] < v[i - 1] - slack) up = false;
        if (v[i] > v[i - 1] + slack) down = false;
    }
    return up ? 1 : (down ? -1 : 0);
}

}  // namespace detail

inline const char* criterion_title(int id) {
    switch (id) {
        case 1: return "gaussian closed forms";
        case 2: return "uniform-ball (beta=0) cross-check";
        case 3: return "beta=1 cross-check";
        case 4: return "arcsine and semispherical tables";
        case 5: return "beta-prime special family";
        case 6: return "degenerate endpoints";
        case 7: return "gaussian limit";
        case 8: return "monte carlo triangulation";
        case 9: return "projection identity";
        case 10: return "reproducibility across workers";
        case 11: return "error honesty";
        case 12: return "monotonicity and cauchy ratio (report only)";
        default: return "unknown";
    }
}

inline CriterionResult run_criterion(int id, const VerifyOptions& opt) {
    using detail::compare;
    using detail::guarded;
    using detail::quad;
    using detail::sci;
    const Registry& reg = *opt.registry;
    CriterionResult res;
    res.id = id;
    res.title = criterion_title(id);
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    auto mc_cfg = [&](std::int64_t trials) { return McConfig{trials, opt.seed, opt.workers}; };

    switch (id) {
        case 1:
            for (int d : {2, 3})
                guarded(res, [&] {
                    const auto dist = Distribution::gaussian(d);
                    compare(res, dist, quad(dist).value, detail::reference(dist, reg, res), 1e-8, false);
                });
            if (elapsed() > 1.0) res.fail("runtime " + sci(elapsed()) + " s exceeds 1 s");
            break;
        case 2:
            for (int d = 2; d <= 8; ++d)
                guarded(res, [&] {
                    const auto dist = Distribution::beta_ball(d, 0.0);
                    compare(res, dist, quad(dist).value, detail::reference(dist, reg, res), 1e-6, true);
                });
            if (elapsed() > 30.0) res.fail("runtime " + sci(elapsed()) + " s exceeds 30 s");
            break;
        case 3:
            for (int d = 2; d <= 6; ++d)
                guarded(res, [&] {
                    const auto dist = Distribution::beta_ball(d, 1.0);
                    compare(res, dist, quad(dist).value, detail::reference(dist, reg, res), 1e-6, true);
                });
            break;
        case 4:
            for (int d = 2; d <= 5; ++d)
                guarded(res, [&] {
                    const auto dist = Distribution::beta_ball(d, -0.5);
                    compare(res, dist, quad(dist).value, detail::reference(dist, reg, res), 1e-6, false);
                });
            for (int d = 2; d <= 4; ++d)
                guarded(res, [&] {
                    const auto dist = Distribution::beta_ball(d, 0.5);
                    compare(res, dist, quad(dist).value, detail::reference(dist, reg, res), 1e-6, false);
                });
            break;
        case 5:
            for (int d = 2; d <= 8; ++d)
                guarded(res, [&] {
                    const auto dist = Distribution::beta_prime(d, 0.5 * d + 1.0);
                    compare(res, dist, quad(dist).value, detail::reference(dist, reg, res), 1e-6, true);
                });
            break;
        case 6: {
            QuadratureConfig cfg;
            cfg.abs_tol = 1e-10;
            std::vector<Distribution> line = {Distribution::gaussian(1)};
            for (double b : {-0.5, -0.25, 0.0, 0.5, 1.0, 2.0, 5.0, 20.0})
                line.push_back(Distribution::beta_ball(1, b));
            for (double b : {0.7, 1.0, 1.5, 2.0, 5.0, 20.0}) line.push_back(Distribution::beta_prime(1, b));
            for (const auto& dist : line)
                guarded(res, [&] {
                    compare(res, dist, quad(dist, cfg).value, detail::reference(dist, reg, res), 1e-8, false);
                });
            // beta = -1 at d = 1 is reachable only through the registry
            guarded(res, [&] {
                const auto dist = Distribution::beta_ball(1, -1.0);
                const double v = detail::reference(dist, reg, res);
                if (!(std::fabs(v - 1.0) <= 1e-8))
                    res.fail(dist.label() + ": registry " + sci(v) + " differs from 1");
            });
            for (int d : {2, 3, 4})
                guarded(res, [&] {
                    const auto dist = Distribution::beta_ball(d, -1.0);
                    compare(res, dist, quad(dist, cfg).value, detail::reference(dist, reg, res), 1e-6, false);
                });
            break;
        }
        case 7: {
            QuadratureConfig cfg;
            cfg.abs_tol = 1e-10;
            cfg.rel_tol = 1e-10;
            for (int d : {2, 3})
                guarded(res, [&] {
                    const auto g = Distribution::gaussian(d);
                    const double pg = detail::reference(g, reg, res);
                    for (bool prime : {false, true}) {
                        auto at = [&](double b) {
                            return prime ? Distribution::beta_prime(d, b) : Distribution::beta_ball(d, b);
                        };
                        const double gap100 = std::fabs(quad(at(100.0), cfg).value - pg);
                        const double gap10 = std::fabs(quad(at(10.0), cfg).value - pg);
                        const std::string line = at(100.0).label() + ": gap " + sci(gap100) +
                                                 " (beta=10 gap " + sci(gap10) + ")";
                        if (!(gap100 < 0.02) || !(gap100 < gap10))
                            res.fail(line);
                        else
                            res.note(line);
                    }
                });
            break;
        }
        case 8: {
            std::vector<Distribution> configs;
            for (int d : {2, 3, 4}) {
                configs.push_back(Distribution::gaussian(d));
                configs.push_back(Distribution::beta_ball(d, 0.0));
                configs.push_back(Distribution::beta_prime(d, 0.5 * d + 1.0));
            }
            for (const auto& dist : configs)
                guarded(res, [&] {
                    const double ref = sylvester_probability(dist, SolveMethod::automatic,
                                                             detail::acceptance_cfg(), reg)
                                           .value;
                    const auto mc = estimate_sylvester(dist, mc_cfg(opt.mc_trials()));
                    const std::string line = dist.label() + ": mc " + sci(mc.estimate) + " +- " +
                                             sci(mc.stderr_) + " vs " + sci(ref) + " (z = " +
                                             sci((mc.estimate - ref) / mc.stderr_) + ")";
                    if (!detail::within(mc.estimate, mc.stderr_, ref))
                        res.fail(line);
                    else
                        res.note(line);
                });
            if (elapsed() > 600.0) res.fail("runtime " + sci(elapsed()) + " s exceeds 10 min");
            break;
        }
        case 9:
            guarded(res, [&] {
                const Matrix simplex = regular_simplex(4);
                const auto proj = projection_experiment(simplex, mc_cfg(opt.mc_trials()));
                const auto cone = estimate_cone_angle(vertex_cone(simplex), mc_cfg(opt.mc_trials()));
                const double exact = 2.0 * gaussian_angle_sum(4, detail::acceptance_cfg()).value / 4.0;
                const double twice = 2.0 * cone.estimate;
                const double se_twice = 2.0 * cone.stderr_;
                const double combined = std::hypot(proj.stderr_, se_twice);
                const std::string line = "projection " + sci(proj.estimate) + " +- " + sci(proj.stderr_) +
                                         ", 2 x cone " + sci(twice) + " +- " + sci(se_twice) +
                                         ", exact " + sci(exact);
                bool ok = std::fabs(proj.estimate - twice) <= 4.0 * combined;
                ok = ok && detail::within(proj.estimate, proj.stderr_, exact);
                ok = ok && detail::within(twice, se_twice, exact);
                if (!ok)
                    res.fail(line);
                else
                    res.note(line);
            });
            break;
        case 10:
            guarded(res, [&] {
                const auto dist = Distribution::gaussian(3);
                const std::int64_t trials = opt.suite == Suite::full ? 200'000 : 20'000;
                std::vector<std::int64_t> counts;
                for (int w : {1, 2, 8})
                    counts.push_back(estimate_sylvester(dist, McConfig{trials, opt.seed, w}).successes);
                const std::string line = "successes for workers 1/2/8: " + std::to_string(counts[0]) + "/" +
                                         std::to_string(counts[1]) + "/" + std::to_string(counts[2]);
                if (counts[0] != counts[1] || counts[0] != counts[2])
                    res.fail(line);
                else
                    res.note(line);
            });
            break;
        case 11:
            for (const auto& k : error_honesty_suite())
                guarded(res, [&] {
                    // a non-converged result must still carry an honest estimate
                    double value = 0.0;
                    double estimate = 0.0;
                    std::string suffix;
                    try {
                        const auto r = k.evaluate();
                        value = r.value;
                        estimate = r.abs_error_estimate;
                    } catch (const NonConvergence& e) {
                        value = e.best_value();
                        estimate = e.error_estimate();
                        suffix = " (not converged)";
                    }
                    const double err = std::fabs(value - k.truth);
                    const std::string line =
                        k.name + ": error " + sci(err) + " vs estimate " + sci(estimate) + suffix;
                    if (!(err <= 3.0 * estimate))
                        res.fail(line);
                    else
                        res.note(line);
                });
            break;
        case 12: {
            res.blocking = false;
            QuadratureConfig cfg;
            cfg.abs_tol = 1e-12;
            cfg.rel_tol = 1e-8;
            constexpr int kPoints = 30;
            for (int d : {2, 3})
                for (bool prime : {false, true})
                    guarded(res, [&] {
                        const double lo = prime ? 0.5 * d + 0.5 : -0.95;
                        const double hi = prime ? 0.5 * d + 15.0 : 15.0;
                        std::vector<double> v;
                        std::vector<double> e;
                        for (int i = 0; i < kPoints; ++i) {
                            const double b = lo + (hi - lo) * i / (kPoints - 1);
                            const auto dist =
                                prime ? Distribution::beta_prime(d, b) : Distribution::beta_ball(d, b);
                            const auto r = quad(dist, cfg);
                            v.push_back(r.value);
                            e.push_back(r.abs_error_estimate);
                        }
                        const int dir = detail::monotone_direction(v, e);
                        const int want = prime ? -1 : 1;
                        const std::string line = std::string(prime ? "betaprime" : "beta") +
                                                 " d=" + std::to_string(d) + " sweep on [" + sci(lo) +
                                                 ", " + sci(hi) + "]: " +
                                                 (dir == 1 ? "non-decreasing"
                                                           : dir == -1 ? "non-increasing" : "not monotone");
                        if (dir != want)
                            res.fail(line);
                        else
                            res.note(line);
                    });
            for (int d = 2; d <= 8; ++d)
                guarded(res, [&] {
                    const auto dist = Distribution::beta_prime(d, 0.5 * (d + 1.0));
                    const double p = quad(dist, cfg).value;
                    res.note("cauchy ratio d=" + std::to_string(d) + ": " +
                             sci(p / cauchy_asymptotic(d).value));
                });
            break;
        }
        default: throw DomainError("unknown acceptance criterion " + std::to_string(id));
    }
    res.seconds = elapsed();
    return res;
}

inline std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opt));
    return out;
}

/// One summary line per criterion, followed by indented failure details.
inline void print_report(std::ostream& os, const std::vector<CriterionResult>& results, bool verbose) {
    for (const auto& r : results) {
        const char* tag = r.passed ? "PASS" : (r.blocking ? "FAIL" : "WARN");
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
        os << "[" << tag << "] criterion " << r.id << ": " << r.title << " (" << secs << " s)\n";
        for (const auto& f : r.failures) os << "    " << f << '\n';
        if (verbose || !r.blocking)
            for (const auto& n : r.notes) os << "    " << n << '\n';
    }
}

/// True iff every blocking criterion passed.
inline bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (r.blocking && !r.passed) return false;
    return true;
}

}  // namespace sylvester
