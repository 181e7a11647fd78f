#pragma once

// Command-line front end. `run` is the whole program minus process setup,
// so it can be driven from tests with string streams.
//
// Exit codes: 0 success, 1 acceptance failure, 2 invalid input (domain,
// unknown registry key, bad flags), 3 numerical failure (non-convergence,
// persistent degeneracy).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sylvester/distribution.hpp"
#include "sylvester/errors.hpp"
#include "sylvester/geomc.hpp"
#include "sylvester/output.hpp"
#include "sylvester/registry.hpp"
#include "sylvester/sylvester.hpp"
#include "sylvester/verify.hpp"

namespace sylvester::cli {

using sylvester::detail::fmt_num;

inline constexpr int kExitOk = 0;
inline constexpr int kExitCriterion = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

/// Relative tolerance T with an absolute floor of min(T, 1e-12).
inline QuadratureConfig config_for_tolerance(double tol) {
    if (!(tol > 0.0)) throw DomainError("--tol must be > 0");
    QuadratureConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = std::min(tol, 1e-12);
    return cfg;
}

namespace detail {

struct DistFlags {
    std::string family;
    std::optional<double> beta;

    Distribution make(int d) const {
        const auto f = parse_family(family);
        if (!f) throw DomainError("unknown family '" + family + "' (expected gauss, beta or betaprime)");
        if (*f == Family::gaussian) {
            if (beta) throw DomainError("--beta does not apply to the gauss family");
            return Distribution::gaussian(d);
        }
        if (!beta) throw DomainError(std::string("--beta is required for the ") + to_string(*f) + " family");
        Distribution dist{*f, d, *beta};
        dist.validate();
        return dist;
    }
};

inline void add_dist_flags(CLI::App* cmd, DistFlags& f) {
    cmd->add_option("--family", f.family, "gauss, beta or betaprime")->required();
    cmd->add_option("--beta", f.beta, "shape parameter of the beta / beta-prime law");
}

inline Format format_from(const std::string& s) {
    const auto f = parse_format(s);
    if (!f) throw DomainError("unknown format '" + s + "' (expected json or csv)");
    return *f;
}

struct TablePreset {
    Family family;
    int d_min;
    int d_max;
    double (*beta)(int d);
};

inline std::optional<TablePreset> table_preset(const std::string& name) {
    if (name == "gauss") return TablePreset{Family::gaussian, 2, 3, [](int) { return 0.0; }};
    if (name == "arcsine") return TablePreset{Family::beta, 2, 5, [](int) { return -0.5; }};
    if (name == "semispherical") return TablePreset{Family::beta, 2, 4, [](int) { return 0.5; }};
    if (name == "betaprime-special")
        return TablePreset{Family::beta_prime, 1, 8, [](int d) { return 0.5 * d + 1.0; }};
    if (name == "kingman") return TablePreset{Family::beta, 1, 8, [](int) { return 0.0; }};
    return std::nullopt;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probability that d+2 random points in R^d form a simplex"};
    app.name("sylvester");
    app.require_subcommand(1, 1);

    detail::DistFlags dist_flags;
    std::vector<int> dims;
    std::string method = "auto";
    double tol = 0.0;
    std::string format = "json";

    auto* compute = app.add_subcommand("compute", "evaluate p_d by quadrature or closed form");
    detail::add_dist_flags(compute, dist_flags);
    compute->add_option("--dim", dims, "dimension(s) d")->required()->expected(1, -1);
    compute->add_option("--method", method, "auto, quadrature or closed-form")->capture_default_str();
    compute->add_option("--tol", tol, "relative tolerance (default 1e-8)");
    compute->add_option("--format", format, "json or csv")->capture_default_str();

    std::int64_t trials = 100000;
    std::uint64_t seed = 0;
    int workers = 1;
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of p_d");
    detail::add_dist_flags(mc, dist_flags);
    mc->add_option("--dim", dims, "dimension(s) d")->required()->expected(1, -1);
    mc->add_option("--trials", trials, "number of trials")->capture_default_str();
    mc->add_option("--seed", seed, "random seed")->envname("SYLVESTER_SEED");
    mc->add_option("--workers", workers, "worker threads")->capture_default_str();
    mc->add_option("--format", format, "json or csv")->capture_default_str();

    double beta_min = 0.0;
    double beta_max = 0.0;
    int steps = 0;
    int sweep_dim = 0;
    auto* sweep = app.add_subcommand("sweep", "p_d over an equally spaced beta grid (CSV)");
    sweep->add_option("--family", dist_flags.family, "beta or betaprime")->required();
    sweep->add_option("--dim", sweep_dim, "dimension d")->required();
    sweep->add_option("--beta-min", beta_min, "first beta")->required();
    sweep->add_option("--beta-max", beta_max, "last beta")->required();
    sweep->add_option("--steps", steps, "number of intervals (rows = steps + 1)")->required();
    sweep->add_option("--tol", tol, "relative tolerance (default 1e-6)");

    std::string suite = "basic";
    bool verbose = false;
    std::string corrupt_key;
    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_option("--suite", suite, "basic or full")->capture_default_str();
    verify->add_option("--seed", seed, "random seed")->envname("SYLVESTER_SEED");
    verify->add_option("--workers", workers, "worker threads")->capture_default_str();
    verify->add_flag("--verbose", verbose, "print every comparison");
    verify->add_option("--corrupt-registry", corrupt_key, "test hook")->group("");

    std::string preset;
    auto* table = app.add_subcommand("table", "closed-form values from the registry");
    table->add_option("--preset", preset, "gauss, arcsine, semispherical, betaprime-special or kingman")
        ->required();
    table->add_option("--format", format, "text or csv");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*compute) {
            const auto m = parse_solve_method(method);
            if (!m) throw DomainError("unknown method '" + method + "' (expected auto, quadrature or closed-form)");
            const auto cfg = config_for_tolerance(compute->count("--tol") ? tol : 1e-8);
            RecordWriter w(out, detail::format_from(format));
            for (int d : dims) {
                const auto dist = dist_flags.make(d);
                w.write(OutputRecord::deterministic(dist, sylvester_probability(dist, *m, cfg)));
            }
            return kExitOk;
        }

        if (*mc) {
            RecordWriter w(out, detail::format_from(format));
            for (int d : dims) {
                const auto dist = dist_flags.make(d);
                w.write(OutputRecord::monte_carlo(dist, estimate_sylvester(dist, McConfig{trials, seed, workers})));
            }
            return kExitOk;
        }

        if (*sweep) {
            const auto f = parse_family(dist_flags.family);
            if (!f || *f == Family::gaussian)
                throw DomainError("sweep requires --family beta or betaprime");
            if (steps < 1) throw DomainError("--steps must be >= 1");
            if (!(beta_max >= beta_min)) throw DomainError("--beta-max must be >= --beta-min");
            const auto cfg = config_for_tolerance(sweep->count("--tol") ? tol : 1e-6);
            int code = kExitOk;
            std::vector<double> values;
            std::vector<double> errors;
            out << "beta,value,abs_error\n";
            for (int i = 0; i <= steps; ++i) {
                const double b = (beta_min * (steps - i) + beta_max * i) / steps;
                try {
                    const Distribution dist{*f, sweep_dim, b};
                    const auto r = sylvester_probability(dist, SolveMethod::automatic, cfg);
                    out << fmt_num(b) << ',' << fmt_num(r.value) << ',' << fmt_num(r.abs_error_estimate) << '\n';
                    values.push_back(r.value);
                    errors.push_back(r.abs_error_estimate);
                } catch (const DomainError& e) {
                    out << "# beta=" << fmt_num(b) << " rejected: " << e.what() << '\n';
                    err << "warning: beta=" << fmt_num(b) << " rejected: " << e.what() << '\n';
                    code = std::max(code, kExitInput);
                } catch (const NonConvergence& e) {
                    out << "# beta=" << fmt_num(b) << " failed: " << e.what() << '\n';
                    err << "warning: beta=" << fmt_num(b) << " failed: " << e.what() << '\n';
                    code = std::max(code, kExitNumeric);
                }
            }
            const int dir = sylvester::detail::monotone_direction(values, errors);
            out << "# monotone: "
                << (values.size() < 2 ? "n/a" : dir == 1 ? "non-decreasing" : dir == -1 ? "non-increasing" : "neither")
                << '\n';
            return code;
        }

        if (*verify) {
            VerifyOptions opt;
            if (suite == "basic")
                opt.suite = Suite::basic;
            else if (suite == "full")
                opt.suite = Suite::full;
            else
                throw DomainError("unknown suite '" + suite + "' (expected basic or full)");
            if (verify->count("--seed")) opt.seed = seed;
            opt.workers = workers;
            std::optional<Registry> corrupted;
            if (!corrupt_key.empty()) {
                corrupted = Registry::standard().with_perturbation(corrupt_key, 1.0 + 1e-3);
                opt.registry = &*corrupted;
            }
            const auto results = run_acceptance(opt);
            print_report(out, results, verbose);
            const bool ok = all_passed(results);
            out << (ok ? "all criteria passed" : "some criteria failed") << '\n';
            return ok ? kExitOk : kExitCriterion;
        }

        if (*table) {
            const auto p = detail::table_preset(preset);
            if (!p) throw DomainError("unknown preset '" + preset + "'");
            const bool csv = table->count("--format") && format == "csv";
            if (!csv && table->count("--format") && format != "text")
                throw DomainError("unknown table format '" + format + "' (expected text or csv)");
            const Registry& reg = Registry::standard();
            if (csv)
                out << "family,d,beta,expression,value\n";
            else
                out << std::left << std::setw(10) << "family" << std::setw(4) << "d" << std::setw(8) << "beta"
                    << std::setw(64) << "expression" << "value\n";
            for (int d = p->d_min; d <= p->d_max; ++d) {
                const Distribution dist{p->family, d, p->beta(d)};
                const auto v = reg.lookup(dist);
                const auto expr = reg.expression(dist);
                if (!v || !expr) throw NotInRegistry("no closed form registered for " + dist.label());
                const std::string beta = dist.has_beta() ? fmt_num(dist.beta) : "";
                char value[32];
                std::snprintf(value, sizeof value, "%.15g", v->value);
                if (csv)
                    out << to_string(dist.family) << ',' << d << ',' << beta << ','
                        << sylvester::detail::csv_quote(*expr) << ',' << fmt_num(v->value) << '\n';
                else
                    out << std::left << std::setw(10) << to_string(dist.family) << std::setw(4) << d
                        << std::setw(8) << beta << std::setw(64) << *expr << value << '\n';
            }
            return kExitOk;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NotInRegistry& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << " (best value " << fmt_num(e.best_value()) << ", error estimate "
            << fmt_num(e.error_estimate()) << ")\n";
        return kExitNumeric;
    } catch (const Degenerate& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitInput;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), out, err);
}

}  // namespace sylvester::cli
