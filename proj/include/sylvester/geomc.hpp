#pragma once

// Monte Carlo geometric oracle: samplers for the three point laws, the
// point-in-simplex test, and estimators for simplex probabilities, solid
// angles of simplicial cones and the random-projection identity.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "sylvester/distribution.hpp"
#include "sylvester/errors.hpp"
#include "sylvester/rng.hpp"

namespace sylvester {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kTauRank = 1e-12;
inline constexpr double kTauInside = 1e-12;
inline constexpr int kMaxResamples = 100;

struct McConfig {
    std::int64_t trials = 100000;
    std::uint64_t seed = 0;
    int workers = 1;

    void validate() const {
        if (trials < 1) throw DomainError("Monte Carlo: trials must be positive");
        if (workers < 1) throw DomainError("Monte Carlo: workers must be positive");
    }
};

struct McResult {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::int64_t resampled = 0;      // trials redrawn after a degenerate configuration
    double trials_per_second = 0.0;  // informational only, never part of output records

    static McResult from_counts(std::int64_t successes, std::int64_t trials, std::uint64_t seed) {
        McResult r;
        r.successes = successes;
        r.trials = trials;
        r.seed = seed;
        r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
        r.stderr_ = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
        return r;
    }
};

struct PointCloud {
    int d = 0;
    std::vector<Vector> points;
};

/// Positive hull of linearly independent generators (columns of a k x m
/// matrix stored as m x k).
struct SimplicialCone {
    Matrix generators;  // one generator per column
};

/// Uniform direction on S^{d-1}.
template <class Rng>
Vector uniform_direction(int d, Rng& rng) {
    Vector v(d);
    for (;;) {
        for (int i = 0; i < d; ++i) v[i] = standard_normal(rng);
        const double n = v.norm();
        if (n > 0.0) return v / n;
    }
}

/// One draw from the law `dist` via radial decomposition.
template <class Rng>
Vector sample_point(const Distribution& dist, Rng& rng) {
    const int d = dist.d;
    if (dist.family == Family::gaussian) {
        Vector v(d);
        for (int i = 0; i < d; ++i) v[i] = standard_normal(rng);
        return v;
    }
    const Vector u = uniform_direction(d, rng);
    const double half_d = 0.5 * d;
    if (dist.family == Family::beta) {
        if (dist.beta == -1.0) return u;
        Vector x = std::sqrt(beta_variate(rng, half_d, dist.beta + 1.0)) * u;
        // a radius of exactly 1 times a direction of norm 1 + eps would leave the ball
        if (const double n = x.norm(); n > 1.0) x /= n;
        return x;
    }
    // R^2 = V/(1-V) with V ~ Beta(d/2, beta-d/2) is a ratio of independent gammas
    const double g1 = gamma_variate(rng, half_d);
    const double g2 = gamma_variate(rng, dist.beta - half_d);
    return std::sqrt(g1 / g2) * u;
}

inline void validate_mc_distribution(const Distribution& dist) {
    dist.validate();
    if (dist.family == Family::beta && dist.d == 1 && dist.beta == -1.0)
        throw DomainError("Monte Carlo: the sphere law in d = 1 is atomic; points coincide with positive probability");
}

/// Barycentric coordinates of x with respect to the d+1 vertices (columns of
/// `vertices`, a d x (d+1) matrix). Throws Degenerate for a numerically
/// singular vertex set.
inline Vector barycentric(const Vector& x, const Matrix& vertices) {
    const Eigen::Index d = vertices.rows();
    if (vertices.cols() != d + 1) throw DomainError("barycentric: need d+1 vertices in R^d");
    if (x.size() != d) throw DomainError("barycentric: point dimension mismatch");
    // edge matrix relative to the last vertex, columns equilibrated
    Matrix edges(d, d);
    const Vector base = vertices.col(d);
    for (Eigen::Index j = 0; j < d; ++j) edges.col(j) = vertices.col(j) - base;
    Vector scale(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const double n = edges.col(j).norm();
        if (!(n > 0.0)) throw Degenerate("barycentric: coincident vertices");
        scale[j] = n;
        edges.col(j) /= n;
    }
    const Eigen::PartialPivLU<Matrix> lu(edges);
    if (!(lu.rcond() >= kTauRank)) throw Degenerate("barycentric: vertices are affinely dependent");
    const Vector mu = lu.solve(x - base).cwiseQuotient(scale);
    Vector lambda(d + 1);
    lambda.head(d) = mu;
    lambda[d] = 1.0 - mu.sum();
    return lambda;
}

inline bool is_inside_simplex(const Vector& x, const Matrix& vertices) {
    const Vector lambda = barycentric(x, vertices);
    const double tol = kTauInside * (1.0 + vertices.cwiseAbs().maxCoeff() + x.cwiseAbs().maxCoeff());
    return lambda.minCoeff() >= -tol;
}

inline bool is_inside_simplex(const Vector& x, const std::vector<Vector>& vertices) {
    if (vertices.empty()) throw DomainError("is_inside_simplex: no vertices");
    Matrix m(vertices.front().size(), static_cast<Eigen::Index>(vertices.size()));
    for (std::size_t j = 0; j < vertices.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vertices[j];
    return is_inside_simplex(x, m);
}

/// Number of points (columns of a d x (d+2) matrix) lying inside the hull of
/// the others. Exactly 0 or 1 in general position.
inline int count_interior_points(const Matrix& pts) {
    const Eigen::Index k = pts.cols();
    int count = 0;
    Matrix others(pts.rows(), k - 1);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0, c = 0; j < k; ++j)
            if (j != i) others.col(c++) = pts.col(j);
        if (is_inside_simplex(Vector(pts.col(i)), others)) ++count;
    }
    return count;
}

namespace detail {

// Runs trial(rng) for every index in [0, trials) across workers, each trial on
// its own stream, so the counts do not depend on the worker count.
template <class Trial>
McResult run_trials(const McConfig& mc, const Trial& trial) {
    mc.validate();
    const int workers = static_cast<int>(std::min<std::int64_t>(mc.workers, mc.trials));
    std::vector<std::int64_t> hits(workers, 0);
    std::vector<std::int64_t> redraws(workers, 0);
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](int w) {
        try {
            const std::int64_t lo = mc.trials * w / workers;
            const std::int64_t hi = mc.trials * (w + 1) / workers;
            for (std::int64_t i = lo; i < hi; ++i) {
                auto rng = Xoshiro256::stream(mc.seed, static_cast<std::uint64_t>(i));
                for (int attempt = 0;; ++attempt) {
                    try {
                        if (trial(rng)) ++hits[w];
                        break;
                    } catch (const Degenerate&) {
                        if (attempt + 1 >= kMaxResamples)
                            throw Degenerate("Monte Carlo: trial " + std::to_string(i) +
                                             " stayed degenerate after " +
                                             std::to_string(kMaxResamples) + " draws");
                        ++redraws[w];
                    }
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    const auto start = std::chrono::steady_clock::now();
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::int64_t s = 0;
    std::int64_t r = 0;
    for (int w = 0; w < workers; ++w) {
        s += hits[w];
        r += redraws[w];
    }
    McResult out = McResult::from_counts(s, mc.trials, mc.seed);
    out.resampled = r;
    out.trials_per_second = secs > 0.0 ? static_cast<double>(mc.trials) / secs : 0.0;
    return out;
}

}  // namespace detail

/// The d+2 points of trial `index` for a run seeded with `seed`, as columns.
inline Matrix sylvester_trial_points(const Distribution& dist, std::uint64_t seed, std::uint64_t index) {
    auto rng = Xoshiro256::stream(seed, index);
    Matrix pts(dist.d, dist.d + 2);
    for (int j = 0; j < dist.d + 2; ++j) pts.col(j) = sample_point(dist, rng);
    return pts;
}

/// Fraction of trials in which the d+2 sampled points have a simplex as
/// convex hull.
inline McResult estimate_sylvester(const Distribution& dist, const McConfig& mc) {
    validate_mc_distribution(dist);
    const int d = dist.d;
    return detail::run_trials(mc, [&](Xoshiro256& rng) {
        Matrix pts(d, d + 2);
        for (int j = 0; j < d + 2; ++j) pts.col(j) = sample_point(dist, rng);
        const int inside = count_interior_points(pts);
        // two interior points can only come from a degenerate configuration
        if (inside > 1) throw Degenerate("Monte Carlo: more than one interior point");
        return inside == 1;
    });
}

/// Orthonormal basis of the span of the generators; throws Degenerate if
/// they are numerically dependent.
inline Matrix cone_basis(const SimplicialCone& cone) {
    const Matrix& g = cone.generators;
    if (g.cols() < 1 || g.cols() > g.rows())
        throw DomainError("simplicial cone: need 1 <= k <= m generators in R^m");
    Eigen::ColPivHouseholderQR<Matrix> qr(g);
    const auto r = qr.matrixR().topLeftCorner(g.cols(), g.cols()).diagonal().cwiseAbs();
    if (!(r.minCoeff() > kTauRank * r.maxCoeff())) throw Degenerate("simplicial cone: generators are dependent");
    Eigen::HouseholderQR<Matrix> plain(g);
    return plain.householderQ() * Matrix::Identity(g.rows(), g.cols());
}

/// Solid angle of the cone: fraction of uniform directions in lin C that lie
/// in C.
inline McResult estimate_cone_angle(const SimplicialCone& cone, const McConfig& mc) {
    const Matrix q = cone_basis(cone);
    const Eigen::Index k = q.cols();
    const Matrix coords = q.transpose() * cone.generators;  // generators in basis coordinates
    const Eigen::PartialPivLU<Matrix> lu(coords);
    const double tol = kTauInside * (1.0 + coords.cwiseAbs().maxCoeff());
    return detail::run_trials(mc, [&](Xoshiro256& rng) {
        Vector g(k);
        for (Eigen::Index i = 0; i < k; ++i) g[i] = standard_normal(rng);
        return lu.solve(g).minCoeff() >= -tol;
    });
}

/// Cone at the last vertex spanned by the edges towards the others.
inline SimplicialCone vertex_cone(const Matrix& vertices) {
    const Eigen::Index n = vertices.cols() - 1;
    SimplicialCone c{Matrix(vertices.rows(), n)};
    for (Eigen::Index j = 0; j < n; ++j) c.generators.col(j) = vertices.col(j) - vertices.col(n);
    return c;
}

/// Probability that projecting the simplex (n+1 vertices in R^n, columns)
/// onto the complement of a uniform random direction puts the last vertex
/// inside the hull of the other projected vertices.
inline McResult projection_experiment(const Matrix& vertices, const McConfig& mc) {
    const Eigen::Index n = vertices.rows();
    if (n < 2) throw DomainError("projection_experiment: requires n >= 2 (projection to a point otherwise)");
    if (vertices.cols() != n + 1) throw DomainError("projection_experiment: need n+1 vertices in R^n");
    cone_basis(vertex_cone(vertices));  // throws Degenerate unless in general position
    return detail::run_trials(mc, [&](Xoshiro256& rng) {
        const Vector u = uniform_direction(static_cast<int>(n), rng);
        // orthonormal basis of u-perp: the trailing columns of the Householder Q of u
        const Eigen::HouseholderQR<Matrix> qr{Matrix(u)};
        const Matrix q = qr.householderQ();
        const Matrix basis = q.rightCols(n - 1);
        const Matrix proj = basis.transpose() * vertices;  // (n-1) x (n+1)
        return is_inside_simplex(Vector(proj.col(n)), Matrix(proj.leftCols(n)));
    });
}

/// Regular simplex with n vertices, isometric to the standard basis e_1..e_n
/// (edge length sqrt 2), in intrinsic coordinates of R^{n-1}. Columns are
/// vertices.
inline Matrix regular_simplex(int n) {
    if (n < 2) throw DomainError("regular_simplex: requires n >= 2");
    // rows 1..n-1 of the Helmert matrix form an orthonormal basis of the sum-zero hyperplane
    Matrix v(n - 1, n);
    v.setZero();
    for (int k = 1; k < n; ++k) {
        const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
        for (int j = 0; j < k; ++j) v(k - 1, j) = s;
        v(k - 1, k) = -k * s;
    }
    return v;
}

}  // namespace sylvester
