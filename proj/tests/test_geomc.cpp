#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "sylvester/errors.hpp"
#include "sylvester/geomc.hpp"
#include "sylvester/rng.hpp"

using namespace sylvester;
using std::numbers::pi;

namespace {

// 1/2 - (3/pi) asin(1/3) and 1/4 - (5/(2 pi)) asin(1/4), 30-digit values
constexpr double kJ4 = 0.175479656091822;
constexpr double kJ5 = 0.0489234418620844;

McConfig mc(std::int64_t trials, std::uint64_t seed = 7, int workers = 4) { return {trials, seed, workers}; }

void expect_within(const McResult& r, double truth, double sigmas = 4.0) {
    EXPECT_LE(std::fabs(r.estimate - truth), sigmas * r.stderr_)
        << "estimate " << r.estimate << " stderr " << r.stderr_ << " truth " << truth;
}

Matrix triangle() {
    Matrix v(2, 3);
    v << 0.0, 1.0, 0.0,
         0.0, 0.0, 1.0;
    return v;
}

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

// Largest gap between the empirical CDF of `xs` and `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> xs, const Cdf& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        worst = std::max({worst, f - i / n, (i + 1) / n - f});
    }
    return worst;
}

}  // namespace

TEST(IsInsideSimplex, Examples) {
    EXPECT_TRUE(is_inside_simplex(vec({0.25, 0.25}), triangle()));
    EXPECT_FALSE(is_inside_simplex(vec({1.0, 1.0}), triangle()));
    EXPECT_TRUE(is_inside_simplex(vec({0.0, 0.0}), triangle()));
    const std::vector<Vector> verts = {vec({0, 0}), vec({1, 0}), vec({0, 1})};
    EXPECT_TRUE(is_inside_simplex(vec({0.25, 0.25}), verts));
}

TEST(IsInsideSimplex, BarycentricCoordinates) {
    const Vector l = barycentric(vec({0.25, 0.25}), triangle());
    EXPECT_NEAR(l[0], 0.5, 1e-15);
    EXPECT_NEAR(l[1], 0.25, 1e-15);
    EXPECT_NEAR(l[2], 0.25, 1e-15);
}

TEST(IsInsideSimplex, BoundaryAndLine) {
    EXPECT_TRUE(is_inside_simplex(vec({0.5, 0.5}), triangle()));
    EXPECT_FALSE(is_inside_simplex(vec({0.5, 0.5 + 1e-9}), triangle()));
    Matrix seg(1, 2);
    seg << -1.0, 2.0;
    EXPECT_TRUE(is_inside_simplex(vec({0.3}), seg));
    EXPECT_FALSE(is_inside_simplex(vec({2.5}), seg));
}

TEST(IsInsideSimplex, DegenerateVertices) {
    Matrix collinear(2, 3);
    collinear << 0.0, 1.0, 2.0,
                 0.0, 1.0, 2.0;
    EXPECT_THROW(is_inside_simplex(vec({0.5, 0.5}), collinear), Degenerate);
    Matrix repeated(2, 3);
    repeated << 0.0, 0.0, 1.0,
                0.0, 0.0, 3.0;
    EXPECT_THROW(is_inside_simplex(vec({0.5, 0.5}), repeated), Degenerate);
    EXPECT_THROW(is_inside_simplex(vec({0.5}), triangle()), DomainError);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    auto a = Xoshiro256::stream(1, 5);
    auto b = Xoshiro256::stream(1, 5);
    auto c = Xoshiro256::stream(1, 6);
    auto d = Xoshiro256::stream(2, 5);
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
    EXPECT_NE(x, d());
}

TEST(Rng, UniformOpenInterval) {
    Xoshiro256 rng(3);
    for (int i = 0; i < 100000; ++i) {
        const double u = uniform_open(rng);
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Sampling, BetaSupport) {
    Xoshiro256 rng(11);
    for (int d : {1, 2, 5})
        for (double beta : {-0.9, 0.0, 2.0})
            for (int i = 0; i < 20000; ++i) ASSERT_LE(sample_point(Distribution::beta_ball(d, beta), rng).norm(), 1.0);
    for (int i = 0; i < 1000; ++i)
        EXPECT_NEAR(sample_point(Distribution::beta_ball(3, -1.0), rng).norm(), 1.0, 1e-15);
}

TEST(Sampling, SecondMoments) {
    const struct {
        Distribution dist;
        double mean;
    } cases[] = {{Distribution::beta_ball(2, 0.0), 0.5}, {Distribution::beta_prime(2, 3.0), 1.0},
                 {Distribution::gaussian(3), 3.0}};
    for (const auto& c : cases) {
        Xoshiro256 rng(2024);
        const int n = 1000000;
        double s = 0.0;
        double s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r2 = sample_point(c.dist, rng).squaredNorm();
            s += r2;
            s2 += r2 * r2;
        }
        const double mean = s / n;
        const double sigma = std::sqrt((s2 / n - mean * mean) / n);
        EXPECT_LE(std::fabs(mean - c.mean), 4.0 * sigma) << c.dist.label() << " mean " << mean;
    }
}

TEST(Sampling, RadialLawKolmogorovSmirnov) {
    // 0.1% critical value of the one-sample KS statistic for large n
    const int n = 100000;
    const double critical = 1.9495 / std::sqrt(static_cast<double>(n));
    for (int d : {2, 3})
        for (double beta : {-0.5, 0.0, 1.0}) {
            Xoshiro256 rng(100 * d + static_cast<int>(10 * beta) + 17);
            std::vector<double> r2(n);
            for (auto& x : r2) x = sample_point(Distribution::beta_ball(d, beta), rng).squaredNorm();
            const double ks =
                ks_statistic(r2, [&](double x) { return boost::math::ibeta(0.5 * d, beta + 1.0, x); });
            EXPECT_LT(ks, critical) << "d=" << d << " beta=" << beta;
        }
    // beta-prime: R^2/(1+R^2) follows BetaLaw(d/2, beta - d/2)
    for (int d : {2, 3})
        for (double extra : {0.3, 1.0, 2.5}) {
            const double beta = 0.5 * d + extra;
            Xoshiro256 rng(900 + d);
            std::vector<double> v(n);
            for (auto& x : v) {
                const double s = sample_point(Distribution::beta_prime(d, beta), rng).squaredNorm();
                x = s / (1.0 + s);
            }
            const double ks = ks_statistic(v, [&](double x) { return boost::math::ibeta(0.5 * d, extra, x); });
            EXPECT_LT(ks, critical) << "d=" << d << " beta=" << beta;
        }
}

TEST(Sampling, GammaSmallShapeMean) {
    Xoshiro256 rng(5);
    for (double shape : {0.2, 0.5, 0.9, 1.0, 3.7}) {
        const int n = 200000;
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += gamma_variate(rng, shape);
        // the variance of a GammaLaw(k, 1) variate is k
        EXPECT_LE(std::fabs(s / n - shape), 4.0 * std::sqrt(shape / n)) << shape;
    }
}

TEST(EstimateSylvester, LineIsExactlyOne) {
    const auto r = estimate_sylvester(Distribution::beta_ball(1, 0.0), mc(100000));
    EXPECT_EQ(r.estimate, 1.0);
    EXPECT_EQ(r.successes, 100000);
    EXPECT_EQ(r.stderr_, 0.0);
}

TEST(EstimateSylvester, GaussianPlane) {
    const auto r = estimate_sylvester(Distribution::gaussian(2), mc(1000000));
    EXPECT_NEAR(r.stderr_, 4.8e-4, 2e-5);
    expect_within(r, 1.0 - 6.0 / pi * std::asin(1.0 / 3.0));
}

TEST(EstimateSylvester, UniformDisk) {
    expect_within(estimate_sylvester(Distribution::beta_ball(2, 0.0), mc(1000000)), 35.0 / (12.0 * pi * pi));
}

TEST(EstimateSylvester, SphereLimitNeverSucceeds) {
    for (int d : {2, 3}) EXPECT_EQ(estimate_sylvester(Distribution::beta_ball(d, -1.0), mc(100000)).successes, 0);
    EXPECT_THROW(estimate_sylvester(Distribution::beta_ball(1, -1.0), mc(10)), DomainError);
}

TEST(EstimateSylvester, WorkerCountDoesNotMatter) {
    const auto dist = Distribution::beta_prime(3, 2.5);
    const auto a = estimate_sylvester(dist, mc(30000, 99, 1));
    for (int w : {2, 8}) {
        const auto b = estimate_sylvester(dist, mc(30000, 99, w));
        EXPECT_EQ(a.successes, b.successes) << w;
        EXPECT_EQ(a.resampled, b.resampled) << w;
    }
    EXPECT_NE(a.successes, estimate_sylvester(dist, mc(30000, 100, 1)).successes);
}

TEST(EstimateSylvester, StoredTrialsMatchEstimate) {
    const auto dist = Distribution::gaussian(3);
    const auto r = estimate_sylvester(dist, mc(2000, 5, 1));
    std::int64_t hits = 0;
    for (std::uint64_t i = 0; i < 2000; ++i) hits += count_interior_points(sylvester_trial_points(dist, 5, i));
    EXPECT_EQ(r.resampled, 0);
    EXPECT_EQ(hits, r.successes);
}

TEST(EstimateSylvester, AffineInvariance) {
    Xoshiro256 maps(77);
    for (const auto& dist : {Distribution::gaussian(2), Distribution::beta_ball(3, 0.5),
                             Distribution::beta_prime(4, 3.0)}) {
        const int d = dist.d;
        int checked = 0;
        while (checked < 10000 / 3) {
            Matrix a(d, d);
            for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = standard_normal(maps);
            const Eigen::JacobiSVD<Matrix> svd(a);
            const auto sv = svd.singularValues();
            if (sv[d - 1] < 0.2 * sv[0]) continue;  // keep the map well conditioned
            Vector b(d);
            for (int k = 0; k < d; ++k) b[k] = 3.0 * standard_normal(maps);
            for (int t = 0; t < 100; ++t, ++checked) {
                const Matrix pts = sylvester_trial_points(dist, 31, static_cast<std::uint64_t>(checked));
                const Matrix moved = (a * pts).colwise() + b;
                ASSERT_EQ(count_interior_points(pts), count_interior_points(moved)) << dist.label() << " trial " << checked;
            }
        }
    }
}

TEST(EstimateSylvester, AtMostOneInteriorPoint) {
    for (const auto& dist : {Distribution::gaussian(2), Distribution::beta_ball(2, -0.5), Distribution::beta_ball(4, 0.0),
                             Distribution::beta_prime(2, 1.3)})
        for (std::uint64_t i = 0; i < 5000; ++i) ASSERT_LE(count_interior_points(sylvester_trial_points(dist, 3, i)), 1);
}

TEST(EstimateSylvester, ConfigValidation) {
    EXPECT_THROW(estimate_sylvester(Distribution::gaussian(2), mc(0)), DomainError);
    EXPECT_THROW(estimate_sylvester(Distribution::gaussian(2), mc(10, 0, 0)), DomainError);
}

TEST(RunTrials, ResamplesDegenerateTrials) {
    // every trial fails once, then succeeds on its second draw
    int calls = 0;
    const auto r = detail::run_trials(mc(1000, 1, 1), [&](Xoshiro256&) {
        if (calls++ % 2 == 0) throw Degenerate("fixture");
        return true;
    });
    EXPECT_EQ(r.successes, 1000);
    EXPECT_EQ(r.resampled, 1000);
}

TEST(RunTrials, GivesUpAfterBoundedRetries) {
    EXPECT_THROW(detail::run_trials(mc(10, 1, 2), [](Xoshiro256&) -> bool { throw Degenerate("always"); }), Degenerate);
}

TEST(ConeAngle, Examples) {
    Matrix quarter(2, 2);
    quarter << 1.0, 0.0,
               0.0, 1.0;
    expect_within(estimate_cone_angle({quarter}, mc(200000)), 0.25);
    Matrix wedge(2, 2);
    wedge << 1.0, 1.0,
             0.0, 1.0;
    expect_within(estimate_cone_angle({wedge}, mc(200000)), 0.125);
    Matrix e(4, 3);
    e << -1.0, -1.0, -1.0,
          1.0,  0.0,  0.0,
          0.0,  1.0,  0.0,
          0.0,  0.0,  1.0;
    expect_within(estimate_cone_angle({e}, mc(1000000)), kJ4 / 4.0);
    EXPECT_NEAR(kJ4 / 4.0, 0.0438699140229555, 1e-15);
}

TEST(ConeAngle, FullDimensionalOrthant) {
    expect_within(estimate_cone_angle({Matrix::Identity(3, 3)}, mc(200000)), 0.125);
    // a single ray covers one of the two directions of its line
    expect_within(estimate_cone_angle({Matrix::Identity(5, 1)}, mc(100000)), 0.5);
}

TEST(ConeAngle, RankFailure) {
    Matrix dep(3, 2);
    dep << 1.0, 2.0,
           1.0, 2.0,
           0.0, 0.0;
    EXPECT_THROW(estimate_cone_angle({dep}, mc(10)), Degenerate);
    EXPECT_THROW(estimate_cone_angle({Matrix(2, 3)}, mc(10)), DomainError);
}

TEST(ProjectionExperiment, RegularTriangle) {
    expect_within(projection_experiment(regular_simplex(3), mc(200000)), 1.0 / 3.0);
}

TEST(ProjectionExperiment, RegularFiveVertexSimplex) {
    const auto r = projection_experiment(regular_simplex(5), mc(1000000));
    expect_within(r, 2.0 * kJ5 / 5.0);
    EXPECT_NEAR(2.0 * kJ5 / 5.0, 0.0195693767448338, 1e-15);
}

TEST(ProjectionExperiment, Preconditions) {
    Matrix seg(1, 2);
    seg << 0.0, 1.0;
    EXPECT_THROW(projection_experiment(seg, mc(10)), DomainError);
    Matrix flat(2, 3);
    flat << 0.0, 1.0, 2.0,
            0.0, 1.0, 2.0;
    EXPECT_THROW(projection_experiment(flat, mc(10)), Degenerate);
    EXPECT_THROW(projection_experiment(Matrix(3, 3), mc(10)), DomainError);
}

TEST(ProjectionExperiment, AgreesWithDoubledVertexCone) {
    Matrix v(3, 4);
    v << 0.0, 2.0, 0.3, -0.4,
         0.0, 0.1, 1.5,  0.2,
         0.0, 0.4, 0.2,  1.1;
    const auto proj = projection_experiment(v, mc(400000, 11));
    const auto cone = estimate_cone_angle(vertex_cone(v), mc(400000, 12));
    const double combined = std::sqrt(proj.stderr_ * proj.stderr_ + 4.0 * cone.stderr_ * cone.stderr_);
    EXPECT_LE(std::fabs(proj.estimate - 2.0 * cone.estimate), 4.0 * combined);
}

TEST(RegularSimplex, IsometricToStandardBasis) {
    for (int n : {2, 3, 5, 8}) {
        const Matrix v = regular_simplex(n);
        ASSERT_EQ(v.rows(), n - 1);
        ASSERT_EQ(v.cols(), n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                EXPECT_NEAR((v.col(i) - v.col(j)).squaredNorm(), i == j ? 0.0 : 2.0, 1e-14);
    }
    EXPECT_THROW(regular_simplex(1), DomainError);
}
