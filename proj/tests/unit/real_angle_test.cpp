#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "angleguard/generators.hpp"
#include "angleguard/real_angle.hpp"
#include "oracles.hpp"

using namespace angleguard;

namespace {

constexpr double pi = std::numbers::pi;

RealVector vec(std::initializer_list<double> v) {
    RealVector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index k = 0;
    for (double x : v) out(k++) = x;
    return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::usage;
}

} // namespace

TEST(Angle, Examples) {
    EXPECT_NEAR(angle(vec({1, 0}), vec({0, 1})).radians(), pi / 2, 1e-15);
    const RealVector x = vec({0.3, -1.2, 2.0});
    EXPECT_NEAR(angle(x, x).radians(), 0.0, 1e-15);
    EXPECT_NEAR(angle(x, -x).radians(), pi, 1e-15);
    EXPECT_NEAR(angle(vec({1, 0}), vec({1, 1})).radians(), pi / 4, 1e-15);
    EXPECT_EQ(kind_of([] { (void)angle(vec({0, 0}), vec({1, 0})); }), ErrorKind::input);
    EXPECT_EQ(kind_of([] { (void)Angle(-0.1); }), ErrorKind::input);
}

TEST(Angle, Invariances) {
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng = Rng::for_trial(21, static_cast<std::uint64_t>(trial));
        const Eigen::Index n = rng.uniform_int(2, 8);
        const RealVector x = rng.normal_vector(n);
        const RealVector y = rng.normal_vector(n);
        const double a = angle(x, y).radians();
        EXPECT_NEAR(a, oracle::angle(x, y), 1e-12);
        EXPECT_DOUBLE_EQ(a, angle(y, x).radians());
        EXPECT_NEAR(angle(rng.uniform(0.1, 5) * x, rng.uniform(0.1, 5) * y).radians(), a, 1e-13);
        EXPECT_NEAR(angle(-x, y).radians(), pi - a, 1e-13);
        // Polarization.
        EXPECT_NEAR(x.dot(y), 0.25 * ((x + y).squaredNorm() - (x - y).squaredNorm()), 1e-12 * x.norm() * y.norm());
    }
}

TEST(Orthogonality, Examples) {
    EXPECT_TRUE(is_orthogonal(vec({1, 0}), vec({0, 1})));
    EXPECT_FALSE(is_parallel(vec({1, 0}), vec({0, 1})));
    const RealVector x = vec({1.5, -2.0, 0.25});
    EXPECT_TRUE(is_parallel(x, 2.0 * x));
    EXPECT_TRUE(is_orthogonal(vec({1, 1}), vec({1, -1})));
}

TEST(Orthogonality, EqualNormIffDiagonalsOrthogonal) {
    for (int trial = 0; trial < 300; ++trial) {
        Rng rng = Rng::for_trial(22, static_cast<std::uint64_t>(trial));
        const Eigen::Index n = rng.uniform_int(2, 8);
        const auto [x, y] = gen::equal_norm_pair(rng, n);
        EXPECT_TRUE(is_orthogonal(x + y, x - y));
        const RealVector z = rng.uniform(1.1, 2.0) * y;
        EXPECT_FALSE(is_orthogonal(x + z, x - z));
    }
}

TEST(LambdaEqualNorm, Examples) {
    const RealVector e1 = vec({1, 0});
    const RealVector e2 = vec({0, 1});
    EXPECT_NEAR(lambda_equal_norm(e1, e2, Angle(pi / 3)), 1.0 / std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(lambda_equal_norm(e1, e2, Angle(2 * pi / 3)), -1.0 / std::sqrt(3.0), 1e-14);
    const RealVector y = vec({std::cos(pi / 3), std::sin(pi / 3)});
    const double l = lambda_equal_norm(e1, y, Angle(pi / 2));
    EXPECT_NEAR(l, -0.5, 1e-14);
    EXPECT_NEAR((e1 + l * y).dot(y), 0.0, 1e-15);
}

TEST(LambdaEqualNorm, Errors) {
    const RealVector e1 = vec({1, 0});
    EXPECT_EQ(kind_of([&] { (void)lambda_equal_norm(e1, vec({0, 2}), Angle(pi / 3)); }), ErrorKind::precondition);
    EXPECT_EQ(kind_of([&] { (void)lambda_equal_norm(e1, vec({-1, 0}), Angle(pi / 3)); }), ErrorKind::degenerate);
    EXPECT_EQ(kind_of([&] { (void)lambda_equal_norm(e1, vec({0, 1}), Angle(pi / 2)); }), ErrorKind::excluded_angle);
    EXPECT_EQ(kind_of([&] { (void)lambda_equal_norm(e1, vec({0, 1}), Angle(0.0)); }), ErrorKind::precondition);
}

TEST(LambdaEqualNorm, RoundTripProperty) {
    for (int trial = 0; trial < 2000; ++trial) {
        Rng rng = Rng::for_trial(23, static_cast<std::uint64_t>(trial));
        const Eigen::Index n = rng.uniform_int(2, 8);
        const auto [x, y] = gen::equal_norm_pair(rng, n);
        double theta = rng.uniform(0.01, pi - 0.01);
        if (std::abs(theta - oracle::angle(x, y)) < 1e-3) continue;
        const double l = lambda_equal_norm(x, y, Angle(theta));
        ASSERT_NE(l, 0.0);
        EXPECT_NEAR(oracle::angle(x + l * y, y), theta, 1e-8);
        EXPECT_NEAR(oracle::angle(y + l * x, x), theta, 1e-8);
        EXPECT_TRUE(lambda_witness_check(x, y, l, Angle(theta)));
    }
}

TEST(LambdaWitnessCheck, UnequalNormsNeverPass) {
    const RealVector x = vec({1, 0});
    const RealVector y = vec({0, 2});
    for (double l = -5.0; l <= 5.0; l += 0.01) {
        if (std::abs(l) < 1e-9) continue;
        EXPECT_FALSE(lambda_witness_check(x, y, l, Angle(pi / 3))) << l;
    }
    EXPECT_EQ(kind_of([&] { (void)lambda_witness_check(x, y, 0.0, Angle(pi / 3)); }), ErrorKind::precondition);
}

TEST(MuWitness, Examples) {
    const RealVector x = vec({1, 0});
    const RealVector y = vec({1, 1});
    EXPECT_EQ(mu_witness(x, y), 1.0);
    EXPECT_FALSE(is_orthogonal(x + y, x - y));
    const RealVector z = vec({0.6, 0.8});
    EXPECT_EQ(mu_witness(x, z), 1.0);
    EXPECT_TRUE(is_orthogonal(x + z, x - z));
    EXPECT_EQ(mu_witness(x, -x), -1.0);
    EXPECT_EQ(kind_of([&] { (void)mu_witness(x, vec({0, 1})); }), ErrorKind::input);
}

TEST(SimilarityGamma, Examples) {
    const auto v1 = similarity_gamma(3.0 * Eigen::MatrixXd::Identity(4, 4));
    ASSERT_TRUE(v1.is_similarity);
    EXPECT_NEAR(*v1.gamma, 3.0, 1e-12);
    Eigen::Matrix2d r;
    r << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
    const auto v2 = similarity_gamma(2.0 * r);
    ASSERT_TRUE(v2.is_similarity);
    EXPECT_NEAR(*v2.gamma, 2.0, 1e-12);
    const auto v3 = similarity_gamma(Eigen::Vector2d(1, 2).asDiagonal().toDenseMatrix());
    EXPECT_FALSE(v3.is_similarity);
    EXPECT_FALSE(v3.gamma.has_value());
    EXPECT_NEAR(v3.residual, 1.0, 1e-12);
    EXPECT_EQ(kind_of([] { (void)similarity_gamma(Eigen::MatrixXd::Zero(2, 2)); }), ErrorKind::zero_map);
}

TEST(SimilarityGamma, NonInjectiveIsNotSimilarity) {
    // A wide map cannot be injective even if its nonzero singular values agree.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2, 3);
    t(0, 0) = 1.0;
    t(1, 1) = 1.0;
    EXPECT_FALSE(similarity_gamma(t).is_similarity);
}

TEST(SimilarityConditions, SimilarityPassesAll) {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = Rng::for_trial(24, static_cast<std::uint64_t>(trial));
        const Eigen::Index n = rng.uniform_int(2, 6);
        const RealLinearMap t = gen::similarity_map(rng, n, n + rng.uniform_int(0, 2), rng.uniform(0.5, 3.0));
        const auto r = thm35_conditions(t, 64, rng.next_u64(), ToleranceConfig{1e-8, 1e-8, 1e-8});
        EXPECT_TRUE(r.all_sampled_pass());
        EXPECT_TRUE(r.consistent());
    }
}

TEST(SimilarityConditions, DiagonalMapWitness) {
    const RealLinearMap t = Eigen::Vector2d(1, 2).asDiagonal().toDenseMatrix();
    const auto r = thm35_conditions(t, 64, 7);
    EXPECT_FALSE(r.conditions[0].sampled);
    EXPECT_FALSE(r.conditions[2].sampled);
    EXPECT_FALSE(r.conditions[3].sampled);
    ASSERT_TRUE(r.conditions[2].witness.has_value());
    const auto& w = *r.conditions[2].witness;
    // The witness is orthogonal before the map and not after it.
    EXPECT_LE(std::abs(w.x.dot(w.y)), 1e-9 * w.x.norm() * w.y.norm());
    EXPECT_GT(std::abs((t * w.x).dot(t * w.y)), 1e-3 * (t * w.x).norm() * (t * w.y).norm());
    EXPECT_TRUE(r.consistent());
    EXPECT_EQ(kind_of([] { (void)thm35_conditions(Eigen::MatrixXd::Zero(2, 2), 8, 1); }), ErrorKind::zero_map);
}

TEST(SimilarityConditions, SpreadMapsAreCaught) {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = Rng::for_trial(25, static_cast<std::uint64_t>(trial));
        const Eigen::Index n = rng.uniform_int(2, 6);
        const RealLinearMap t = gen::spread_map(rng, n, n, 0.1);
        const Eigen::VectorXd sv = oracle::singular_values(t);
        ASSERT_GE(sv(0) - sv(sv.size() - 1), 0.1 - 1e-12);
        const auto r = thm35_conditions(t, 64, rng.next_u64());
        EXPECT_FALSE(r.conditions[0].sampled);
        bool witnessed = false;
        for (std::size_t c = 2; c < 7; ++c) witnessed = witnessed || r.conditions[c].witness.has_value();
        EXPECT_TRUE(witnessed);
        EXPECT_TRUE(r.consistent());
    }
}

TEST(ThetaPreserving, Examples) {
    Rng rng(26);
    const RealLinearMap s = gen::similarity_map(rng, 3, 3, 1.7);
    const auto r1 = theta_preserving_check(s, Angle(pi / 3), 64, 1);
    EXPECT_TRUE(r1.hypotheses_hold());
    EXPECT_TRUE(r1.conclusion);

    const RealLinearMap d = Eigen::Vector2d(1, 2).asDiagonal().toDenseMatrix();
    const auto r2 = theta_preserving_check(d, Angle(pi / 2), 64, 1);
    EXPECT_FALSE(r2.hypothesis_i);
    ASSERT_TRUE(r2.witness_i.has_value());
    EXPECT_FALSE(r2.falsified());

    EXPECT_EQ(kind_of([&] { (void)theta_preserving_check(s, Angle(0.0), 8, 1); }), ErrorKind::precondition);
    Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(2, 2);
    singular(0, 0) = 1.0;
    EXPECT_EQ(kind_of([&] { (void)theta_preserving_check(singular, Angle(1.0), 8, 1); }), ErrorKind::precondition);
}

TEST(CompareInnerProducts, Examples) {
    const Eigen::MatrixXd g1 = Eigen::MatrixXd::Identity(2, 2);
    const auto c1 = compare_inner_products(GramPair(g1, 4.0 * g1), 32, 1);
    ASSERT_TRUE(c1.gamma.has_value());
    EXPECT_NEAR(*c1.gamma, 2.0, 1e-12);
    const auto c2 = compare_inner_products(GramPair(g1, g1), 32, 1);
    ASSERT_TRUE(c2.gamma.has_value());
    EXPECT_NEAR(*c2.gamma, 1.0, 1e-12);
    const auto c3 = compare_inner_products(GramPair(g1, Eigen::Vector2d(1, 2).asDiagonal().toDenseMatrix()), 32, 1);
    EXPECT_FALSE(c3.gamma.has_value());
    ASSERT_TRUE(c3.witness.has_value());
    EXPECT_NE(c3.witness->form2, 0.0);
    EXPECT_EQ(kind_of([&] { (void)GramPair(g1, -g1); }), ErrorKind::input);
}

TEST(CompareInnerProducts, RecoversGamma) {
    for (int trial = 0; trial < 200; ++trial) {
        Rng rng = Rng::for_trial(27, static_cast<std::uint64_t>(trial));
        const Eigen::Index n = rng.uniform_int(2, 8);
        const Eigen::MatrixXd g1 = gen::random_spd(rng, n);
        const double gamma = rng.uniform(0.5, 3.0);
        const auto c = compare_inner_products(GramPair(g1, gamma * gamma * g1), 16, rng.next_u64());
        ASSERT_TRUE(c.gamma.has_value());
        EXPECT_LE(std::abs(*c.gamma - gamma), 1e-8 * gamma);
    }
}

TEST(NormCube, KeepsEqualNormsButIsNotSimilarity) {
    const auto r = equal_norm_condition(norm_cube, 3, 1000, 5);
    EXPECT_TRUE(r.holds);
    EXPECT_FALSE(r.is_similarity);
    EXPECT_GT(r.ratio_spread, 0.1);
    const RealVector x = vec({1, 2, 2});
    EXPECT_TRUE(norm_cube(x).isApprox(9.0 * x));
}

TEST(Dependence, LinearImagesOfDependentVectorsStayDependent) {
    for (int trial = 0; trial < 200; ++trial) {
        Rng rng = Rng::for_trial(28, static_cast<std::uint64_t>(trial));
        const Eigen::Index n = rng.uniform_int(2, 6);
        const RealVector x = rng.normal_vector(n);
        const RealVector y = rng.uniform(-3.0, 3.0) * x;
        const RealLinearMap t = gen::random_linear_map(rng, n, rng.uniform_int(2, 6));
        EXPECT_TRUE(are_dependent(x, y));
        if ((t * x).norm() > 1e-9 && (t * y).norm() > 1e-9) EXPECT_TRUE(are_dependent(t * x, t * y));
        EXPECT_FALSE(are_dependent(x, rng.normal_vector(n)));
    }
}
