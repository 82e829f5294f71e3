#include <chrono>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lrlssvm/error.hpp"
#include "lrlssvm/solver.hpp"
#include "oracles.hpp"

using namespace lrlssvm;

namespace {

double rel_error(const DualSolution& x, const DualSolution& ref) {
    Eigen::VectorXd xv(x.a.size() + 1);
    Eigen::VectorXd rv(ref.a.size() + 1);
    xv << x.b, x.a;
    rv << ref.b, ref.a;
    return (xv - rv).norm() / std::max(rv.norm(), 1e-300);
}

} // namespace

TEST(SolveDirect, HandWorkedTwoPoint) {
    const Eigen::MatrixXd phi{{1.0}, {0.0}};
    const Eigen::VectorXd t{{1.0, -1.0}};
    const auto ref = oracle::saddle_solve(phi, t, 1.0);
    EXPECT_NEAR(ref[0], -1.0 / 3.0, 1e-15);
    EXPECT_NEAR(ref[1], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(ref[2], 2.0 / 3.0, 1e-15);
    for (const DualSolution& s : {solve_direct(phi, t, 1.0), solve_fast(phi, t, 1.0)}) {
        EXPECT_NEAR(s.b, -1.0 / 3.0, 1e-14);
        EXPECT_NEAR(s.a[0], 2.0 / 3.0, 1e-14);
        EXPECT_NEAR(s.a[1], 2.0 / 3.0, 1e-14);
    }
}

TEST(SolveFast, ZeroFeaturesGiveGamma) {
    const Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(4, 2);
    const Eigen::VectorXd t{{1.0, -1.0, 1.0, -1.0}};
    const DualSolution s = solve_fast(phi, t, 7.0);
    EXPECT_NEAR(s.b, 0.0, 1e-14);
    for (Eigen::Index n = 0; n < 4; ++n) {
        EXPECT_NEAR(s.a[n], 7.0, 1e-12);
    }
}

TEST(SolveFast, MatchesOracleOnRandomInstances) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const double gamma = std::pow(10.0, -1.0 + 4.0 * (trial % 5) / 4.0);
        const auto inst = oracle::random_instance(rng, 5 + trial % 30, 1 + trial % 6, 1 + trial % 4,
                                                  trial % 2 ? Family::Sbf : Family::RobustRbf,
                                                  gamma);
        const Eigen::MatrixXd phi = oracle::features(inst.points, inst.kernel);
        const auto ref = oracle::saddle_solve(phi, inst.labels, gamma);
        const DualSolution s = solve_fast(phi, inst.labels, gamma);
        DualSolution r;
        r.b = ref[0];
        r.a = Eigen::Map<const Eigen::VectorXd>(ref.data() + 1, inst.points.rows());
        EXPECT_LE(rel_error(s, r), 1e-8) << "trial " << trial;
    }
}

TEST(SolveFast, MatchesDirectAcrossGammaRange) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> n_dist(5, 200);
    std::uniform_int_distribution<int> m_dist(1, 8);
    std::uniform_int_distribution<int> d_dist(1, 10);
    std::uniform_real_distribution<double> log_gamma(-1.0, 5.0);
    for (int trial = 0; trial < 60; ++trial) {
        const double gamma = std::pow(10.0, log_gamma(rng));
        const auto inst = oracle::random_instance(rng, n_dist(rng), m_dist(rng), d_dist(rng),
                                                  trial % 2 ? Family::Sbf : Family::RobustRbf,
                                                  gamma);
        const FeatureMatrix phi = feature_matrix(inst.points, inst.kernel);
        EXPECT_LE(rel_error(solve_fast(phi, inst.labels, gamma),
                            solve_direct(phi, inst.labels, gamma)),
                  1e-8)
            << "trial " << trial << " gamma " << gamma;
    }
}

TEST(SolveFast, KktConditions) {
    std::mt19937_64 rng(57);
    std::uniform_real_distribution<double> log_gamma(-1.0, 5.0);
    for (int trial = 0; trial < 60; ++trial) {
        const double gamma = std::pow(10.0, log_gamma(rng));
        const auto inst = oracle::random_instance(rng, 5 + 3 * trial, 1 + trial % 8, 1 + trial % 10,
                                                  trial % 2 ? Family::Sbf : Family::RobustRbf,
                                                  gamma);
        const FeatureMatrix phi = feature_matrix(inst.points, inst.kernel);
        const DualSolution s = solve_fast(phi, inst.labels, gamma);
        EXPECT_NEAR(s.a.dot(inst.labels), 0.0, 1e-8) << "trial " << trial;
        const Eigen::VectorXd y = dual_outputs(phi, s, inst.labels);
        for (Eigen::Index n = 0; n < y.size(); ++n) {
            EXPECT_NEAR(inst.labels[n] * y[n], 1.0 - s.a[n] / gamma, 1e-8) << "trial " << trial;
        }
    }
}

TEST(SolveFast, Errors) {
    const Eigen::MatrixXd phi = Eigen::MatrixXd::Ones(3, 1);
    EXPECT_THROW(solve_fast(phi, Eigen::VectorXd{{1.0, -1.0}}, 1.0), DataError);
    EXPECT_THROW(solve_fast(phi, Eigen::VectorXd{{1.0, -1.0, 1.0}}, 0.0), ConfigError);
    EXPECT_THROW(solve_fast(phi, Eigen::VectorXd{{1.0, -1.0, 1.0}}, -3.0), ConfigError);
}

TEST(SolveDirect, RefusesLargeN) {
    const Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(kDirectSolveMaxN + 1, 1);
    Eigen::VectorXd t = Eigen::VectorXd::Ones(kDirectSolveMaxN + 1);
    t[0] = -1.0;
    EXPECT_THROW(solve_direct(phi, t, 1.0), ConfigError);
}

TEST(SparseModel, HandWorkedPrediction) {
    const Eigen::MatrixXd points{{0.0}, {1.0}};
    const Eigen::VectorXd t{{1.0, -1.0}};
    LowRankKernel kernel{Family::Sbf, {BasisUnit{Eigen::VectorXd{{0.0}}, Eigen::VectorXd{{1.0}}}}};
    const FeatureMatrix phi = feature_matrix(points, kernel);
    ASSERT_EQ(phi(0, 0), 1.0);
    ASSERT_EQ(phi(1, 0), 0.0);
    const DualSolution s = solve_fast(phi, t, 1.0);
    const SparseModel m = sparse_coefficients(phi, s, t, kernel);
    EXPECT_NEAR(m.theta[0], 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(predict_score(m, Eigen::VectorXd{{0.0}}), 1.0 / 3.0, 1e-14);
    EXPECT_EQ(classify(m, points.topRows(1))[0], 1.0);
}

TEST(SparseModel, ZeroThetaPredictsBiasSign) {
    std::mt19937_64 rng(1);
    const auto inst = oracle::random_instance(rng, 20, 3, 2, Family::RobustRbf, 1.0);
    SparseModel m{Eigen::VectorXd::Zero(3), -2.0, inst.kernel, std::nullopt};
    EXPECT_EQ(classify(m, inst.points), Eigen::VectorXd::Constant(20, -1.0));
    m.b = 0.0;
    EXPECT_EQ(classify(m, inst.points), Eigen::VectorXd::Constant(20, 1.0));
    EXPECT_EQ(label_of(0.0), 1.0);
    EXPECT_EQ(label_of(-1e-300), -1.0);
}

TEST(SparseModel, MatchesDualOutputs) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = oracle::random_instance(rng, 10 + trial, 1 + trial % 5, 1 + trial % 3,
                                                  trial % 2 ? Family::Sbf : Family::RobustRbf,
                                                  10.0);
        const FeatureMatrix phi = feature_matrix(inst.points, inst.kernel);
        const DualSolution s = solve_fast(phi, inst.labels, 10.0);
        const SparseModel m = sparse_coefficients(phi, s, inst.labels, inst.kernel);
        const Eigen::VectorXd dual = dual_outputs(phi, s, inst.labels);
        const Eigen::MatrixXd k = phi * phi.transpose();
        Eigen::VectorXd dense = k * s.a.cwiseProduct(inst.labels);
        dense.array() += s.b;
        const Eigen::VectorXd sparse = predict_scores(m, inst.points);
        EXPECT_LE((sparse - dense).lpNorm<Eigen::Infinity>(), 1e-10 * (1.0 + dense.norm()));
        EXPECT_LE((dual - dense).lpNorm<Eigen::Infinity>(), 1e-10 * (1.0 + dense.norm()));
    }
}

TEST(SparseModel, NormalizationAppliedToInputs) {
    LowRankKernel kernel{Family::RobustRbf, {BasisUnit{Eigen::VectorXd{{0.0}}, Eigen::VectorXd{{1.0}}}}};
    SparseModel m{Eigen::VectorXd{{1.0}}, 0.0, kernel,
                  NormStats{Eigen::VectorXd{{5.0}}, Eigen::VectorXd{{2.0}}}};
    EXPECT_DOUBLE_EQ(predict_score(m, Eigen::VectorXd{{5.0}}), 1.0);
    EXPECT_DOUBLE_EQ(predict_score(m, Eigen::VectorXd{{7.0}}), std::exp(-1.0));
}

TEST(Gaussian, IdenticalPointsGiveSymmetricSolution) {
    Dataset d{Eigen::MatrixXd{{0.5, 0.5}, {0.5, 0.5}}, Eigen::VectorXd{{1.0, -1.0}}};
    const GaussianModel g = solve_gaussian_lssvm(d, 3.0, 1.0);
    EXPECT_NEAR(g.b, 0.0, 1e-14);
    EXPECT_NEAR(g.a[0], g.a[1], 1e-14);
}

TEST(Gaussian, KernelWidthConventions) {
    GaussianModel g;
    g.sigma = 2.0;
    const Eigen::VectorXd x1{{0.0, 0.0}};
    const Eigen::VectorXd x2{{2.0, 0.0}};
    g.width = GaussianWidth::TwoSigmaSquared;
    EXPECT_DOUBLE_EQ(g.kernel(x1, x2), std::exp(-0.5));
    g.width = GaussianWidth::SigmaSquared;
    EXPECT_DOUBLE_EQ(g.kernel(x1, x2), std::exp(-1.0));
}

TEST(Gaussian, SatisfiesKkt) {
    std::mt19937_64 rng(40);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = oracle::random_instance(rng, 30, 1, 2, Family::Sbf, 1.0);
        const Dataset d{inst.points, inst.labels};
        const double gamma = 50.0;
        const GaussianModel g = solve_gaussian_lssvm(d, gamma, 0.5);
        EXPECT_NEAR(g.a.dot(inst.labels), 0.0, 1e-8);
        for (Eigen::Index n = 0; n < 30; ++n) {
            const double y = g.score(inst.points.row(n).transpose());
            EXPECT_NEAR(inst.labels[n] * y, 1.0 - g.a[n] / gamma, 1e-8);
        }
    }
}

TEST(SolveFast, ScalesBetterThanDirect) {
    std::mt19937_64 rng(3);
    const auto inst = oracle::random_instance(rng, 1500, 5, 3, Family::RobustRbf, 10.0);
    const FeatureMatrix phi = feature_matrix(inst.points, inst.kernel);
    auto time_of = [&](auto&& f) {
        double best = 1e300;
        for (int rep = 0; rep < 3; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            f();
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
        return best;
    };
    const double fast = time_of([&] { (void)solve_fast(phi, inst.labels, 10.0); });
    const double direct = time_of([&] { (void)solve_direct(phi, inst.labels, 10.0); });
    EXPECT_LT(fast * 10.0, direct);
}
