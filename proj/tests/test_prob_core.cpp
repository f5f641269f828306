#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mixkit/errors.hpp"
#include "mixkit/prob_core.hpp"
#include "oracles.hpp"

using namespace mixkit;

namespace {

void expect_vector(const ProbVector& v, std::initializer_list<double> want, double tol = 0.0) {
  ASSERT_EQ(v.size(), want.size());
  std::size_t i = 0;
  for (double w : want) EXPECT_NEAR(v[i++], w, tol) << "index " << i - 1;
}

}  // namespace

TEST(Marginals, KnownCases) {
  auto [mu, nu] = marginals(JointDist{{0.5, 0.0}, {0.0, 0.5}});
  expect_vector(mu, {0.5, 0.5});
  expect_vector(nu, {0.5, 0.5});

  auto [one_mu, one_nu] = marginals(JointDist{{1.0}});
  expect_vector(one_mu, {1.0});
  expect_vector(one_nu, {1.0});

  auto [mu2, nu2] = marginals(JointDist{{0.2, 0.1}, {0.3, 0.4}});
  expect_vector(mu2, {0.3, 0.7}, 1e-15);
  expect_vector(nu2, {0.5, 0.5}, 1e-15);
}

TEST(Product, OuterProduct) {
  EXPECT_EQ(product(ProbVector{1.0}, ProbVector{1.0})(0, 0), 1.0);
  const JointDist u = product(ProbVector{0.5, 0.5}, ProbVector{0.5, 0.5});
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(u(i, j), 0.25);
  }
  const JointDist p = product(ProbVector{0.3, 0.7}, ProbVector{0.5, 0.5});
  EXPECT_NEAR(p(0, 0), 0.15, 1e-16);
  EXPECT_NEAR(p(0, 1), 0.15, 1e-16);
  EXPECT_NEAR(p(1, 0), 0.35, 1e-16);
  EXPECT_NEAR(p(1, 1), 0.35, 1e-16);
}

TEST(TotalVariation, KnownCases) {
  EXPECT_EQ(total_variation(ProbVector{0.2, 0.8}, ProbVector{0.2, 0.8}), 0.0);
  EXPECT_EQ(total_variation(ProbVector{1.0, 0.0}, ProbVector{0.0, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(total_variation(ProbVector{0.5, 0.5}, ProbVector{0.75, 0.25}), 0.25);
}

TEST(Entropy, KnownCases) {
  EXPECT_EQ(entropy(ProbVector{1.0, 0.0}), 0.0);
  EXPECT_NEAR(entropy(ProbVector{0.5, 0.5}), std::log(2.0), 1e-15);
  const double direct = -(0.25 * std::log(0.25) + 0.75 * std::log(0.75));
  EXPECT_NEAR(entropy(ProbVector{0.25, 0.75}), direct, 1e-15);
}

TEST(MutualInformation, KnownCases) {
  EXPECT_NEAR(mutual_information(product(ProbVector{0.3, 0.7}, ProbVector{0.1, 0.9})), 0.0, 1e-15);
  EXPECT_NEAR(mutual_information(JointDist{{0.5, 0.0}, {0.0, 0.5}}), std::log(2.0), 1e-15);
}

TEST(KlDivergence, KnownCases) {
  EXPECT_EQ(kl_divergence(ProbVector{0.3, 0.7}, ProbVector{0.3, 0.7}), 0.0);
  EXPECT_NEAR(kl_divergence(ProbVector{1.0, 0.0}, ProbVector{0.5, 0.5}), std::log(2.0), 1e-15);
  EXPECT_TRUE(is_infinite_divergence(kl_divergence(ProbVector{0.5, 0.5}, ProbVector{1.0, 0.0})));
}

TEST(GammaMatrix, KnownCases) {
  const GammaMatrix g = gamma_matrix(JointDist{{0.5, 0.0}, {0.0, 0.5}});
  EXPECT_EQ(g(0, 0), 0.25);
  EXPECT_EQ(g(0, 1), -0.25);
  EXPECT_EQ(g(1, 0), -0.25);
  EXPECT_EQ(g(1, 1), 0.25);
  const GammaMatrix z = gamma_matrix(product(ProbVector{0.5, 0.5}, ProbVector{0.5, 0.5}));
  EXPECT_EQ(z.matrix().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Validation, RejectsBadInput) {
  EXPECT_THROW(ProbVector({0.5, -0.1, 0.6}), InputError);
  EXPECT_THROW(ProbVector({0.5, 0.6}), InputError);
  EXPECT_THROW(ProbVector({std::nan(""), 1.0}), InputError);
  EXPECT_THROW((JointDist{{0.5, 0.5}, {0.5}}), InputError);
  EXPECT_THROW(GammaMatrix(Eigen::MatrixXd::Ones(2, 2)), InputError);
}

TEST(Validation, RescalesSmallDrift) {
  const ProbVector v{0.5, 0.5 + 1e-10};
  EXPECT_NEAR(v[0] + v[1], 1.0, 1e-15);
}

class ProbCoreProperty : public ::testing::Test {
 protected:
  std::mt19937_64 rng{7};
  JointDist draw() {
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    return oracle::random_joint(dim(rng), dim(rng), rng, 0.15);
  }
};

TEST_F(ProbCoreProperty, MarginalizationThroughProductIsIdempotent) {
  for (int t = 0; t < 300; ++t) {
    const JointDist theta = draw();
    const auto [mu, nu] = marginals(theta);
    const auto [mu2, nu2] = marginals(product(mu, nu));
    // Row sums of mu_i nu_j reproduce mu_i up to the rounding of sum(nu).
    for (std::size_t i = 0; i < mu.size(); ++i) EXPECT_NEAR(mu2[i], mu[i], 4e-16);
    for (std::size_t j = 0; j < nu.size(); ++j) EXPECT_NEAR(nu2[j], nu[j], 4e-16);
  }
}

TEST_F(ProbCoreProperty, GammaOfProductVanishes) {
  for (int t = 0; t < 300; ++t) {
    const auto [mu, nu] = marginals(draw());
    EXPECT_LE(gamma_matrix(product(mu, nu)).matrix().cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST_F(ProbCoreProperty, GammaRowsAndColumnsSumToZero) {
  for (int t = 0; t < 300; ++t) {
    const GammaMatrix g = gamma_matrix(draw());
    EXPECT_LE(g.matrix().rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE(g.matrix().colwise().sum().cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST_F(ProbCoreProperty, MutualInformationIsKlToProduct) {
  for (int t = 0; t < 1000; ++t) {
    const JointDist theta = draw();
    const auto [mu, nu] = marginals(theta);
    EXPECT_NEAR(mutual_information(theta), kl_divergence(theta, product(mu, nu)), 1e-12);
  }
}

TEST_F(ProbCoreProperty, TotalVariationTriangle) {
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t k = dim(rng);
    const JointDist a = oracle::random_joint(1, k, rng, 0.2);
    const JointDist b = oracle::random_joint(1, k, rng, 0.2);
    const JointDist c = oracle::random_joint(1, k, rng, 0.2);
    EXPECT_LE(total_variation(a, c), total_variation(a, b) + total_variation(b, c) + 1e-12);
  }
}

TEST_F(ProbCoreProperty, TransposeSwapsMarginals) {
  for (int t = 0; t < 100; ++t) {
    const JointDist theta = draw();
    const auto [mu, nu] = marginals(theta);
    const auto [tmu, tnu] = marginals(transpose(theta));
    EXPECT_LE((tmu.weights() - nu.weights()).cwiseAbs().maxCoeff(), 4e-16);
    EXPECT_LE((tnu.weights() - mu.weights()).cwiseAbs().maxCoeff(), 4e-16);
  }
}
