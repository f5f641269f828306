#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mixkit/errors.hpp"
#include "mixkit/mixing_exact.hpp"
#include "oracles.hpp"

using namespace mixkit;

namespace {

const JointDist kDiag{{0.5, 0.0}, {0.0, 0.5}};
const JointDist kIndependent{{0.25, 0.25}, {0.25, 0.25}};

}  // namespace

TEST(Beta, KnownCases) {
  EXPECT_EQ(beta(kIndependent), 0.0);
  EXPECT_EQ(beta(kDiag), 0.5);
}

TEST(Phi, KnownCases) {
  EXPECT_EQ(phi(kIndependent), 0.0);
  EXPECT_EQ(phi(kDiag), 0.5);
  EXPECT_EQ(phi_reverse(kDiag), phi(kDiag));
  const JointDist a{{0.5, 0.25}, {0.0, 0.25}};
  const JointDist at{{0.5, 0.0}, {0.25, 0.25}};
  EXPECT_EQ(phi_reverse(a), phi(at));
}

TEST(Phi, SkipsEmptyColumns) {
  const JointDist theta{{0.5, 0.0, 0.0}, {0.0, 0.5, 0.0}};
  EXPECT_EQ(phi(theta), 0.5);
  EXPECT_EQ(phi_reverse(theta), 0.5);
}

TEST(AlphaExact, KnownCases) {
  EXPECT_EQ(alpha_exact(kIndependent), 0.0);
  EXPECT_EQ(alpha_exact(kDiag), 0.25);
  EXPECT_EQ(alpha_bruteforce(JointDist{{1.0}}), 0.0);
  EXPECT_NEAR(alpha_bruteforce(JointDist{{0.5, 0, 0}, {0, 0.25, 0}, {0, 0, 0.25}}), 0.25, 1e-15);
}

TEST(AlphaExact, RefusesOversizedInput) {
  std::mt19937_64 rng(3);
  const JointDist big = oracle::random_joint(30, 30, rng);
  EXPECT_THROW(alpha_exact(big), SizeRefusal);
  EXPECT_THROW(alpha_exact(oracle::random_joint(6, 6, rng), 4), SizeRefusal);
  EXPECT_THROW(alpha_bruteforce(oracle::random_joint(13, 12, rng)), SizeRefusal);
}

TEST(AlphaExact, EnumeratesTheSmallerSide) {
  std::mt19937_64 rng(4);
  const JointDist wide = oracle::random_joint(3, 30, rng);
  EXPECT_NEAR(alpha_exact(wide), alpha_exact(transpose(wide)), 1e-15);
  EXPECT_NO_THROW(alpha_exact(wide, 3));
}

TEST(MixingReport, Diagonal) {
  const MixingReport r = mixing_report(kDiag);
  EXPECT_TRUE(r.alpha_is_exact);
  EXPECT_EQ(r.alpha(), 0.25);
  EXPECT_EQ(r.beta, 0.5);
  EXPECT_EQ(r.phi_x_given_y, 0.5);
  EXPECT_EQ(r.phi_y_given_x, 0.5);
  EXPECT_NEAR(r.mutual_information, std::log(2.0), 1e-15);
  EXPECT_TRUE(satisfies_chain(r));
}

TEST(MixingReport, IndependentIsAllZero) {
  const MixingReport r = mixing_report(product(ProbVector{0.2, 0.3, 0.5}, ProbVector{0.6, 0.4}));
  EXPECT_NEAR(r.alpha(), 0.0, 1e-16);
  EXPECT_NEAR(r.beta, 0.0, 1e-16);
  EXPECT_NEAR(r.phi_x_given_y, 0.0, 1e-16);
  EXPECT_NEAR(r.phi_y_given_x, 0.0, 1e-16);
}

TEST(MixingReport, FallsBackToBoundsAboveLimit) {
  std::mt19937_64 rng(5);
  const JointDist theta = oracle::random_joint(8, 8, rng);
  MixingOptions o;
  o.enum_limit = 4;
  const MixingReport r = mixing_report(theta, o);
  EXPECT_FALSE(r.alpha_is_exact);
  const double truth = alpha_exact(theta);
  EXPECT_LE(r.alpha_lower, truth + 1e-12);
  EXPECT_GE(r.alpha_upper, truth - 1e-9);
  EXPECT_TRUE(satisfies_chain(r));
}

class ExactOracle : public ::testing::TestWithParam<int> {};

TEST_P(ExactOracle, MatchesEventEnumeration) {
  std::mt19937_64 rng(100 + GetParam());
  std::uniform_int_distribution<std::size_t> dim(2, 5);
  for (int t = 0; t < 100; ++t) {
    const JointDist theta = oracle::random_joint(dim(rng), dim(rng), rng, 0.1);
    const double a = oracle::alpha_abs(theta);
    EXPECT_NEAR(alpha_exact(theta), a, 1e-12);
    EXPECT_NEAR(alpha_exact_serial(theta), a, 1e-12);
    EXPECT_NEAR(alpha_bruteforce(theta), a, 1e-12);
    EXPECT_NEAR(beta(theta), oracle::beta_events(theta), 1e-12);
    EXPECT_NEAR(phi(theta), oracle::phi_abs(theta), 1e-12);
    EXPECT_NEAR(phi_reverse(theta), oracle::phi_abs(oracle::transposed(theta)), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ExactOracle, ::testing::Range(0, 4));

class ExactProperty : public ::testing::Test {
 protected:
  std::mt19937_64 rng{11};
  JointDist draw(std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> dim(lo, hi);
    return oracle::random_joint(dim(rng), dim(rng), rng, 0.1);
  }
};

TEST_F(ExactProperty, AbsoluteValueCanBeDropped) {
  for (int t = 0; t < 200; ++t) {
    const JointDist theta = draw(1, 4);
    EXPECT_NEAR(oracle::alpha_signed_max(theta), oracle::alpha_abs(theta), 1e-12);
    EXPECT_NEAR(oracle::phi_signed(theta), oracle::phi_abs(theta), 1e-12);
  }
}

TEST_F(ExactProperty, MirrorImage) {
  for (int t = 0; t < 200; ++t) {
    const JointDist theta = draw(1, 4);
    EXPECT_NEAR(oracle::alpha_signed_min(theta), -alpha_bruteforce(theta), 1e-12);
  }
}

TEST_F(ExactProperty, SymmetricUnderTranspose) {
  for (int t = 0; t < 200; ++t) {
    const JointDist theta = draw(1, 7);
    EXPECT_NEAR(alpha_exact(theta), alpha_exact(transpose(theta)), 1e-15);
    EXPECT_NEAR(beta(theta), beta(transpose(theta)), 1e-15);
  }
}

TEST_F(ExactProperty, ColumnEventsReduceToSingletons) {
  std::uniform_int_distribution<std::uint64_t> pick;
  for (int t = 0; t < 200; ++t) {
    const JointDist theta = draw(2, 5);
    const oracle::Events ev(theta);
    const std::size_t m = theta.cols();
    std::uint64_t tset = 0;
    while (std::popcount(tset) < 2 || ev.col_mass(tset) <= 0.0) {
      tset = pick(rng) & ((std::uint64_t{1} << m) - 1);
    }
    double singleton = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint64_t col = std::uint64_t{1} << j;
      if (((tset >> j) & 1U) && ev.col_mass(col) > 0.0) {
        singleton = std::max(singleton, oracle::best_over_rows(theta, col) / ev.col_mass(col));
      }
    }
    EXPECT_LE(oracle::best_over_rows(theta, tset) / ev.col_mass(tset), singleton + 1e-12);
  }
}

TEST_F(ExactProperty, ChainHoldsOnRandomReports) {
  for (int t = 0; t < 1000; ++t) {
    const MixingReport r = mixing_report(draw(1, 6));
    EXPECT_TRUE(satisfies_chain(r)) << "alpha " << r.alpha() << " beta " << r.beta;
    EXPECT_GE(r.alpha(), 0.0);
    EXPECT_LE(r.alpha(), 0.25 + 1e-12);
  }
}

TEST_F(ExactProperty, SerialAndParallelAgreeBitwise) {
  for (int t = 0; t < 50; ++t) {
    const JointDist theta = draw(2, 16);
    EXPECT_EQ(alpha_exact(theta), alpha_exact_serial(theta));
  }
}
