#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "privspec/errors.hpp"
#include "privspec/spectral.hpp"

using namespace privspec;

namespace {

const PrivacyParams kNone(PrivacyLevel::none(), 4.0);
const PrivacyParams kAlpha25(PrivacyLevel::finite(2.5), 4.0);
const PrivacyParams kAlpha5(PrivacyLevel::finite(5.0), 4.0);

}  // namespace

TEST(EmpiricalCovariances, HandExample) {
  const auto c = empirical_covariances(Snippet(Eigen::Vector3d(1, 2, 3)));
  ASSERT_EQ(c.length(), 3);
  EXPECT_NEAR(c[0], 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(c[1], 0.0, 1e-14);
  EXPECT_NEAR(c[2], -1.0 / 3.0, 1e-14);
  EXPECT_FALSE(c.debiased());
}

TEST(EmpiricalCovariances, ConstantSnippet) {
  const auto c = empirical_covariances(Snippet(Eigen::VectorXd::Constant(40, 3.25)));
  EXPECT_EQ(c.lags().cwiseAbs().maxCoeff(), 0.0);
}

TEST(EmpiricalCovariances, FftMatchesDirectSum) {
  std::mt19937_64 gen(17);
  for (Index n : {2, 3, 7, 64, 255, 512}) {
    const Eigen::VectorXd z = oracle::random_vector(n, gen, 2.0).array() + 1.5;
    const auto c = empirical_covariances(Snippet(z));
    EXPECT_LT((c.lags() - oracle::direct_covariances(z)).cwiseAbs().maxCoeff(), 1e-10) << n;
  }
}

TEST(EmpiricalCovariances, RequiresTwoValues) {
  EXPECT_THROW(empirical_covariances(Snippet(Eigen::VectorXd::Ones(1))), std::invalid_argument);
}

TEST(Debias, Offsets) {
  std::mt19937_64 gen(3);
  const auto c = empirical_covariances(Snippet(oracle::random_vector(32, gen)));
  const auto none = debias(c, kNone);
  EXPECT_TRUE(none.lags() == c.lags());
  EXPECT_TRUE(none.debiased());

  const auto d25 = debias(c, kAlpha25);
  EXPECT_NEAR(c[0] - d25[0], 20.48, 1e-12);
  EXPECT_TRUE(d25.lags().tail(31) == c.lags().tail(31));
  const auto d5 = debias(c, kAlpha5);
  EXPECT_NEAR(c[0] - d5[0], 5.12, 1e-12);
}

TEST(Debias, TwiceIsStateError) {
  const auto c = empirical_covariances(Snippet(Eigen::Vector3d(1, 2, 3)));
  const auto once = debias(c, kAlpha5);
  EXPECT_THROW(debias(once, kAlpha5), StateError);
}

TEST(Periodogram, ConstantSnippetVanishes) {
  const Snippet z(Eigen::VectorXd::Constant(20, -2.0));
  for (double w : {-3.0, 0.0, 0.4, 3.1}) EXPECT_EQ(periodogram(z, w), 0.0);
  for (double w : {-3.0, 0.0, 3.1}) EXPECT_NEAR(debiased_periodogram(z, kAlpha25, w), -20.48, 1e-12);
}

TEST(Periodogram, SymmetricAndNonNegative) {
  std::mt19937_64 gen(23);
  const Snippet z(oracle::random_vector(100, gen));
  for (double w = 0.0; w <= oracle::kPi; w += 0.05) {
    const double v = periodogram(z, w);
    EXPECT_GE(v, 0.0);
    EXPECT_NEAR(v, periodogram(z, -w), 1e-12 * (1 + v));
  }
}

TEST(Periodogram, IntegratesToLagZeroCovariance) {
  std::mt19937_64 gen(29);
  for (Index n : {5, 64, 256}) {
    const Snippet z(oracle::random_vector(n, gen, 1.3));
    const auto c = empirical_covariances(z);
    const double integral =
        oracle::trapezoid([&](double w) { return periodogram(z, w); }, -oracle::kPi, oracle::kPi, 1 << 16);
    EXPECT_NEAR(integral, c[0], 1e-6);

    const double debiased = oracle::trapezoid([&](double w) { return debiased_periodogram(z, kAlpha25, w); },
                                              -oracle::kPi, oracle::kPi, 1 << 16);
    EXPECT_NEAR(debiased, c[0] - 2.0 * oracle::kPi * 20.48, 1e-6);
  }
}

TEST(Periodogram, NoPrivacyDebiasedEqualsRaw) {
  std::mt19937_64 gen(31);
  const Snippet z(oracle::random_vector(30, gen));
  for (double w : {0.1, 1.0, 2.0}) EXPECT_EQ(debiased_periodogram(z, kNone, w), periodogram(z, w));
}

TEST(Periodogram, FourierFrequencyFastPath) {
  std::mt19937_64 gen(37);
  const Snippet z(oracle::random_vector(64, gen));
  const auto fast = periodogram_at_fourier_frequencies(z);
  ASSERT_EQ(fast.size(), 33);
  for (Index k = 0; k <= 32; ++k)
    EXPECT_NEAR(fast(k), periodogram(z, 2.0 * oracle::kPi * static_cast<double>(k) / 64.0), 1e-12);
}

TEST(Covariances, NoiseOnlyInflation) {
  // X = 0, so Z is pure Laplace noise: E c_0 ~ 8 tau²/alpha², E c_r ~ 0.
  const Index n = 4096;
  const int reps = 200;
  const Snippet zero(Eigen::VectorXd::Zero(n));
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(4), sum_sq = Eigen::VectorXd::Zero(4);
  for (int rep = 0; rep < reps; ++rep) {
    RandomStream rng(5000 + rep);
    const auto c = empirical_covariances(privatize(zero, kAlpha5, rng));
    for (int r = 0; r < 4; ++r) {
      sum(r) += c[r];
      sum_sq(r) += c[r] * c[r];
    }
  }
  const Eigen::VectorXd mean = sum / reps;
  const Eigen::VectorXd se = ((sum_sq / reps - mean.cwiseProduct(mean)) / (reps - 1)).cwiseSqrt();
  EXPECT_NEAR(mean(0) / 5.12, 1.0, 0.05);
  for (int r = 1; r < 4; ++r) EXPECT_LT(std::abs(mean(r)), 3.0 * se(r)) << "lag " << r;
}

TEST(CovarianceCsv, RoundTrip) {
  std::mt19937_64 gen(41);
  const auto c = empirical_covariances(Snippet(oracle::random_vector(50, gen)));
  const auto plain = parse_covariances_csv(covariances_csv(c));
  EXPECT_TRUE(plain.lags() == c.lags());
  EXPECT_FALSE(plain.debiased());

  const auto d = debias(c, kAlpha25);
  const auto text = covariances_csv(d);
  EXPECT_EQ(text.rfind("# n=50 tau=4 alpha=2.5 debiased=1\nlag,value\n", 0), 0u);
  const auto back = parse_covariances_csv(text);
  EXPECT_TRUE(back.lags() == d.lags());
  ASSERT_TRUE(back.debiased());
  EXPECT_TRUE(*back.debias_params() == kAlpha25);
}
