#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "privspec/errors.hpp"
#include "privspec/rng.hpp"
#include "privspec/timeseries.hpp"

using namespace privspec;

namespace {

double integrate_density_cos(const ArmaNoiseModel& model, int k) {
  return oracle::trapezoid(
      [&](double w) { return true_spectral_density(model, w) * std::cos(k * w); }, -oracle::kPi,
      oracle::kPi, 1 << 16);
}

}  // namespace

TEST(ArmaNoiseModel, RejectsNonStationaryAr) {
  EXPECT_THROW(ArmaNoiseModel(0.0, 1.0, 1, 0, 0, 0), ModelError);    // roots on the circle
  EXPECT_THROW(ArmaNoiseModel(1.5, -0.6, 1, 0, 0, 0), ModelError);   // a1 - a2 >= 1
  EXPECT_THROW(ArmaNoiseModel(1.2, 0.1, 1, 0, 0, 0), ModelError);    // root near -0.9
  EXPECT_THROW(ArmaNoiseModel(0.0, 0.0, 1, 0, 0, -0.1), ModelError);
  EXPECT_NO_THROW(ArmaNoiseModel::benchmark());
  EXPECT_NO_THROW(ArmaNoiseModel(-0.5, 0.0, 1, 0, 0, 0));
}

TEST(ArmaNoiseModel, StationarityMatchesRootModulus) {
  // Brute force: compute roots of 1 + a1 z + a2 z^2 and compare with the
  // constructor's verdict on a grid of coefficients.
  for (double a1 = -2.1; a1 <= 2.1; a1 += 0.15) {
    for (double a2 = -1.2; a2 <= 1.2; a2 += 0.15) {
      bool stationary = true;
      if (std::abs(a2) < 1e-12) {
        stationary = std::abs(a1) < 1.0;
      } else {
        const std::complex<double> disc = std::sqrt(std::complex<double>(a1 * a1 - 4 * a2));
        const auto r1 = (-a1 + disc) / (2 * a2);
        const auto r2 = (-a1 - disc) / (2 * a2);
        stationary = std::abs(r1) > 1.0 && std::abs(r2) > 1.0;
      }
      if (stationary) {
        EXPECT_NO_THROW(ArmaNoiseModel(a1, a2, 1, 0, 0, 0)) << a1 << "," << a2;
      } else {
        EXPECT_THROW(ArmaNoiseModel(a1, a2, 1, 0, 0, 0), ModelError) << a1 << "," << a2;
      }
    }
  }
}

TEST(Snippet, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Snippet(Eigen::VectorXd()), std::invalid_argument);
  Eigen::VectorXd v(2);
  v << 1.0, std::nan("");
  EXPECT_THROW(Snippet{v}, std::invalid_argument);
}

TEST(Simulate, WhiteNoiseModelReturnsInnovations) {
  const ArmaNoiseModel model(0, 0, 1, 0, 0, 0);
  RandomStream rng(11);
  const auto x = simulate(model, 50, 3, rng);
  RandomStream replay(11);
  for (int i = 0; i < 3; ++i) {
    replay.standard_normal();
    replay.standard_normal();
  }
  for (Index t = 0; t < x.size(); ++t) {
    EXPECT_EQ(x[t], replay.standard_normal());
    replay.standard_normal();
  }
}

TEST(Simulate, WhiteNoiseModelIsStandardGaussian) {
  const ArmaNoiseModel model(0, 0, 1, 0, 0, 0);
  RandomStream rng(5);
  const auto x = simulate(model, 200000, 0, rng);
  const double mean = x.mean();
  const double var = (x.values().array() - mean).square().mean();
  EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(200000.0));
  EXPECT_NEAR(var, 1.0, 0.01);
}

TEST(Simulate, SampleVarianceMatchesIntegratedDensity) {
  const auto model = ArmaNoiseModel::benchmark();
  const double gamma0 = integrate_density_cos(model, 0);
  RandomStream rng(2024);
  const auto x = simulate(model, 1 << 17, kDefaultBurnIn, rng);
  const double var = (x.values().array() - x.mean()).square().mean();
  EXPECT_NEAR(var / gamma0, 1.0, 0.05);
}

TEST(Simulate, AutocovariancesMatchDensityCosineMoments) {
  const auto model = ArmaNoiseModel::benchmark();
  const Index n = 1 << 17;
  Eigen::Vector4d empirical = Eigen::Vector4d::Zero();
  const int seeds = 10;
  for (int s = 0; s < seeds; ++s) {
    RandomStream rng(900 + s);
    const auto x = simulate(model, n, kDefaultBurnIn, rng);
    const Eigen::ArrayXd centred = x.values().array() - x.mean();
    for (int k = 0; k < 4; ++k)
      empirical(k) += (centred.head(n - k) * centred.tail(n - k)).sum() / static_cast<double>(n);
  }
  empirical /= seeds;
  for (int k = 0; k < 4; ++k) {
    const double expected = integrate_density_cos(model, k);
    EXPECT_NEAR(empirical(k) / expected, 1.0, 0.05) << "lag " << k;
  }
}

TEST(Simulate, DeterministicGivenSeed) {
  const auto model = ArmaNoiseModel::benchmark();
  RandomStream a(77), b(77), c(78);
  const auto xa = simulate(model, 1000, 100, a);
  const auto xb = simulate(model, 1000, 100, b);
  const auto xc = simulate(model, 1000, 100, c);
  EXPECT_TRUE(xa == xb);
  EXPECT_FALSE(xa == xc);
}

TEST(Simulate, InvalidLength) {
  RandomStream rng(1);
  EXPECT_THROW(simulate(ArmaNoiseModel::benchmark(), 0, 10, rng), std::invalid_argument);
}

TEST(TrueSpectralDensity, WhiteNoise) {
  const ArmaNoiseModel model(0, 0, 1, 0, 0, 0);
  for (double w : {-3.0, -1.0, 0.0, 0.5, oracle::kPi})
    EXPECT_NEAR(true_spectral_density(model, w), 1.0 / (2.0 * oracle::kPi), 1e-15);
}

TEST(TrueSpectralDensity, BenchmarkAtZero) {
  // (1/2pi)·(b0+b1+b2)²/(1+a1+a2)² + sigma²/(2pi) = (1/2pi)(4/4.41 + 0.25).
  const double hand = (4.0 / 4.41 + 0.25) / (2.0 * oracle::kPi);
  EXPECT_NEAR(true_spectral_density(ArmaNoiseModel::benchmark(), 0.0), hand, 1e-15);
  EXPECT_NEAR(hand, 0.18415, 1e-4);
}

TEST(TrueSpectralDensity, NonNegativeAndSymmetric) {
  const ArmaNoiseModel models[] = {ArmaNoiseModel::benchmark(), ArmaNoiseModel(-0.5, 0.3, 1, 0.4, -0.2, 0.1),
                                   ArmaNoiseModel(0.9, 0.2, 0.3, 1, 1, 0)};
  for (const auto& model : models) {
    for (double w = 0.0; w <= oracle::kPi; w += 0.01) {
      const double f = true_spectral_density(model, w);
      EXPECT_GE(f, 0.0);
      EXPECT_DOUBLE_EQ(f, true_spectral_density(model, -w));
    }
  }
}

TEST(SnippetCsv, RoundTripIsLossless) {
  RandomStream rng(3);
  const auto x = simulate(ArmaNoiseModel::benchmark(), 257, 10, rng);
  const auto text = snippet_csv(x, "seed=3");
  EXPECT_EQ(text.rfind("# seed=3\nvalue\n", 0), 0u);
  EXPECT_TRUE(parse_snippet_csv(text) == x);
}
