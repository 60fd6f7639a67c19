// Test-only oracles. Nothing here calls into the code paths it checks.
#ifndef PRIVSPEC_TESTS_ORACLES_HPP
#define PRIVSPEC_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// O(n²) 1/n-normalised autocovariances.
inline Eigen::VectorXd direct_covariances(const Eigen::VectorXd& z) {
  const Eigen::Index n = z.size();
  const double mean = z.sum() / static_cast<double>(n);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    double s = 0.0;
    for (Eigen::Index k = 0; k + r < n; ++k) s += (z(k) - mean) * (z(k + r) - mean);
    c(r) = s / static_cast<double>(n);
  }
  return c;
}

/// Composite Simpson rule with an even number of intervals.
template <typename F>
double simpson(F&& f, double a, double b, long intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double s = f(a) + f(b);
  for (long i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return s * h / 3.0;
}

/// Plain trapezoid on `points` nodes of [a, b].
template <typename F>
double trapezoid(F&& f, double a, double b, long points) {
  const double h = (b - a) / static_cast<double>(points - 1);
  double s = 0.5 * (f(a) + f(b));
  for (long i = 1; i < points - 1; ++i) s += f(a + h * static_cast<double>(i));
  return s * h;
}

/// (1/2pi)(c_0 + 2 sum_{r>=1} c_r cos(r w)).
inline double reconstructed_periodogram(const Eigen::VectorXd& c, double w) {
  double s = c(0);
  for (Eigen::Index r = 1; r < c.size(); ++r) s += 2.0 * c(r) * std::cos(static_cast<double>(r) * w);
  return s / (2.0 * kPi);
}

/// One-sample Kolmogorov–Smirnov statistic against a continuous CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> sample, Cdf&& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

inline Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& gen, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = dist(gen);
  return v;
}

}  // namespace oracle

#endif  // PRIVSPEC_TESTS_ORACLES_HPP
