#ifndef PRIVSPEC_TIMESERIES_HPP
#define PRIVSPEC_TIMESERIES_HPP

#include <Eigen/Dense>

#include <filesystem>
#include <string>

#include "privspec/rng.hpp"

namespace privspec {

using Eigen::Index;

/// X_t = X_t^ARMA + sigma·W_t with
///   X_t^ARMA + a1·X_{t-1}^ARMA + a2·X_{t-2}^ARMA = b0·e_t + b1·e_{t-1} + b2·e_{t-2},
/// e and W independent standard Gaussian white noise.
class ArmaNoiseModel {
 public:
  /// Throws ModelError unless both roots of 1 + a1·z + a2·z² lie strictly
  /// outside the unit circle and sigma >= 0.
  ArmaNoiseModel(double a1, double a2, double b0, double b1, double b2, double sigma);

  /// a1=0.2, a2=0.9, b0=1, b1=0, b2=1, sigma=0.5.
  static ArmaNoiseModel benchmark();

  double a1() const noexcept { return a1_; }
  double a2() const noexcept { return a2_; }
  double b0() const noexcept { return b0_; }
  double b1() const noexcept { return b1_; }
  double b2() const noexcept { return b2_; }
  double sigma() const noexcept { return sigma_; }

  friend bool operator==(const ArmaNoiseModel&, const ArmaNoiseModel&) = default;

 private:
  double a1_, a2_, b0_, b1_, b2_, sigma_;
};

/// Finite observations X_1..X_n, n >= 1.
class Snippet {
 public:
  explicit Snippet(Eigen::VectorXd values);

  const Eigen::VectorXd& values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index i) const { return values_(i); }
  double mean() const { return values_.mean(); }

  friend bool operator==(const Snippet& a, const Snippet& b) {
    return a.values_.size() == b.values_.size() && a.values_ == b.values_;
  }

 private:
  Eigen::VectorXd values_;
};

inline constexpr Index kDefaultBurnIn = 2000;

/// Runs the recursion from zero state, discards the first `burn_in` values.
/// Each step draws e_t then W_t from `rng`.
Snippet simulate(const ArmaNoiseModel& model, Index n, Index burn_in, RandomStream& rng);

double true_spectral_density(const ArmaNoiseModel& model, double omega);
Eigen::VectorXd true_spectral_density(const ArmaNoiseModel& model,
                                      const Eigen::Ref<const Eigen::VectorXd>& omegas);

/// Single-column CSV: optional `# ...` comment lines, header `value`, one row
/// per observation.
void write_snippet_csv(const std::filesystem::path& path, const Snippet& snippet,
                       const std::string& comment = {});
std::string snippet_csv(const Snippet& snippet, const std::string& comment = {});
Snippet read_snippet_csv(const std::filesystem::path& path);
Snippet parse_snippet_csv(std::string_view text);

}  // namespace privspec

#endif  // PRIVSPEC_TIMESERIES_HPP
