#ifndef PRIVSPEC_SPECTRAL_HPP
#define PRIVSPEC_SPECTRAL_HPP

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>

#include "privspec/privacy.hpp"
#include "privspec/timeseries.hpp"

namespace privspec {

/// Empirical autocovariances c_0..c_{n-1} of a snippet of length n.
///
/// Once debiased, c_0 carries the subtracted Laplace variance offset and the
/// privacy parameters used for it are recorded.
class CovarianceSequence {
 public:
  /// Throws std::invalid_argument if `lags` is empty, non-finite, or (when not
  /// debiased) c_0 < 0.
  explicit CovarianceSequence(Eigen::VectorXd lags);

  const Eigen::VectorXd& lags() const noexcept { return lags_; }
  double operator[](Index r) const { return lags_(r); }
  /// Length of the source snippet, equal to the number of lags.
  Index length() const noexcept { return lags_.size(); }
  bool debiased() const noexcept { return params_.has_value(); }
  double offset() const noexcept { return offset_; }
  /// Parameters used for debiasing, if any.
  const std::optional<PrivacyParams>& debias_params() const noexcept { return params_; }

  friend CovarianceSequence debias(CovarianceSequence c, const PrivacyParams& params);
  friend CovarianceSequence parse_covariances_csv(std::string_view text);

 private:
  Eigen::VectorXd lags_;
  std::optional<PrivacyParams> params_;
  double offset_ = 0.0;
};

/// c_r = (1/n)·sum_{k=1}^{n-r} (Z_k - mean)(Z_{k+r} - mean), via a
/// zero-padded FFT autocorrelation. Requires n >= 2.
CovarianceSequence empirical_covariances(const Snippet& z);

/// Subtracts 8·tau²/alpha² (0 without privacy) from c_0.
/// Throws StateError if `c` is already debiased.
CovarianceSequence debias(CovarianceSequence c, const PrivacyParams& params);

/// I(omega) = |sum_t (Z_t - mean)·e^{-i·t·omega}|² / (2·pi·n).
double periodogram(const Snippet& z, double omega);
Eigen::VectorXd periodogram(const Snippet& z, const Eigen::Ref<const Eigen::VectorXd>& omegas);

/// Periodogram at the Fourier frequencies 2·pi·k/n, k = 0..floor(n/2).
Eigen::VectorXd periodogram_at_fourier_frequencies(const Snippet& z);

/// I(omega) - 8·tau²/alpha². May be negative.
double debiased_periodogram(const Snippet& z, const PrivacyParams& params, double omega);

/// CSV `lag,value` preceded by `# n=.. tau=.. alpha=.. debiased=0|1`.
std::string covariances_csv(const CovarianceSequence& c);
void write_covariances_csv(const std::filesystem::path& path, const CovarianceSequence& c);
CovarianceSequence parse_covariances_csv(std::string_view text);
CovarianceSequence read_covariances_csv(const std::filesystem::path& path);

}  // namespace privspec

#endif  // PRIVSPEC_SPECTRAL_HPP
