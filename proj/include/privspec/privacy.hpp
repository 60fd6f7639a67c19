#ifndef PRIVSPEC_PRIVACY_HPP
#define PRIVSPEC_PRIVACY_HPP

#include <Eigen/Dense>

#include <json.hpp>

#include <string>
#include <string_view>

#include "privspec/rng.hpp"
#include "privspec/timeseries.hpp"

namespace privspec {

/// Privacy level alpha: a finite positive real, or the no-privacy sentinel
/// (alpha = +inf, which disables truncation and noise).
class PrivacyLevel {
 public:
  static PrivacyLevel none() noexcept { return PrivacyLevel(); }
  /// Throws std::invalid_argument unless alpha is finite and > 0.
  static PrivacyLevel finite(double alpha);
  /// "inf" or a positive number.
  static PrivacyLevel parse(std::string_view text);

  bool is_private() const noexcept { return private_; }
  /// Throws std::invalid_argument for the no-privacy sentinel.
  double value() const;
  /// "inf" or the shortest round-trip decimal.
  std::string to_string() const;
  //! Stable 64-bit tag used for seed derivation.
  std::uint64_t tag() const noexcept;

  friend bool operator==(const PrivacyLevel&, const PrivacyLevel&) = default;

 private:
  PrivacyLevel() = default;
  explicit PrivacyLevel(double alpha) : private_(true), alpha_(alpha) {}

  bool private_ = false;
  double alpha_ = 0.0;
};

class PrivacyParams {
 public:
  /// Throws std::invalid_argument unless tau > 0 and finite.
  PrivacyParams(PrivacyLevel alpha, double tau);

  const PrivacyLevel& alpha() const noexcept { return alpha_; }
  double tau() const noexcept { return tau_; }

  /// b = 2·tau/alpha; throws for the no-privacy sentinel.
  double laplace_scale() const;
  /// Variance of the added noise, 2b² = 8·tau²/alpha², and 0 without privacy.
  double noise_variance() const;
  /// max{1, tau⁴/alpha⁴}, and 1 without privacy.
  double penalty_inflation() const;

  friend bool operator==(const PrivacyParams&, const PrivacyParams&) = default;

 private:
  PrivacyLevel alpha_;
  double tau_;
};

/// Fixed(tau) uses tau verbatim; Theoretical(nu) uses sqrt(56·nu·log n).
class TruncationPolicy {
 public:
  enum class Mode { Fixed, Theoretical };

  static TruncationPolicy fixed(double tau);
  static TruncationPolicy theoretical(double nu);

  Mode mode() const noexcept { return mode_; }
  double parameter() const noexcept { return parameter_; }
  /// Threshold for a snippet of length n (n >= 2 for Theoretical).
  double threshold(Index n) const;

  friend bool operator==(const TruncationPolicy&, const TruncationPolicy&) = default;

 private:
  TruncationPolicy(Mode mode, double parameter) : mode_(mode), parameter_(parameter) {}
  Mode mode_;
  double parameter_;
};

inline constexpr double kDefaultTau = 4.0;

/// Elementwise clamp to [-tau, tau].
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> truncate(
    const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar tau) {
  if (!(tau > 0)) throw std::invalid_argument("truncation threshold must be positive");
  return x.cwiseMin(tau).cwiseMax(-tau);
}

Snippet truncate(const Snippet& x, double tau);

/// Inverse CDF of the centred Laplace law: u in (-1/2, 1/2) maps to
/// -b·sign(u)·ln(1 - 2|u|).
double laplace_from_uniform(double u, double scale);
double laplace_sample(double scale, RandomStream& rng);

/// Z_i = clamp(X_i, tau) + xi_i, xi_i i.i.d. Laplace(2·tau/alpha).
/// Without privacy returns x unchanged and draws nothing from rng.
Snippet privatize(const Snippet& x, const PrivacyParams& params, RandomStream& rng);

/// sup_z q(z|x)/q(z|x') = exp(alpha·|x~ - x~'|/(2·tau)), at most exp(alpha).
double verify_privacy_ratio(const PrivacyParams& params, double x, double x_prime);

/// Laplace density of Z given X = x (after truncation).
double conditional_density(const PrivacyParams& params, double z, double x);

nlohmann::json privacy_level_to_json(const PrivacyLevel& level);
PrivacyLevel privacy_level_from_json(const nlohmann::json& j);
/// {"alpha": number | "inf", "tau": number}
nlohmann::json privacy_params_to_json(const PrivacyParams& params);
PrivacyParams privacy_params_from_json(const nlohmann::json& j);

}  // namespace privspec

template <>
struct nlohmann::adl_serializer<privspec::PrivacyLevel> {
  static privspec::PrivacyLevel from_json(const json& j) {
    return privspec::privacy_level_from_json(j);
  }
  static void to_json(json& j, const privspec::PrivacyLevel& level) {
    j = privspec::privacy_level_to_json(level);
  }
};

#endif  // PRIVSPEC_PRIVACY_HPP
