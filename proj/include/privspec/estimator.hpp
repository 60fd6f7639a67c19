#ifndef PRIVSPEC_ESTIMATOR_HPP
#define PRIVSPEC_ESTIMATOR_HPP

#include <Eigen/Dense>

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "privspec/privacy.hpp"
#include "privspec/spectral.hpp"

namespace privspec {

/// Histogram: phi_j = sqrt(d/pi)·1[pi·j/d, pi·(j+1)/d) on [0, pi), j < d,
/// extended to [-pi, 0) by symmetry.
/// Fourier: 1/sqrt(2·pi) and cos(j·omega)/sqrt(pi), j = 1..d, orthonormal on
/// [-pi, pi].
enum class BasisKind { Histogram, Fourier };

std::string_view to_string(BasisKind kind);
BasisKind parse_basis_kind(std::string_view text);

struct ModelFamily {
  BasisKind kind = BasisKind::Histogram;
  Index d_min = 1;
  Index d_max = 50;

  /// Largest dimension usable on a snippet of length n: min(d_max, n - 1).
  Index effective_d_max(Index n) const;
  /// Throws std::invalid_argument unless 1 <= d_min <= effective_d_max(n).
  void validate(Index n) const;

  friend bool operator==(const ModelFamily&, const ModelFamily&) = default;
};

struct EstimateMeta {
  Index n = 0;
  double tau = 0.0;
  PrivacyLevel alpha = PrivacyLevel::none();
  double kappa = 1.0;
};

class SpectralEstimate {
 public:
  /// coeffs has length d (Histogram) or d + 1 (Fourier, constant term first).
  SpectralEstimate(BasisKind kind, Index d, Eigen::VectorXd coeffs, EstimateMeta meta = {});

  BasisKind kind() const noexcept { return kind_; }
  Index dimension() const noexcept { return d_; }
  const Eigen::VectorXd& coefficients() const noexcept { return coeffs_; }
  const EstimateMeta& meta() const noexcept { return meta_; }

  /// Value at omega in [-pi, pi] (throws std::invalid_argument otherwise).
  /// Negative values are returned as-is unless clamp_negative is set.
  double operator()(double omega, bool clamp_negative = false) const;
  Eigen::VectorXd evaluate(const Eigen::Ref<const Eigen::VectorXd>& omegas,
                           bool clamp_negative = false) const;

  /// Cell edges pi·j/d, j = 0..d, for histograms; {0, pi} for Fourier.
  std::vector<double> breakpoints() const;

 private:
  BasisKind kind_;
  Index d_;
  Eigen::VectorXd coeffs_;
  EstimateMeta meta_;
};

double evaluate(const SpectralEstimate& est, double omega);

/// a_j = sqrt(d/pi)·[c_0/(2d) + (1/pi)·sum_{r=1}^{n-1} (c_r/r)·(sin(pi(j+1)r/d) - sin(pi·j·r/d))]
/// for j = 0..d-1. Requires 1 <= d <= n.
Eigen::VectorXd histogram_coefficients(const CovarianceSequence& c, Index d);

/// a_0 = c_0/sqrt(2·pi), a_j = c_j/sqrt(pi) for j = 1..d. Requires 1 <= d <= n - 1.
Eigen::VectorXd fourier_coefficients(const CovarianceSequence& c, Index d);

/// kappa·(d/n)·max{1, tau⁴/alpha⁴}.
double penalty(Index d, Index n, const PrivacyParams& params, double kappa);

struct SelectionRecord {
  Index d;
  double contrast;   // -sum_j a_j²
  double penalty;
  double criterion;  // contrast + penalty
};

struct SelectionTrace {
  std::vector<SelectionRecord> records;  // ascending d
  Index selected_d = 0;
};

struct SelectionResult {
  SpectralEstimate estimate;
  SelectionTrace trace;
};

using PenaltyFunction = std::function<double(Index d)>;

/// Minimises -sum_j a_j(d)² + pen(d) over d in [d_min, effective_d_max(n)],
/// breaking ties toward the smallest d.
SelectionResult select_model(const CovarianceSequence& c, const ModelFamily& family,
                             const PrivacyParams& params, double kappa);
SelectionResult select_model(const CovarianceSequence& c, const ModelFamily& family,
                             const PenaltyFunction& pen, EstimateMeta meta = {});

/// Coefficients for every d in the family's range, sharing the boundary sums
/// of the histogram formula across dimensions.
std::vector<Eigen::VectorXd> coefficient_path(const CovarianceSequence& c, const ModelFamily& family);

/// CSV `index,coefficient` with a `# family=.. d=.. n=.. tau=.. alpha=.. kappa=..` header.
std::string estimate_csv(const SpectralEstimate& est);
SpectralEstimate parse_estimate_csv(std::string_view text);
/// CSV `d,contrast,penalty,criterion,selected`.
std::string trace_csv(const SelectionTrace& trace);
SelectionTrace parse_trace_csv(std::string_view text);

}  // namespace privspec

#endif  // PRIVSPEC_ESTIMATOR_HPP
