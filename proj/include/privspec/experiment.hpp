#ifndef PRIVSPEC_EXPERIMENT_HPP
#define PRIVSPEC_EXPERIMENT_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "privspec/estimator.hpp"
#include "privspec/privacy.hpp"
#include "privspec/quadrature.hpp"
#include "privspec/timeseries.hpp"

namespace privspec {

/// Integrated: int_{-pi}^{pi} (f_hat - f)². Averaged: the same divided by 2·pi.
enum class RiskNormalization { Integrated, Averaged };

std::string_view to_string(RiskNormalization normalization);
RiskNormalization parse_risk_normalization(std::string_view text);

struct ExperimentConfig {
  ArmaNoiseModel model = ArmaNoiseModel::benchmark();
  std::vector<Index> lengths{10000, 20000};
  std::vector<PrivacyLevel> alphas{PrivacyLevel::none(), PrivacyLevel::finite(5.0),
                                   PrivacyLevel::finite(2.5)};
  TruncationPolicy truncation = TruncationPolicy::fixed(kDefaultTau);
  double kappa = 1.0;
  ModelFamily family{};
  Index replications = 100;
  std::uint64_t master_seed = 1;
  Index risk_grid_size = 8192;
  Index curve_grid_size = 512;
  Index burn_in = kDefaultBurnIn;
  RiskNormalization risk_normalization = RiskNormalization::Averaged;
  bool clamp_negative = false;

  /// Throws std::invalid_argument on T < 1, n < 2, grid sizes < 256, kappa <= 0
  /// or a family range that is empty for some n.
  void validate() const;
  PrivacyParams privacy(Index n, const PrivacyLevel& alpha) const;
};

/// Squared L² distance between f_hat and the true density over [-pi, pi],
/// by the trapezoid rule on `grid_size` points of [0, pi], doubled.
template <typename F>
double l2_distance(F&& f_hat, const ArmaNoiseModel& model, Index grid_size) {
  return 2.0 * trapezoid<double>(
                   [&](double w) {
                     const double e = f_hat(w) - true_spectral_density(model, w);
                     return e * e;
                   },
                   0.0, std::numbers::pi, grid_size);
}

/// int_{-pi}^{pi} (f_hat - f)². Histogram estimates are integrated cell by
/// cell with 32-point Gauss–Legendre panels (about `grid_size` nodes in
/// total); Fourier estimates use the trapezoid rule on `grid_size` points.
double l2_risk(const SpectralEstimate& est, const ArmaNoiseModel& model, Index grid_size,
               bool clamp_negative = false);

std::uint64_t replication_seed(std::uint64_t master_seed, Index n, const PrivacyLevel& alpha,
                               Index rep_index);

struct ReplicationResult {
  double l2_risk;  // integrated
  double risk;     // normalised per the config
  SpectralEstimate estimate;
};

/// simulate -> privatize -> covariances -> debias -> select -> risk, on the
/// stream seeded by replication_seed(master_seed, n, alpha, rep_index).
ReplicationResult run_replication(const ExperimentConfig& config, Index n,
                                  const PrivacyLevel& alpha, Index rep_index);

/// The same replication without any privacy stage (no privatize, no debias),
/// seeded as for alpha = inf.
ReplicationResult run_nonprivate_replication(const ExperimentConfig& config, Index n,
                                             Index rep_index);

/// Adaptive risk plus the risk of the fixed-d estimator for every d in the
/// family range, all from one replication's data.
struct RiskProfile {
  double adaptive_risk;
  Index selected_d;
  std::vector<double> fixed_risks;  // index d - d_min
};
RiskProfile replication_risk_profile(const ExperimentConfig& config, Index n,
                                     const PrivacyLevel& alpha, Index rep_index);

struct RiskReport {
  Index n;
  PrivacyLevel alpha;
  double tau;
  double kappa;
  Index replications;
  double mean_risk;
  double std_risk;  // sample standard deviation, 0 for T = 1
  double ci95;      // 1.96·std/sqrt(T)
  std::uint64_t master_seed;
};

struct QuantileCurves {
  Index n;
  PrivacyLevel alpha;
  Eigen::VectorXd omega;
  Eigen::VectorXd f_true;
  Eigen::VectorXd f_hat_mean;
  Eigen::VectorXd q05;
  Eigen::VectorXd q95;
};

struct ExperimentResult {
  std::vector<RiskReport> reports;  // lengths outer, alphas inner
  std::vector<QuantileCurves> curves;
};

struct RunOptions {
  unsigned threads = 0;  // 0: default_thread_count()
  std::function<void(const std::string&)> progress;
};

/// PRIVSPEC_THREADS if set to a positive integer, else hardware concurrency.
unsigned default_thread_count();

/// Order statistic at ceil(q·T) (1-based).
double empirical_quantile(std::vector<double> values, double q);

RiskReport aggregate_risks(const std::vector<double>& risks, Index n, const PrivacyLevel& alpha,
                           double tau, double kappa, std::uint64_t master_seed);

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// `n,alpha,tau,kappa,T,mean_risk,std_risk,ci95,master_seed`.
std::string results_csv(const std::vector<RiskReport>& reports, RiskNormalization normalization);
std::vector<RiskReport> parse_results_csv(std::string_view text);
/// `omega,f_true,f_hat_mean,q05,q95`.
std::string curves_csv(const QuantileCurves& curves);
QuantileCurves parse_curves_csv(std::string_view text);
std::string curves_filename(Index n, const PrivacyLevel& alpha);

}  // namespace privspec

#endif  // PRIVSPEC_EXPERIMENT_HPP
