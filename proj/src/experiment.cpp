#include "privspec/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "privspec/errors.hpp"
#include "privspec/io.hpp"
#include "privspec/spectral.hpp"

namespace privspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Index kPanelOrder = 32;

const GaussLegendreRule<double>& panel_rule() {
  static const GaussLegendreRule<double> rule = gauss_legendre<double>(kPanelOrder);
  return rule;
}

double normalise(double integrated, RiskNormalization normalization) {
  return normalization == RiskNormalization::Averaged ? integrated / (2.0 * kPi) : integrated;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any task is rethrown after all workers stop.
template <typename Fn>
void parallel_for(Index count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<Index>(count, 1))));
  if (threads == 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<Index> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (Index i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

struct PipelineOutput {
  CovarianceSequence covariances;
  PrivacyParams params;
};

PipelineOutput private_covariances(const ExperimentConfig& config, Index n,
                                   const PrivacyLevel& alpha, Index rep_index) {
  RandomStream rng(replication_seed(config.master_seed, n, alpha, rep_index));
  const auto params = config.privacy(n, alpha);
  const auto x = simulate(config.model, n, config.burn_in, rng);
  const auto z = privatize(x, params, rng);
  return {debias(empirical_covariances(z), params), params};
}

}  // namespace

std::string_view to_string(RiskNormalization normalization) {
  return normalization == RiskNormalization::Averaged ? "averaged" : "integrated";
}

RiskNormalization parse_risk_normalization(std::string_view text) {
  if (text == "averaged") return RiskNormalization::Averaged;
  if (text == "integrated") return RiskNormalization::Integrated;
  throw std::invalid_argument("risk normalization must be 'averaged' or 'integrated'");
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw std::invalid_argument("replications must be at least 1");
  if (lengths.empty()) throw std::invalid_argument("at least one snippet length is required");
  if (alphas.empty()) throw std::invalid_argument("at least one privacy level is required");
  for (Index n : lengths) {
    if (n < 2) throw std::invalid_argument("snippet lengths must be at least 2");
    family.validate(n);
    truncation.threshold(n);
  }
  if (risk_grid_size < 256) throw std::invalid_argument("risk_grid_size must be at least 256");
  if (curve_grid_size < 256) throw std::invalid_argument("curve_grid_size must be at least 256");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive");
  if (burn_in < 0) throw std::invalid_argument("burn_in must be non-negative");
}

PrivacyParams ExperimentConfig::privacy(Index n, const PrivacyLevel& alpha) const {
  return {alpha, truncation.threshold(n)};
}

double l2_risk(const SpectralEstimate& est, const ArmaNoiseModel& model, Index grid_size,
               bool clamp_negative) {
  if (grid_size < 2) throw std::invalid_argument("risk grid needs at least two points");
  auto squared_error = [&](double w) {
    const double e = est(w, clamp_negative) - true_spectral_density(model, w);
    return e * e;
  };
  if (est.kind() == BasisKind::Fourier) return 2.0 * trapezoid<double>(squared_error, 0.0, kPi, grid_size);
  const auto edges = est.breakpoints();
  const Index panels = std::max<Index>(
      1, static_cast<Index>(std::llround(static_cast<double>(grid_size) /
                                         static_cast<double>(kPanelOrder * est.dimension()))));
  return 2.0 * piecewise_gauss_legendre<double>(squared_error, std::span<const double>(edges),
                                                panel_rule(), panels);
}

std::uint64_t replication_seed(std::uint64_t master_seed, Index n, const PrivacyLevel& alpha,
                               Index rep_index) {
  std::uint64_t h = splitmix64(master_seed);
  h = mix_seed(h, static_cast<std::uint64_t>(n));
  h = mix_seed(h, alpha.tag());
  return mix_seed(h, static_cast<std::uint64_t>(rep_index));
}

ReplicationResult run_replication(const ExperimentConfig& config, Index n,
                                  const PrivacyLevel& alpha, Index rep_index) {
  const auto [c, params] = private_covariances(config, n, alpha, rep_index);
  auto selection = select_model(c, config.family, params, config.kappa);
  const double integrated = l2_risk(selection.estimate, config.model, config.risk_grid_size,
                                    config.clamp_negative);
  return {integrated, normalise(integrated, config.risk_normalization), std::move(selection.estimate)};
}

ReplicationResult run_nonprivate_replication(const ExperimentConfig& config, Index n,
                                             Index rep_index) {
  RandomStream rng(replication_seed(config.master_seed, n, PrivacyLevel::none(), rep_index));
  const auto x = simulate(config.model, n, config.burn_in, rng);
  const auto c = empirical_covariances(x);
  const double tau = config.truncation.threshold(n);
  EstimateMeta meta{n, tau, PrivacyLevel::none(), config.kappa};
  const double kappa = config.kappa;
  auto selection = select_model(
      c, config.family,
      [&](Index d) { return kappa * (static_cast<double>(d) / static_cast<double>(n)); }, meta);
  const double integrated = l2_risk(selection.estimate, config.model, config.risk_grid_size,
                                    config.clamp_negative);
  return {integrated, normalise(integrated, config.risk_normalization), std::move(selection.estimate)};
}

RiskProfile replication_risk_profile(const ExperimentConfig& config, Index n,
                                     const PrivacyLevel& alpha, Index rep_index) {
  const auto [c, params] = private_covariances(config, n, alpha, rep_index);
  const auto selection = select_model(c, config.family, params, config.kappa);
  const auto path = coefficient_path(c, config.family);
  RiskProfile profile;
  profile.selected_d = selection.trace.selected_d;
  profile.adaptive_risk = normalise(
      l2_risk(selection.estimate, config.model, config.risk_grid_size, config.clamp_negative),
      config.risk_normalization);
  profile.fixed_risks.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const SpectralEstimate est(config.family.kind, config.family.d_min + static_cast<Index>(i), path[i]);
    profile.fixed_risks.push_back(normalise(
        l2_risk(est, config.model, config.risk_grid_size, config.clamp_negative),
        config.risk_normalization));
  }
  return profile;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("PRIVSPEC_THREADS")) {
    try {
      const long long v = io::parse_integer(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::invalid_argument&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double empirical_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1]");
  const auto t = static_cast<double>(values.size());
  auto k = static_cast<std::size_t>(std::ceil(q * t));
  k = std::clamp<std::size_t>(k, 1, values.size());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1), values.end());
  return values[k - 1];
}

RiskReport aggregate_risks(const std::vector<double>& risks, Index n, const PrivacyLevel& alpha,
                           double tau, double kappa, std::uint64_t master_seed) {
  if (risks.empty()) throw std::invalid_argument("no replications to aggregate");
  const auto t = static_cast<Index>(risks.size());
  CompensatedSum<double> sum;
  for (double r : risks) sum.add(r);
  const double mean = sum.value() / static_cast<double>(t);
  double sd = 0.0;
  if (t > 1) {
    CompensatedSum<double> squares;
    for (double r : risks) squares.add((r - mean) * (r - mean));
    sd = std::sqrt(squares.value() / static_cast<double>(t - 1));
  }
  return {n, alpha, tau, kappa, t, mean, sd, 1.96 * sd / std::sqrt(static_cast<double>(t)), master_seed};
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const unsigned threads = options.threads == 0 ? default_thread_count() : options.threads;
  const Index t = config.replications;
  const Eigen::VectorXd omega = Eigen::VectorXd::LinSpaced(config.curve_grid_size, 0.0, kPi);
  const Eigen::VectorXd f_true = true_spectral_density(config.model, omega);

  ExperimentResult result;
  for (Index n : config.lengths) {
    for (const auto& alpha : config.alphas) {
      if (options.progress)
        options.progress("n=" + std::to_string(n) + " alpha=" + alpha.to_string());
      std::vector<double> risks(static_cast<std::size_t>(t));
      Eigen::MatrixXd curves(config.curve_grid_size, t);
      parallel_for(t, threads, [&](Index rep) {
        const auto r = run_replication(config, n, alpha, rep);
        risks[static_cast<std::size_t>(rep)] = r.risk;
        curves.col(rep) = r.estimate.evaluate(omega, config.clamp_negative);
      });
      for (double r : risks)
        if (!std::isfinite(r)) throw NumericError("non-finite risk in replication");

      result.reports.push_back(aggregate_risks(risks, n, alpha, config.truncation.threshold(n),
                                               config.kappa, config.master_seed));
      QuantileCurves qc{n, alpha, omega, f_true, Eigen::VectorXd(omega.size()),
                        Eigen::VectorXd(omega.size()), Eigen::VectorXd(omega.size())};
      std::vector<double> row(static_cast<std::size_t>(t));
      for (Index i = 0; i < omega.size(); ++i) {
        CompensatedSum<double> sum;
        for (Index rep = 0; rep < t; ++rep) {
          row[static_cast<std::size_t>(rep)] = curves(i, rep);
          sum.add(curves(i, rep));
        }
        qc.f_hat_mean(i) = sum.value() / static_cast<double>(t);
        qc.q05(i) = empirical_quantile(row, 0.05);
        qc.q95(i) = empirical_quantile(row, 0.95);
      }
      result.curves.push_back(std::move(qc));
    }
  }
  return result;
}

std::string results_csv(const std::vector<RiskReport>& reports, RiskNormalization normalization) {
  std::string out = "# risk_normalization=" + std::string(to_string(normalization)) +
                    "\nn,alpha,tau,kappa,T,mean_risk,std_risk,ci95,master_seed\n";
  for (const auto& r : reports) {
    out += std::to_string(r.n) + ',' + r.alpha.to_string() + ',' + io::format_double(r.tau) + ',' +
           io::format_double(r.kappa) + ',' + std::to_string(r.replications) + ',' +
           io::format_double(r.mean_risk) + ',' + io::format_double(r.std_risk) + ',' +
           io::format_double(r.ci95) + ',' + std::to_string(r.master_seed) + '\n';
  }
  return out;
}

std::vector<RiskReport> parse_results_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  std::vector<RiskReport> out;
  for (const auto& row : table.rows) {
    auto get = [&](std::string_view name) -> const std::string& { return row[table.column(name)]; };
    out.push_back({static_cast<Index>(io::parse_integer(get("n"))), PrivacyLevel::parse(get("alpha")),
                   io::parse_double(get("tau")), io::parse_double(get("kappa")),
                   static_cast<Index>(io::parse_integer(get("T"))), io::parse_double(get("mean_risk")),
                   io::parse_double(get("std_risk")), io::parse_double(get("ci95")),
                   std::stoull(get("master_seed"))});
  }
  return out;
}

std::string curves_csv(const QuantileCurves& curves) {
  std::string out = "# n=" + std::to_string(curves.n) + " alpha=" + curves.alpha.to_string() +
                    "\nomega,f_true,f_hat_mean,q05,q95\n";
  for (Index i = 0; i < curves.omega.size(); ++i) {
    out += io::format_double(curves.omega(i)) + ',' + io::format_double(curves.f_true(i)) + ',' +
           io::format_double(curves.f_hat_mean(i)) + ',' + io::format_double(curves.q05(i)) + ',' +
           io::format_double(curves.q95(i)) + '\n';
  }
  return out;
}

QuantileCurves parse_curves_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  std::map<std::string, std::string> meta;
  for (const auto& comment : table.comments) meta.merge(io::parse_key_values(comment));
  const auto m = static_cast<Index>(table.rows.size());
  QuantileCurves qc{meta.count("n") ? static_cast<Index>(io::parse_integer(meta["n"])) : 0,
                    meta.count("alpha") ? PrivacyLevel::parse(meta["alpha"]) : PrivacyLevel::none(),
                    Eigen::VectorXd(m), Eigen::VectorXd(m), Eigen::VectorXd(m), Eigen::VectorXd(m),
                    Eigen::VectorXd(m)};
  const std::size_t cols[] = {table.column("omega"), table.column("f_true"), table.column("f_hat_mean"),
                              table.column("q05"), table.column("q95")};
  for (Index i = 0; i < m; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    qc.omega(i) = io::parse_double(row[cols[0]]);
    qc.f_true(i) = io::parse_double(row[cols[1]]);
    qc.f_hat_mean(i) = io::parse_double(row[cols[2]]);
    qc.q05(i) = io::parse_double(row[cols[3]]);
    qc.q95(i) = io::parse_double(row[cols[4]]);
  }
  return qc;
}

std::string curves_filename(Index n, const PrivacyLevel& alpha) {
  return "curves_n" + std::to_string(n) + "_alpha_" + alpha.to_string() + ".csv";
}

}  // namespace privspec
