// Command-line front end: simulate, privatize, estimate, experiment.
//
// Exit codes: 0 success, 2 validation/usage, 3 I/O, 4 numeric failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "privspec/config.hpp"
#include "privspec/errors.hpp"
#include "privspec/estimator.hpp"
#include "privspec/experiment.hpp"
#include "privspec/io.hpp"
#include "privspec/privacy.hpp"
#include "privspec/spectral.hpp"
#include "privspec/timeseries.hpp"

namespace fs = std::filesystem;
using namespace privspec;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kNumeric = 4 };

struct SimulateArgs {
  std::string config;
  long long n = 0;
  std::uint64_t seed = 0;
  long long burn_in = -1;
  std::string out;
};

struct PrivatizeArgs {
  std::string in, out, alpha;
  double tau = kDefaultTau;
  std::uint64_t seed = 0;
};

struct EstimateArgs {
  std::string in, alpha, family = "histogram", out_prefix;
  double tau = kDefaultTau;
  double kappa = 1.0;
  long long dmin = 1, dmax = 50, grid = 512;
  bool clamp = false;
};

struct ExperimentArgs {
  std::string config, out_dir;
  unsigned threads = 0;
  bool quiet = false;
};

void cmd_simulate(const SimulateArgs& args) {
  ArmaNoiseModel model = ArmaNoiseModel::benchmark();
  Index burn_in = kDefaultBurnIn;
  if (!args.config.empty()) {
    const auto config = load_config(args.config);
    model = config.experiment.model;
    burn_in = config.experiment.burn_in;
  }
  if (args.burn_in >= 0) burn_in = args.burn_in;
  RandomStream rng(args.seed);
  const auto x = simulate(model, args.n, burn_in, rng);
  const std::string comment = "a1=" + io::format_double(model.a1()) + " a2=" + io::format_double(model.a2()) +
                              " b0=" + io::format_double(model.b0()) + " b1=" + io::format_double(model.b1()) +
                              " b2=" + io::format_double(model.b2()) +
                              " sigma=" + io::format_double(model.sigma()) + " n=" + std::to_string(args.n) +
                              " burn_in=" + std::to_string(burn_in) + " seed=" + std::to_string(args.seed);
  write_snippet_csv(args.out, x, comment);
}

void cmd_privatize(const PrivatizeArgs& args) {
  const PrivacyParams params(PrivacyLevel::parse(args.alpha), args.tau);
  const auto x = read_snippet_csv(args.in);
  RandomStream rng(args.seed);
  const auto z = privatize(x, params, rng);
  write_snippet_csv(args.out, z,
                    "alpha=" + params.alpha().to_string() + " tau=" + io::format_double(params.tau()) +
                        " seed=" + std::to_string(args.seed));
}

void cmd_estimate(const EstimateArgs& args) {
  const PrivacyParams params(PrivacyLevel::parse(args.alpha), args.tau);
  const ModelFamily family{parse_basis_kind(args.family), args.dmin, args.dmax};
  const auto z = read_snippet_csv(args.in);
  family.validate(z.size());
  const auto c = debias(empirical_covariances(z), params);
  const auto selection = select_model(c, family, params, args.kappa);

  const Eigen::VectorXd omega = Eigen::VectorXd::LinSpaced(args.grid, 0.0, std::numbers::pi);
  const Eigen::VectorXd values = selection.estimate.evaluate(omega, args.clamp);
  std::string curve = "omega,f_hat\n";
  for (Index i = 0; i < omega.size(); ++i)
    curve += io::format_double(omega(i)) + ',' + io::format_double(values(i)) + '\n';

  const std::string prefix = args.out_prefix;
  io::atomic_write(prefix + "_estimate.csv", estimate_csv(selection.estimate));
  io::atomic_write(prefix + "_trace.csv", trace_csv(selection.trace));
  io::atomic_write(prefix + "_curve.csv", curve);
}

void cmd_experiment(const ExperimentArgs& args) {
  const auto config = load_config(args.config);
  fs::path out_dir;
  if (!args.out_dir.empty())
    out_dir = args.out_dir;
  else if (config.output_dir)
    out_dir = *config.output_dir;
  else
    throw std::invalid_argument("--out-dir: no output directory given (flag or config output_dir)");

  RunOptions options;
  options.threads = args.threads;
  if (!args.quiet && config.verbosity > 0)
    options.progress = [](const std::string& msg) { std::cerr << "running " << msg << '\n'; };
  const auto result = run_experiment(config.experiment, options);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "'");
  for (const auto& curves : result.curves)
    io::atomic_write(out_dir / curves_filename(curves.n, curves.alpha), curves_csv(curves));
  io::atomic_write(out_dir / "results.csv",
                   results_csv(result.reports, config.experiment.risk_normalization));
  if (!args.quiet) std::cout << results_csv(result.reports, config.experiment.risk_normalization);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral density estimation from locally differentially private observations"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate the ARMA(2,2) plus white-noise process");
  simulate_cmd->add_option("--config", sim.config, "Experiment config supplying model and burn_in")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--n", sim.n, "Snippet length")->required()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim.seed, "Random seed")->required();
  simulate_cmd->add_option("--burn-in", sim.burn_in, "Discarded warm-up steps (default 2000)")
      ->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--out", sim.out, "Output series CSV")->required();

  PrivatizeArgs priv;
  auto* privatize_cmd = app.add_subcommand("privatize", "Truncate and add Laplace noise");
  privatize_cmd->add_option("--in", priv.in, "Input series CSV")->required();
  privatize_cmd->add_option("--alpha", priv.alpha, "Privacy level (number or inf)")->required();
  privatize_cmd->add_option("--tau", priv.tau, "Truncation threshold")->capture_default_str();
  privatize_cmd->add_option("--seed", priv.seed, "Random seed")->required();
  privatize_cmd->add_option("--out", priv.out, "Output series CSV")->required();

  EstimateArgs est;
  auto* estimate_cmd = app.add_subcommand("estimate", "Penalised projection estimate from a privatized series");
  estimate_cmd->add_option("--in", est.in, "Privatized series CSV")->required();
  estimate_cmd->add_option("--alpha", est.alpha, "Privacy level used for the data (number or inf)")->required();
  estimate_cmd->add_option("--tau", est.tau, "Truncation threshold used for the data")->capture_default_str();
  estimate_cmd->add_option("--kappa", est.kappa, "Penalty constant")->capture_default_str()->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--family", est.family, "Model family")
      ->check(CLI::IsMember({"histogram", "fourier"}))
      ->capture_default_str();
  estimate_cmd->add_option("--dmin", est.dmin, "Smallest dimension")->capture_default_str()->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--dmax", est.dmax, "Largest dimension")->capture_default_str()->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--grid", est.grid, "Curve grid points on [0, pi]")
      ->capture_default_str()
      ->check(CLI::Range(2LL, 1LL << 24));
  estimate_cmd->add_flag("--clamp-negative", est.clamp, "Clamp the evaluated curve at zero");
  estimate_cmd->add_option("--out-prefix", est.out_prefix, "Prefix for _estimate/_trace/_curve CSVs")->required();

  ExperimentArgs exp;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run the Monte Carlo study described by a config");
  experiment_cmd->add_option("--config", exp.config, "Experiment config JSON")->required();
  experiment_cmd->add_option("--out-dir", exp.out_dir, "Output directory (created if absent)");
  experiment_cmd->add_option("--threads", exp.threads, "Worker threads (default: PRIVSPEC_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  experiment_cmd->add_flag("--quiet", exp.quiet, "Suppress progress and summary output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate_cmd) cmd_simulate(sim);
    if (*privatize_cmd) cmd_privatize(priv);
    if (*estimate_cmd) cmd_estimate(est);
    if (*experiment_cmd) cmd_experiment(exp);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kOk;
}
