#include "privspec/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "privspec/errors.hpp"
#include "privspec/io.hpp"

namespace privspec {

CovarianceSequence::CovarianceSequence(Eigen::VectorXd lags) : lags_(std::move(lags)) {
  if (lags_.size() < 1) throw std::invalid_argument("covariance sequence must not be empty");
  if (!lags_.allFinite()) throw std::invalid_argument("covariances must be finite");
  if (lags_(0) < 0.0) throw std::invalid_argument("lag-0 covariance must be non-negative");
}

namespace {

Index next_power_of_two(Index v) {
  Index p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace

CovarianceSequence empirical_covariances(const Snippet& z) {
  const Index n = z.size();
  if (n < 2) throw std::invalid_argument("empirical covariances need n >= 2");
  const Index m = next_power_of_two(2 * n);
  std::vector<double> padded(static_cast<std::size_t>(m), 0.0);
  const double mean = z.mean();
  for (Index t = 0; t < n; ++t) padded[static_cast<std::size_t>(t)] = z[t] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, padded);
  for (auto& s : spectrum) s = std::norm(s);
  std::vector<double> autocorr;
  fft.inv(autocorr, spectrum);

  Eigen::VectorXd c(n);
  for (Index r = 0; r < n; ++r) c(r) = autocorr[static_cast<std::size_t>(r)] / static_cast<double>(n);
  // c_0 is a sum of squares; clear FFT round-off below zero.
  c(0) = std::max(c(0), 0.0);
  return CovarianceSequence(std::move(c));
}

CovarianceSequence debias(CovarianceSequence c, const PrivacyParams& params) {
  if (c.debiased()) throw StateError("covariance sequence is already debiased");
  c.offset_ = params.noise_variance();
  c.lags_(0) -= c.offset_;
  c.params_ = params;
  return c;
}

double periodogram(const Snippet& z, double omega) {
  const double mean = z.mean();
  std::complex<double> sum{0.0, 0.0};
  for (Index t = 0; t < z.size(); ++t)
    sum += (z[t] - mean) * std::polar(1.0, -static_cast<double>(t + 1) * omega);
  return std::norm(sum) / (2.0 * std::numbers::pi * static_cast<double>(z.size()));
}

Eigen::VectorXd periodogram(const Snippet& z, const Eigen::Ref<const Eigen::VectorXd>& omegas) {
  return omegas.unaryExpr([&](double w) { return periodogram(z, w); });
}

Eigen::VectorXd periodogram_at_fourier_frequencies(const Snippet& z) {
  const Index n = z.size();
  const double mean = z.mean();
  std::vector<double> centred(static_cast<std::size_t>(n));
  for (Index t = 0; t < n; ++t) centred[static_cast<std::size_t>(t)] = z[t] - mean;
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, centred);
  Eigen::VectorXd out(n / 2 + 1);
  const double scale = 2.0 * std::numbers::pi * static_cast<double>(n);
  for (Index k = 0; k <= n / 2; ++k) out(k) = std::norm(spectrum[static_cast<std::size_t>(k)]) / scale;
  return out;
}

double debiased_periodogram(const Snippet& z, const PrivacyParams& params, double omega) {
  return periodogram(z, omega) - params.noise_variance();
}

std::string covariances_csv(const CovarianceSequence& c) {
  std::string out = "# n=" + std::to_string(c.length());
  if (const auto& p = c.debias_params()) {
    out += " tau=" + io::format_double(p->tau()) + " alpha=" + p->alpha().to_string() + " debiased=1";
  } else {
    out += " tau=none alpha=none debiased=0";
  }
  out += "\nlag,value\n";
  for (Index r = 0; r < c.length(); ++r) {
    out += std::to_string(r);
    out += ',';
    out += io::format_double(c[r]);
    out += '\n';
  }
  return out;
}

void write_covariances_csv(const std::filesystem::path& path, const CovarianceSequence& c) {
  io::atomic_write(path, covariances_csv(c));
}

CovarianceSequence parse_covariances_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  const auto lag_col = table.column("lag");
  const auto value_col = table.column("value");
  Eigen::VectorXd lags(static_cast<Index>(table.rows.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (io::parse_integer(table.rows[i][lag_col]) != static_cast<long long>(i))
      throw std::invalid_argument("covariance lags must be 0, 1, 2, ... in order");
    lags(static_cast<Index>(i)) = io::parse_double(table.rows[i][value_col]);
  }
  std::map<std::string, std::string> meta;
  for (const auto& comment : table.comments) meta.merge(io::parse_key_values(comment));
  if (meta.count("n") && io::parse_integer(meta["n"]) != lags.size())
    throw std::invalid_argument("covariance header n does not match row count");

  if (meta["debiased"] != "1") return CovarianceSequence(std::move(lags));

  PrivacyParams params(PrivacyLevel::parse(meta.at("alpha")), io::parse_double(meta.at("tau")));
  if (!lags.allFinite() || lags.size() < 1) throw std::invalid_argument("invalid covariances");
  // Reconstruct through the public constructor on the un-debiased values so
  // the stored c_0 is reproduced bit for bit.
  Eigen::VectorXd raw = lags;
  raw(0) = std::max(raw(0) + params.noise_variance(), 0.0);
  CovarianceSequence c(std::move(raw));
  c.lags_ = std::move(lags);
  c.params_ = params;
  c.offset_ = params.noise_variance();
  return c;
}

CovarianceSequence read_covariances_csv(const std::filesystem::path& path) {
  return parse_covariances_csv(io::read_file(path));
}

}  // namespace privspec
