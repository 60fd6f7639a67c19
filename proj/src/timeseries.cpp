#include "privspec/timeseries.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "privspec/errors.hpp"
#include "privspec/io.hpp"

namespace privspec {

ArmaNoiseModel::ArmaNoiseModel(double a1, double a2, double b0, double b1, double b2,
                               double sigma)
    : a1_(a1), a2_(a2), b0_(b0), b1_(b1), b2_(b2), sigma_(sigma) {
  for (double v : {a1, a2, b0, b1, b2, sigma})
    if (!std::isfinite(v)) throw ModelError("model parameters must be finite");
  if (sigma < 0.0) throw ModelError("sigma must be non-negative");
  // Roots of 1 + a1 z + a2 z^2 outside the unit circle <=> (a1, a2) inside
  // the AR(2) stationarity triangle.
  if (!(std::abs(a2) < 1.0 && a1 + a2 > -1.0 && a1 - a2 < 1.0))
    throw ModelError("AR polynomial 1 + a1 z + a2 z^2 has a root on or inside the unit circle");
}

ArmaNoiseModel ArmaNoiseModel::benchmark() { return {0.2, 0.9, 1.0, 0.0, 1.0, 0.5}; }

Snippet::Snippet(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() < 1) throw std::invalid_argument("snippet must contain at least one value");
  if (!values_.allFinite()) throw std::invalid_argument("snippet values must be finite");
}

Snippet simulate(const ArmaNoiseModel& model, Index n, Index burn_in, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (burn_in < 0) throw std::invalid_argument("burn_in must be non-negative");
  Eigen::VectorXd out(n);
  double x1 = 0.0, x2 = 0.0;  // X_{t-1}, X_{t-2}
  double e1 = 0.0, e2 = 0.0;  // e_{t-1}, e_{t-2}
  for (Index t = 0; t < burn_in + n; ++t) {
    const double e = rng.standard_normal();
    const double w = rng.standard_normal();
    const double x = -model.a1() * x1 - model.a2() * x2 + model.b0() * e + model.b1() * e1 +
                     model.b2() * e2;
    x2 = x1;
    x1 = x;
    e2 = e1;
    e1 = e;
    if (t >= burn_in) out(t - burn_in) = x + model.sigma() * w;
  }
  return Snippet(std::move(out));
}

double true_spectral_density(const ArmaNoiseModel& model, double omega) {
  const std::complex<double> z = std::polar(1.0, -omega);
  const std::complex<double> ma = model.b0() + z * (model.b1() + z * model.b2());
  const std::complex<double> ar = 1.0 + z * (model.a1() + z * model.a2());
  const double two_pi = 2.0 * std::numbers::pi;
  return std::norm(ma) / std::norm(ar) / two_pi + model.sigma() * model.sigma() / two_pi;
}

Eigen::VectorXd true_spectral_density(const ArmaNoiseModel& model,
                                      const Eigen::Ref<const Eigen::VectorXd>& omegas) {
  return omegas.unaryExpr([&](double w) { return true_spectral_density(model, w); });
}

std::string snippet_csv(const Snippet& snippet, const std::string& comment) {
  std::string out;
  out.reserve(static_cast<std::size_t>(snippet.size()) * 20 + 64);
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "value\n";
  for (Index i = 0; i < snippet.size(); ++i) {
    out += io::format_double(snippet[i]);
    out += '\n';
  }
  return out;
}

void write_snippet_csv(const std::filesystem::path& path, const Snippet& snippet,
                       const std::string& comment) {
  io::atomic_write(path, snippet_csv(snippet, comment));
}

Snippet parse_snippet_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  const auto col = table.column("value");
  Eigen::VectorXd values(static_cast<Index>(table.rows.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    values(static_cast<Index>(i)) = io::parse_double(table.rows[i][col]);
  return Snippet(std::move(values));
}

Snippet read_snippet_csv(const std::filesystem::path& path) {
  return parse_snippet_csv(io::read_file(path));
}

}  // namespace privspec
