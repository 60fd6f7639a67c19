#include "privspec/estimator.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "privspec/errors.hpp"
#include "privspec/io.hpp"

namespace privspec {

namespace {

constexpr double kPi = std::numbers::pi;

// sum_{r=1}^{n-1} (c_r / r)·sin(pi·r·k/d), memoised on the reduced fraction k/d.
class BoundarySums {
 public:
  explicit BoundarySums(const CovarianceSequence& c) {
    const Index m = c.length() - 1;
    lags_ = Eigen::ArrayXd::LinSpaced(m, 1.0, static_cast<double>(m));
    weights_ = c.lags().tail(m).array() / lags_;
  }

  double at(Index k, Index d) {
    const Index g = std::gcd(k, d);
    const Index num = k / g;
    const Index den = d / g;
    const std::uint64_t key = (static_cast<std::uint64_t>(num) << 32) | static_cast<std::uint64_t>(den);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    double value = 0.0;
    if (num != 0 && lags_.size() > 0) {
      const double x = kPi * static_cast<double>(num) / static_cast<double>(den);
      value = (weights_ * (lags_ * x).sin()).sum();
    }
    cache_.emplace(key, value);
    return value;
  }

 private:
  Eigen::ArrayXd lags_;
  Eigen::ArrayXd weights_;
  std::unordered_map<std::uint64_t, double> cache_;
};

Eigen::VectorXd histogram_from_sums(const CovarianceSequence& c, Index d, BoundarySums& sums) {
  const double scale = std::sqrt(static_cast<double>(d) / kPi);
  const double base = c[0] / (2.0 * static_cast<double>(d));
  Eigen::VectorXd a(d);
  double left = sums.at(0, d);
  for (Index j = 0; j < d; ++j) {
    const double right = sums.at(j + 1, d);
    a(j) = scale * (base + (right - left) / kPi);
    left = right;
  }
  return a;
}

void check_omega(double omega) {
  if (!(std::abs(omega) <= kPi)) throw std::invalid_argument("omega must lie in [-pi, pi]");
}

}  // namespace

std::string_view to_string(BasisKind kind) {
  return kind == BasisKind::Histogram ? "histogram" : "fourier";
}

BasisKind parse_basis_kind(std::string_view text) {
  if (text == "histogram") return BasisKind::Histogram;
  if (text == "fourier") return BasisKind::Fourier;
  throw std::invalid_argument("unknown model family '" + std::string(text) +
                              "' (expected histogram or fourier)");
}

Index ModelFamily::effective_d_max(Index n) const { return std::min(d_max, n - 1); }

void ModelFamily::validate(Index n) const {
  if (d_min < 1) throw std::invalid_argument("d_min must be at least 1");
  if (d_max < d_min) throw std::invalid_argument("d_max must not be smaller than d_min");
  if (effective_d_max(n) < d_min)
    throw std::invalid_argument("dimension range is empty for snippet length " + std::to_string(n));
}

SpectralEstimate::SpectralEstimate(BasisKind kind, Index d, Eigen::VectorXd coeffs, EstimateMeta meta)
    : kind_(kind), d_(d), coeffs_(std::move(coeffs)), meta_(std::move(meta)) {
  if (d < 1) throw std::invalid_argument("estimate dimension must be positive");
  const Index expected = kind == BasisKind::Histogram ? d : d + 1;
  if (coeffs_.size() != expected)
    throw std::invalid_argument("coefficient vector has length " + std::to_string(coeffs_.size()) +
                                ", expected " + std::to_string(expected));
  if (!coeffs_.allFinite()) throw NumericError("estimate coefficients must be finite");
}

double SpectralEstimate::operator()(double omega, bool clamp_negative) const {
  check_omega(omega);
  const double w = std::abs(omega);
  double value = 0.0;
  if (kind_ == BasisKind::Histogram) {
    const double dd = static_cast<double>(d_);
    const Index cell = std::min<Index>(static_cast<Index>(std::floor(w * dd / kPi)), d_ - 1);
    value = coeffs_(cell) * std::sqrt(dd / kPi);
  } else {
    value = coeffs_(0) / std::sqrt(2.0 * kPi);
    const double norm = 1.0 / std::sqrt(kPi);
    for (Index j = 1; j <= d_; ++j) value += coeffs_(j) * norm * std::cos(static_cast<double>(j) * w);
  }
  return clamp_negative ? std::max(value, 0.0) : value;
}

Eigen::VectorXd SpectralEstimate::evaluate(const Eigen::Ref<const Eigen::VectorXd>& omegas,
                                           bool clamp_negative) const {
  return omegas.unaryExpr([&](double w) { return (*this)(w, clamp_negative); });
}

std::vector<double> SpectralEstimate::breakpoints() const {
  if (kind_ == BasisKind::Fourier) return {0.0, kPi};
  std::vector<double> edges(static_cast<std::size_t>(d_ + 1));
  for (Index j = 0; j <= d_; ++j)
    edges[static_cast<std::size_t>(j)] = kPi * static_cast<double>(j) / static_cast<double>(d_);
  return edges;
}

double evaluate(const SpectralEstimate& est, double omega) { return est(omega); }

Eigen::VectorXd histogram_coefficients(const CovarianceSequence& c, Index d) {
  if (d < 1 || d > c.length())
    throw std::invalid_argument("histogram dimension must lie in [1, n]");
  BoundarySums sums(c);
  return histogram_from_sums(c, d, sums);
}

Eigen::VectorXd fourier_coefficients(const CovarianceSequence& c, Index d) {
  if (d < 1 || d > c.length() - 1)
    throw std::invalid_argument("Fourier dimension must lie in [1, n - 1]");
  Eigen::VectorXd a(d + 1);
  a(0) = c[0] / std::sqrt(2.0 * kPi);
  a.tail(d) = c.lags().segment(1, d) / std::sqrt(kPi);
  return a;
}

double penalty(Index d, Index n, const PrivacyParams& params, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive");
  if (d < 1 || n < 1) throw std::invalid_argument("penalty needs d >= 1 and n >= 1");
  return kappa * (static_cast<double>(d) / static_cast<double>(n)) * params.penalty_inflation();
}

std::vector<Eigen::VectorXd> coefficient_path(const CovarianceSequence& c, const ModelFamily& family) {
  const Index n = c.length();
  family.validate(n);
  const Index d_hi = family.effective_d_max(n);
  std::vector<Eigen::VectorXd> path;
  path.reserve(static_cast<std::size_t>(d_hi - family.d_min + 1));
  if (family.kind == BasisKind::Histogram) {
    BoundarySums sums(c);
    for (Index d = family.d_min; d <= d_hi; ++d) path.push_back(histogram_from_sums(c, d, sums));
  } else {
    for (Index d = family.d_min; d <= d_hi; ++d) path.push_back(fourier_coefficients(c, d));
  }
  return path;
}

SelectionResult select_model(const CovarianceSequence& c, const ModelFamily& family,
                             const PenaltyFunction& pen, EstimateMeta meta) {
  const auto path = coefficient_path(c, family);
  meta.n = c.length();
  SelectionTrace trace;
  trace.records.reserve(path.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Index d = family.d_min + static_cast<Index>(i);
    const double contrast = -path[i].squaredNorm();
    const double p = pen(d);
    trace.records.push_back({d, contrast, p, contrast + p});
    if (!std::isfinite(contrast + p)) throw NumericError("non-finite selection criterion");
    if (trace.records[i].criterion < trace.records[best].criterion) best = i;
  }
  trace.selected_d = trace.records[best].d;
  SpectralEstimate est(family.kind, trace.selected_d, path[best], std::move(meta));
  return {std::move(est), std::move(trace)};
}

SelectionResult select_model(const CovarianceSequence& c, const ModelFamily& family,
                             const PrivacyParams& params, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive");
  if (params.alpha().is_private() && !c.debiased())
    throw StateError("private covariances must be debiased before model selection");
  if (c.debiased() && !(*c.debias_params() == params))
    throw std::invalid_argument("covariances were debiased with different privacy parameters");
  const Index n = c.length();
  EstimateMeta meta{n, params.tau(), params.alpha(), kappa};
  return select_model(
      c, family, [&](Index d) { return penalty(d, n, params, kappa); }, std::move(meta));
}

std::string estimate_csv(const SpectralEstimate& est) {
  const auto& m = est.meta();
  std::string out = "# family=" + std::string(to_string(est.kind())) +
                    " d=" + std::to_string(est.dimension()) + " n=" + std::to_string(m.n) +
                    " tau=" + io::format_double(m.tau) + " alpha=" + m.alpha.to_string() +
                    " kappa=" + io::format_double(m.kappa) + "\nindex,coefficient\n";
  for (Index j = 0; j < est.coefficients().size(); ++j)
    out += std::to_string(j) + ',' + io::format_double(est.coefficients()(j)) + '\n';
  return out;
}

SpectralEstimate parse_estimate_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  std::map<std::string, std::string> meta;
  for (const auto& comment : table.comments) meta.merge(io::parse_key_values(comment));
  for (const char* key : {"family", "d", "n", "tau", "alpha", "kappa"})
    if (!meta.count(key)) throw std::invalid_argument(std::string("estimate CSV header lacks ") + key);
  const auto col = table.column("coefficient");
  Eigen::VectorXd coeffs(static_cast<Index>(table.rows.size()));
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    coeffs(static_cast<Index>(i)) = io::parse_double(table.rows[i][col]);
  EstimateMeta m{static_cast<Index>(io::parse_integer(meta["n"])), io::parse_double(meta["tau"]),
                 PrivacyLevel::parse(meta["alpha"]), io::parse_double(meta["kappa"])};
  return SpectralEstimate(parse_basis_kind(meta["family"]),
                          static_cast<Index>(io::parse_integer(meta["d"])), std::move(coeffs),
                          std::move(m));
}

std::string trace_csv(const SelectionTrace& trace) {
  std::string out = "d,contrast,penalty,criterion,selected\n";
  for (const auto& r : trace.records) {
    out += std::to_string(r.d) + ',' + io::format_double(r.contrast) + ',' +
           io::format_double(r.penalty) + ',' + io::format_double(r.criterion) + ',' +
           (r.d == trace.selected_d ? "1" : "0") + '\n';
  }
  return out;
}

SelectionTrace parse_trace_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  const auto cd = table.column("d");
  const auto cc = table.column("contrast");
  const auto cp = table.column("penalty");
  const auto cr = table.column("criterion");
  const auto cs = table.column("selected");
  SelectionTrace trace;
  int selected = 0;
  for (const auto& row : table.rows) {
    SelectionRecord r{static_cast<Index>(io::parse_integer(row[cd])), io::parse_double(row[cc]),
                      io::parse_double(row[cp]), io::parse_double(row[cr])};
    if (row[cs] == "1") {
      trace.selected_d = r.d;
      ++selected;
    } else if (row[cs] != "0") {
      throw std::invalid_argument("selected column must be 0 or 1");
    }
    trace.records.push_back(r);
  }
  if (selected != 1) throw std::invalid_argument("trace must mark exactly one selected row");
  return trace;
}

}  // namespace privspec
