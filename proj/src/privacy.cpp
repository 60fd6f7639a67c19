#include "privspec/privacy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "privspec/io.hpp"

namespace privspec {

PrivacyLevel PrivacyLevel::finite(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 0.0))
    throw std::invalid_argument("privacy level alpha must be a finite positive number or 'inf'");
  return PrivacyLevel(alpha);
}

PrivacyLevel PrivacyLevel::parse(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "Inf" || text == "infinity") return none();
  double alpha = 0.0;
  try {
    alpha = io::parse_double(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("invalid privacy level '" + std::string(text) + "'");
  }
  if (std::isinf(alpha) && alpha > 0) return none();
  return finite(alpha);
}

double PrivacyLevel::value() const {
  if (!private_) throw std::invalid_argument("no-privacy level has no finite alpha");
  return alpha_;
}

std::string PrivacyLevel::to_string() const {
  return private_ ? io::format_double(alpha_) : std::string("inf");
}

std::uint64_t PrivacyLevel::tag() const noexcept {
  return private_ ? std::bit_cast<std::uint64_t>(alpha_) : 0x7ff0000000000000ULL;
}

PrivacyParams::PrivacyParams(PrivacyLevel alpha, double tau) : alpha_(alpha), tau_(tau) {
  if (!std::isfinite(tau) || !(tau > 0.0))
    throw std::invalid_argument("truncation threshold tau must be positive");
}

double PrivacyParams::laplace_scale() const { return 2.0 * tau_ / alpha_.value(); }

double PrivacyParams::noise_variance() const {
  if (!alpha_.is_private()) return 0.0;
  const double a = alpha_.value();
  return 8.0 * tau_ * tau_ / (a * a);
}

double PrivacyParams::penalty_inflation() const {
  if (!alpha_.is_private()) return 1.0;
  const double ratio = tau_ / alpha_.value();
  const double r2 = ratio * ratio;
  return std::max(1.0, r2 * r2);
}

TruncationPolicy TruncationPolicy::fixed(double tau) {
  if (!std::isfinite(tau) || !(tau > 0.0))
    throw std::invalid_argument("fixed truncation threshold must be positive");
  return {Mode::Fixed, tau};
}

TruncationPolicy TruncationPolicy::theoretical(double nu) {
  if (!std::isfinite(nu) || !(nu > 0.0))
    throw std::invalid_argument("variance factor nu must be positive");
  return {Mode::Theoretical, nu};
}

double TruncationPolicy::threshold(Index n) const {
  if (mode_ == Mode::Fixed) return parameter_;
  if (n < 2) throw std::invalid_argument("theoretical truncation needs n >= 2");
  return std::sqrt(56.0 * parameter_ * std::log(static_cast<double>(n)));
}

Snippet truncate(const Snippet& x, double tau) { return Snippet(truncate(x.values(), tau)); }

double laplace_from_uniform(double u, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("Laplace scale must be positive");
  if (!(u > -0.5 && u < 0.5)) throw std::invalid_argument("u must lie in (-1/2, 1/2)");
  if (u == 0.0) return 0.0;
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-2.0 * std::abs(u));
}

double laplace_sample(double scale, RandomStream& rng) {
  return laplace_from_uniform(rng.uniform_open() - 0.5, scale);
}

Snippet privatize(const Snippet& x, const PrivacyParams& params, RandomStream& rng) {
  if (!params.alpha().is_private()) return x;
  const double b = params.laplace_scale();
  Eigen::VectorXd z = truncate(x.values(), params.tau());
  for (Index i = 0; i < z.size(); ++i) z(i) += laplace_sample(b, rng);
  return Snippet(std::move(z));
}

double verify_privacy_ratio(const PrivacyParams& params, double x, double x_prime) {
  if (!params.alpha().is_private())
    throw std::invalid_argument("privacy ratio is undefined without privacy");
  const double tau = params.tau();
  const double xt = std::clamp(x, -tau, tau);
  const double xpt = std::clamp(x_prime, -tau, tau);
  return std::exp(params.alpha().value() * std::abs(xt - xpt) / (2.0 * tau));
}

double conditional_density(const PrivacyParams& params, double z, double x) {
  const double b = params.laplace_scale();
  const double xt = std::clamp(x, -params.tau(), params.tau());
  return std::exp(-std::abs(z - xt) / b) / (2.0 * b);
}

nlohmann::json privacy_level_to_json(const PrivacyLevel& level) {
  if (level.is_private()) return level.value();
  return "inf";
}

PrivacyLevel privacy_level_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw std::invalid_argument("alpha string must be \"inf\"");
    return PrivacyLevel::none();
  }
  if (j.is_number()) return PrivacyLevel::finite(j.get<double>());
  throw std::invalid_argument("alpha must be a number or \"inf\"");
}

nlohmann::json privacy_params_to_json(const PrivacyParams& params) {
  return {{"alpha", privacy_level_to_json(params.alpha())}, {"tau", params.tau()}};
}

PrivacyParams privacy_params_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("alpha") || !j.contains("tau"))
    throw std::invalid_argument("privacy params need \"alpha\" and \"tau\"");
  if (!j.at("tau").is_number()) throw std::invalid_argument("tau must be a number");
  return {privacy_level_from_json(j.at("alpha")), j.at("tau").get<double>()};
}

}  // namespace privspec
