#ifndef PRIVSPEC_QUADRATURE_HPP
#define PRIVSPEC_QUADRATURE_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <span>
#include <stdexcept>

namespace privspec {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Composite trapezoid rule on `points` equispaced nodes of [a, b].
/// For periodic integrands sampled over a full period this is spectrally
/// accurate.
template <typename Scalar, typename F>
Scalar trapezoid(F&& f, Scalar a, Scalar b, Eigen::Index points) {
  if (points < 2) throw std::invalid_argument("trapezoid needs at least two points");
  const Scalar h = (b - a) / static_cast<Scalar>(points - 1);
  Scalar sum = (f(a) + f(b)) / Scalar(2);
  for (Eigen::Index i = 1; i < points - 1; ++i) sum += f(a + h * static_cast<Scalar>(i));
  return sum * h;
}

/// Trapezoid weights for `samples` taken on an equispaced grid of [a, b].
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::MatrixBase<Derived>& samples,
                                   typename Derived::Scalar a, typename Derived::Scalar b) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = samples.size();
  if (m < 2) throw std::invalid_argument("trapezoid needs at least two samples");
  const Scalar h = (b - a) / static_cast<Scalar>(m - 1);
  return h * (samples.sum() - (samples(0) + samples(m - 1)) / Scalar(2));
}

template <typename Scalar>
struct GaussLegendreRule {
  VectorX<Scalar> nodes;    // on [-1, 1], ascending
  VectorX<Scalar> weights;
};

/// Golub–Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix of
/// the Legendre recurrence, weights are 2·(first eigenvector component)².
template <typename Scalar = double>
GaussLegendreRule<Scalar> gauss_legendre(Eigen::Index order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix jacobi = Matrix::Zero(order, order);
  for (Eigen::Index k = 1; k < order; ++k) {
    const Scalar kk = static_cast<Scalar>(k);
    const Scalar beta = kk / std::sqrt(Scalar(4) * kk * kk - Scalar(1));
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  GaussLegendreRule<Scalar> rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = Scalar(2) * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

/// Integrates f over [breakpoints.front(), breakpoints.back()] interval by
/// interval, splitting each interval into `panels_per_interval` equal panels
/// with the given Gauss–Legendre rule. f must be smooth inside each interval.
template <typename Scalar, typename F>
Scalar piecewise_gauss_legendre(F&& f, std::span<const Scalar> breakpoints,
                                const GaussLegendreRule<Scalar>& rule,
                                Eigen::Index panels_per_interval) {
  if (breakpoints.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  if (panels_per_interval < 1) throw std::invalid_argument("need at least one panel");
  Scalar total(0);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const Scalar lo = breakpoints[i];
    const Scalar width = (breakpoints[i + 1] - lo) / static_cast<Scalar>(panels_per_interval);
    for (Eigen::Index p = 0; p < panels_per_interval; ++p) {
      const Scalar a = lo + width * static_cast<Scalar>(p);
      const Scalar half = width / Scalar(2);
      const Scalar mid = a + half;
      Scalar panel(0);
      for (Eigen::Index k = 0; k < rule.nodes.size(); ++k)
        panel += rule.weights(k) * f(mid + half * rule.nodes(k));
      total += half * panel;
    }
  }
  return total;
}

//! Neumaier compensated summation.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar v) {
    const Scalar t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      compensation_ += (sum_ - t) + v;
    else
      compensation_ += (v - t) + sum_;
    sum_ = t;
  }
  Scalar value() const { return sum_ + compensation_; }

 private:
  Scalar sum_{0};
  Scalar compensation_{0};
};

}  // namespace privspec

#endif  // PRIVSPEC_QUADRATURE_HPP
