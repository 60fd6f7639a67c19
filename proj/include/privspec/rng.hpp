#ifndef PRIVSPEC_RNG_HPP
#define PRIVSPEC_RNG_HPP

#include <cstdint>
#include <optional>
#include <random>

namespace privspec {

/// Seedable random stream with a fully specified algorithm so that runs are
/// reproducible across platforms and standard libraries.
///
/// Uniforms take the top 53 bits of a std::mt19937_64 output. Gaussians use
/// the Box–Muller transform and return both variates of each pair in turn.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  double standard_normal();

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::optional<double> spare_normal_;
};

//! splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

//! Folds `value` into the running seed hash `state`.
std::uint64_t mix_seed(std::uint64_t state, std::uint64_t value) noexcept;

}  // namespace privspec

#endif  // PRIVSPEC_RNG_HPP
