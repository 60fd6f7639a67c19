#ifndef PRIVSPEC_ERRORS_HPP
#define PRIVSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace privspec {

// Argument validation failures are reported as std::invalid_argument.

//! Model parameters that do not describe a stationary process.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

//! Operation applied to an object in the wrong state (e.g. debiasing twice).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! A computation produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Configuration document failed validation. `pointer()` is the JSON pointer
//! of the offending node.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string pointer, const std::string& message)
      : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace privspec

#endif  // PRIVSPEC_ERRORS_HPP
