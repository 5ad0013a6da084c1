#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace descentlab {

/// Bad shapes, out-of-range hyper-parameters, malformed inputs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of a function (e.g. log of a non-positive number).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A NaN or infinity appeared. Carries the offending coordinate and, when known,
/// the optimizer step at which it appeared.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::optional<std::size_t> index = std::nullopt,
               std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(what), index_(index), step_(step) {}

  std::optional<std::size_t> index() const noexcept { return index_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  std::optional<std::size_t> index_;
  std::optional<std::size_t> step_;
};

}  // namespace descentlab
